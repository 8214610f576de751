#include "smoothprog/zeroscan.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "smoothprog/errors.hpp"

namespace smoothprog {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 6.283185307179586476925287;

// boundary walk came too close to a zero (or inconsistent); retried by the
// caller with shifted cut lines
struct NearZero {
    cplx at;
};

// dyadic split fractions tried in order when a cut line lands near a zero
constexpr std::array<double, 4> kFracs = {0.5, 35.0 / 64, 29.0 / 64, 19.0 / 32};

SRect expanded(const SRect& r, double by)
{
    return {r.re_lo - by, r.re_hi + by, r.im_lo - by, r.im_hi + by};
}

struct Scanner {
    const LEvaluator& ev;
    const DirichletCharacter& chi;
    const ScanOptions& opt;
    ScanReport out;

    cplx L(cplx s)
    {
        if (++out.l_evals > opt.max_evals)
            throw NumericalError("scan_zeros: evaluation budget exhausted");
        return ev.value(chi, s);
    }

    // phase increment of L along s1 -> s2; each accepted rung satisfies
    // |dL| <= 0.5 min(|L|) so its principal argument is the true increment.
    // Rungs are also capped at length 0.2: value closeness alone cannot see
    // a full hidden rotation when endpoints realign, and phase rates high
    // enough to wrap inside 0.2 would violate the closeness test first.
    double seg_arg(cplx s1, cplx L1, cplx s2, cplx L2, int depth)
    {
        if (std::abs(L1) < opt.zero_floor) throw NearZero{s1};
        if (std::abs(L2) < opt.zero_floor) throw NearZero{s2};
        if (std::abs(s2 - s1) <= 0.2 &&
            std::abs(L2 - L1) <= 0.5 * std::min(std::abs(L1), std::abs(L2)))
            return std::arg(L2 / L1);
        if (depth >= 44) throw NearZero{0.5 * (s1 + s2)};
        const cplx mid = 0.5 * (s1 + s2);
        const cplx Lm = L(mid);
        return seg_arg(s1, L1, mid, Lm, depth + 1) + seg_arg(mid, Lm, s2, L2, depth + 1);
    }

    // counterclockwise winding count around r; analytic L means the result
    // is the number of zeros inside, with multiplicity
    int winding(const SRect& r)
    {
        const cplx c1{r.re_lo, r.im_lo}, c2{r.re_hi, r.im_lo};
        const cplx c3{r.re_hi, r.im_hi}, c4{r.re_lo, r.im_hi};
        const cplx L1 = L(c1), L2 = L(c2), L3 = L(c3), L4 = L(c4);
        const double tot = seg_arg(c1, L1, c2, L2, 0) + seg_arg(c2, L2, c3, L3, 0) +
                           seg_arg(c3, L3, c4, L4, 0) + seg_arg(c4, L4, c1, L1, 0);
        const double w = tot / kTwoPi;
        const long n = std::lround(w);
        if (std::abs(w - double(n)) > 0.2 || n < 0) throw NearZero{r.center()};
        return static_cast<int>(n);
    }

    void emit(cplx z, const SRect& box, int w)
    {
        out.zeros.push_back(ZeroRecord{chi.label(), z.real(), z.imag(), box, w,
                                       std::abs(z.imag()) <= 1e-7});
    }

    // Newton polish from the cell center, then an independent winding count
    // on a small box re-certifies the zero; false falls back to subdivision
    bool refine_newton(const SRect& r)
    {
        cplx z = r.center();
        const double h = 1e-7;
        for (int it = 0; it < 60; ++it) {
            const cplx Lz = L(z);
            const cplx d = (L(z + h) - L(z - h)) / (2 * h);
            if (!(std::abs(d) > 0)) return false;
            const cplx step = Lz / d;
            z -= step;
            if (!expanded(r, r.diam()).contains(z)) return false;
            if (std::abs(step) <= 1e-10 * (1.0 + std::abs(z))) {
                if (!r.contains(z)) return false;  // the cell's zero is elsewhere
                for (double f : {1.0, 1.15, 0.85}) {
                    const double hw = opt.certify_halfwidth * f;
                    const SRect box{z.real() - hw, z.real() + hw, z.imag() - hw, z.imag() + hw};
                    try {
                        const int wb = winding(box);
                        if (wb < 1) return false;
                        emit(z, box, wb);
                        return true;
                    } catch (const NearZero&) {
                        continue;  // zero almost on the certify boundary; resize
                    }
                }
                return false;
            }
        }
        return false;
    }

    void process(const SRect& r, int w)
    {
        if (w == 0) return;
        if (r.diam() <= opt.refine_diam) {
            emit(r.center(), r, w);  // unresolved cluster at contract scale
            return;
        }
        if (w == 1 && r.diam() <= std::min(1e-4, out.resolution) && refine_newton(r))
            return;

        // elongated boxes split across the long side only; near-square quads
        const bool cut_re = r.width() * 2 >= r.height();
        const bool cut_im = r.height() * 2 >= r.width();
        for (double f : kFracs) {
            std::array<SRect, 4> ch;
            std::array<int, 4> cw{};
            int nch = 0;
            const double xm = r.re_lo + f * r.width();
            const double ym = r.im_lo + f * r.height();
            if (cut_re && cut_im) {
                ch[0] = {r.re_lo, xm, r.im_lo, ym};
                ch[1] = {xm, r.re_hi, r.im_lo, ym};
                ch[2] = {r.re_lo, xm, ym, r.im_hi};
                ch[3] = {xm, r.re_hi, ym, r.im_hi};
                nch = 4;
            } else if (cut_re) {
                ch[0] = {r.re_lo, xm, r.im_lo, r.im_hi};
                ch[1] = {xm, r.re_hi, r.im_lo, r.im_hi};
                nch = 2;
            } else {
                ch[0] = {r.re_lo, r.re_hi, r.im_lo, ym};
                ch[1] = {r.re_lo, r.re_hi, ym, r.im_hi};
                nch = 2;
            }
            int sum = 0;
            bool ok = true;
            for (int i = 0; i < nch && ok; ++i) {
                try {
                    cw[i] = winding(ch[i]);
                    sum += cw[i];
                } catch (const NearZero&) {
                    ok = false;
                }
            }
            if (!ok || sum != w) continue;  // a cut line sat near a zero
            for (int i = 0; i < nch; ++i) process(ch[i], cw[i]);
            return;
        }
        out.indeterminate_boxes.push_back(r);
    }
};

} // namespace

double SRect::diam() const
{
    return std::hypot(width(), height());
}

ScanReport scan_zeros(const LEvaluator& ev, const DirichletCharacter& chi, SRect rect,
                      double resolution, const ScanOptions& opt)
{
    if (!(rect.re_lo < rect.re_hi && rect.im_lo < rect.im_hi))
        throw ConfigError("scan_zeros: empty rectangle");
    if (!(resolution > 0)) throw ConfigError("scan_zeros: resolution must be positive");
    if (chi.is_principal() && expanded(rect, 1e-9).contains({1.0, 0.0}))
        throw ConfigError("scan_zeros: rectangle contains the pole at s = 1");

    Scanner sc{ev, chi, opt, {}};
    sc.out.rect = rect;
    sc.out.resolution = resolution;

    // the outer boundary is nudged outward when it passes through a zero
    int W = -1;
    SRect top = rect;
    for (int k = 0; k < 4 && W < 0; ++k) {
        const SRect cand = expanded(rect, k * 3e-8 * (1.0 + rect.diam()));
        try {
            W = sc.winding(cand);
            top = cand;
        } catch (const NearZero&) {
        }
    }
    if (W < 0) {
        sc.out.indeterminate_boxes.push_back(rect);
        sc.out.coverage_ok = false;
        return std::move(sc.out);
    }
    sc.out.rect_winding = W;
    sc.process(top, W);

    std::sort(sc.out.zeros.begin(), sc.out.zeros.end(), [](const auto& a, const auto& b) {
        return a.gamma != b.gamma ? a.gamma < b.gamma : a.beta < b.beta;
    });
    int total = 0;
    for (const auto& z : sc.out.zeros) total += z.winding_count;
    sc.out.coverage_ok = sc.out.indeterminate_boxes.empty() && total == W;
    return std::move(sc.out);
}

} // namespace smoothprog
