#include "smoothprog/checkers.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <utility>

#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"

namespace smoothprog {
namespace {

// The Hurwitz engine accepts Re s > -0.5, so scan rectangles are clipped at
// this floor; regions reaching below it are flagged window_clipped.
constexpr double kSigmaFloor = -0.4;
// Right edge of every scan rectangle. Euler products keep L nonzero on
// sigma > 1, so nothing is lost above this line.
constexpr double kSigmaHi = 1.2;
// A zero this close to a region boundary cannot be placed by certification
// boxes of diameter 1e-6; it turns the verdict Unknown instead of Pass/Fail.
constexpr double kBoundaryMargin = 2e-6;

double ell(std::uint64_t q, double gamma)
{
    return std::log(static_cast<double>(q) * (std::abs(gamma) + 3.0));
}

void sort_records(std::vector<ZeroRecord>& zs)
{
    std::sort(zs.begin(), zs.end(), [](const ZeroRecord& x, const ZeroRecord& y) {
        if (x.gamma != y.gamma) return x.gamma < y.gamma;
        if (x.beta != y.beta) return x.beta < y.beta;
        return x.character_label < y.character_label;
    });
}

struct WindowScan {
    std::vector<ZeroRecord> zeros;
    bool complete = true;
};

void absorb(const ScanReport& rep, WindowScan& out)
{
    out.complete = out.complete && rep.coverage_ok;
    out.zeros.insert(out.zeros.end(), rep.zeros.begin(), rep.zeros.end());
}

// Zeros of L(s, chi) inside rect. A principal character has its pole at
// s = 1, which winding counts would register as -1, so the box
// [0.75, 1.25] x [-0.25, 0.25] around it is removed from the rectangle and
// certified zero-free directly: on that box |1/(s-1)| >= 2.82 while the
// sampled remainder |zeta(s) - 1/(s-1)| stays near 0.66, and the missing
// Euler factors of the principal L have all their zeros on sigma = 0, far
// to the left of the box.
WindowScan scan_window(const LEvaluator& ev, const DirichletCharacter& chi, SRect rect)
{
    WindowScan out;
    if (rect.re_hi - rect.re_lo <= 1e-9 || rect.im_hi - rect.im_lo <= 1e-9) return out;

    const SRect pole_box{0.75, 1.25, -0.25, 0.25};
    const bool excise = chi.is_principal() && rect.re_lo < pole_box.re_hi &&
                        rect.re_hi > pole_box.re_lo && rect.im_lo < pole_box.im_hi &&
                        rect.im_hi > pole_box.im_lo;
    try {
        if (!excise) {
            absorb(scan_zeros(ev, chi, rect, 1e-3), out);
            return out;
        }

        double rest = 0;
        for (int i = 0; i <= 8; ++i) {
            for (int j = 0; j <= 8; ++j) {
                const std::complex<double> s{pole_box.re_lo + pole_box.width() * i / 8.0,
                                             pole_box.im_lo + pole_box.height() * j / 8.0};
                rest = std::max(rest, std::abs(hurwitz_zeta_regular(s, 1.0)));
            }
        }
        // min |1/(s-1)| over the box is 1/(0.25 sqrt 2); 0.5 covers the mesh
        if (rest + 0.5 >= 1.0 / (0.25 * std::sqrt(2.0))) out.complete = false;

        const double mid_lo = std::max(rect.im_lo, pole_box.im_lo);
        const double mid_hi = std::min(rect.im_hi, pole_box.im_hi);
        const SRect parts[4] = {
            {rect.re_lo, rect.re_hi, rect.im_lo, mid_lo},
            {rect.re_lo, rect.re_hi, mid_hi, rect.im_hi},
            {rect.re_lo, std::min(rect.re_hi, pole_box.re_lo), mid_lo, mid_hi},
            {std::max(rect.re_lo, pole_box.re_hi), rect.re_hi, mid_lo, mid_hi},
        };
        for (const SRect& part : parts) {
            if (part.re_hi - part.re_lo <= 1e-9 || part.im_hi - part.im_lo <= 1e-9) continue;
            absorb(scan_zeros(ev, chi, part, 1e-3), out);
        }
    } catch (const NumericalError&) {
        out.complete = false;
    }
    return out;
}

// L(conj s, conj chi) = conj L(s, chi), so the conjugate character's zeros
// are the reflections in the real axis. Valid only because every scan
// rectangle here is symmetric in t.
ZeroRecord mirrored(const ZeroRecord& z, const std::string& conj_label)
{
    ZeroRecord m = z;
    m.character_label = conj_label;
    m.gamma = -z.gamma;
    m.certified_box = SRect{z.certified_box.re_lo, z.certified_box.re_hi,
                            -z.certified_box.im_hi, -z.certified_box.im_lo};
    return m;
}

struct CharacterInfo {
    bool is_real = false;
    bool is_principal = false;
};

struct ProductScan {
    std::vector<ZeroRecord> zeros;
    bool complete = true;
    std::map<std::string, CharacterInfo> info;
};

// Zeros of prod_chi L(s, chi) over all characters mod q inside rect; each
// conjugate pair is scanned once and mirrored.
ProductScan scan_all_characters(const LEvaluator& ev, const SRect& rect)
{
    ProductScan out;
    const auto chis = ev.group().enumerate();
    std::map<std::string, bool> scanned;
    for (const auto& chi : chis) out.info[chi.label()] = {chi.is_real(), chi.is_principal()};
    for (const auto& chi : chis) {
        const std::string lab = chi.label();
        if (scanned.count(lab)) continue;
        scanned[lab] = true;
        WindowScan ws = scan_window(ev, chi, rect);
        out.complete = out.complete && ws.complete;
        const std::string clab = chi.conjugate().label();
        if (clab != lab && !scanned.count(clab)) {
            scanned[clab] = true;
            for (const auto& z : ws.zeros) out.zeros.push_back(mirrored(z, clab));
        }
        for (auto& z : ws.zeros) out.zeros.push_back(std::move(z));
    }
    sort_records(out.zeros);
    return out;
}

void check_t_max(double t_max, const char* who)
{
    if (!(t_max > 0) || t_max > 1000.0)
        throw ConfigError(std::string(who) + ": t_max must lie in (0, 1000]");
}

} // namespace

const char* verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    default: return "UNKNOWN";
    }
}

Theorem1Constants theorem1_constants(double a, double d)
{
    if (!(a > 0)) throw ConfigError("theorem1_constants: A must be positive");
    if (!(d >= 0)) throw ConfigError("theorem1_constants: D must be nonnegative");
    Theorem1Constants tc;
    tc.a = a;
    tc.d = d;
    tc.k0 = std::max(0, static_cast<int>(std::ceil(4.0 * a * std::log(a) + d)));
    tc.q_a = 500000LL * tc.k0;
    return tc;
}

SRect problem_range_rectangle(const DirichletCharacter& chi, int k0, double tau_a,
                              double t_max)
{
    const std::uint64_t q = chi.modulus();
    if (q < 2) throw ConfigError("problem_range_rectangle: modulus must be at least 2");
    if (k0 < 0) throw ConfigError("problem_range_rectangle: k0 must be nonnegative");
    if (!(tau_a > 0)) throw ConfigError("problem_range_rectangle: tau_a must be positive");
    if (!(t_max > 0)) throw ConfigError("problem_range_rectangle: t_max must be positive");
    const double height =
        std::min(t_max, std::min(static_cast<double>(q),
                                 std::pow(static_cast<double>(chi.conductor()), tau_a)));
    return SRect{1.0 - k0 / std::log(static_cast<double>(q)), kSigmaHi, -height, height};
}

Classification classify(std::uint64_t q, double a, double d, double t_max)
{
    if (q == 0) throw ConfigError("classify: q must be positive");
    check_t_max(t_max, "classify");
    const Theorem1Constants tc = theorem1_constants(a, d);

    Classification cls;
    cls.q = q;
    cls.t_max = t_max;
    cls.a = a;
    cls.d = d;
    cls.k0 = tc.k0;
    const double logq = std::log(static_cast<double>(q));
    cls.k_cap = q >= 2 ? static_cast<int>(std::ceil(0.5 * logq)) : 0;
    cls.xi_counts.assign(cls.k_cap + 1, 0);
    if (q <= 2) return cls;  // no nonprincipal characters

    const auto group = CharacterGroup::make(q);
    const LEvaluator ev(group);
    const SRect rect{std::max(1.0 - cls.k_cap / logq, kSigmaFloor), kSigmaHi, -t_max, t_max};

    std::map<std::string, std::size_t> done;
    for (const auto& chi : group->enumerate()) {
        if (chi.is_principal()) continue;
        CharacterClass entry;
        entry.label = chi.label();
        entry.conductor = chi.conductor();

        const auto it = done.find(chi.conjugate().label());
        if (it != done.end()) {
            const CharacterClass& src = cls.entries[it->second];
            entry.xi_index = src.xi_index;
            entry.beta_max = src.beta_max;
            entry.indeterminate = src.indeterminate;
        } else {
            const WindowScan ws = scan_window(ev, chi, rect);
            entry.indeterminate = !ws.complete;
            bool have_zero = false;
            for (const auto& z : ws.zeros) {
                if (!have_zero || z.beta > entry.beta_max) {
                    entry.beta_max = z.beta;
                    have_zero = true;
                }
                if (chi.is_real() && z.is_real &&
                    (!cls.exceptional || z.beta > cls.exceptional->beta))
                    cls.exceptional = z;
            }
            // zero-free for depth k exactly when beta_max <= 1 - k/log q
            entry.xi_index =
                have_zero ? std::clamp(static_cast<int>(std::floor((1.0 - entry.beta_max) * logq)),
                                       0, cls.k_cap)
                          : cls.k_cap;
        }
        entry.in_problem_set = entry.xi_index < cls.k0;
        if (entry.indeterminate) {
            ++cls.indeterminate_count;
        } else {
            ++cls.xi_counts[entry.xi_index];
            if (entry.in_problem_set) ++cls.problem_count;
        }
        done[entry.label] = cls.entries.size();
        cls.entries.push_back(std::move(entry));
    }
    return cls;
}

ZeroFreeReport zero_free_region_check(std::uint64_t q, double c1, double t_max)
{
    if (q == 0) throw ConfigError("zero_free_region_check: q must be positive");
    if (!(c1 > 0)) throw ConfigError("zero_free_region_check: c1 must be positive");
    check_t_max(t_max, "zero_free_region_check");

    ZeroFreeReport rep;
    rep.q = q;
    rep.c1 = c1;
    rep.t_max = t_max;
    rep.region_sigma_at_0 = 1.0 - c1 / ell(q, 0.0);
    rep.window_clipped = rep.region_sigma_at_0 < kSigmaFloor;
    const SRect rect{std::max(rep.region_sigma_at_0, kSigmaFloor), kSigmaHi, -t_max, t_max};

    const LEvaluator ev(CharacterGroup::make(q));
    ProductScan ps = scan_all_characters(ev, rect);
    rep.scans_complete = ps.complete;
    rep.zeros = std::move(ps.zeros);

    bool ambiguous = false;
    for (const auto& z : rep.zeros) {
        const double boundary = 1.0 - c1 / ell(q, z.gamma);
        if (std::abs(z.beta - boundary) <= kBoundaryMargin) ambiguous = true;
        if (z.beta > boundary) rep.offenders.push_back(z);
    }
    if (!rep.scans_complete || ambiguous) {
        rep.verdict = Verdict::Unknown;
    } else if (rep.offenders.empty()) {
        rep.verdict = Verdict::Pass;
    } else if (rep.offenders.size() == 1) {
        const ZeroRecord& z = rep.offenders.front();
        const CharacterInfo& ci = ps.info.at(z.character_label);
        rep.verdict =
            (z.is_real && ci.is_real && !ci.is_principal) ? Verdict::Pass : Verdict::Fail;
    } else {
        rep.verdict = Verdict::Fail;
    }
    return rep;
}

RepulsionReport deuring_heilbronn_check(std::uint64_t q, double eps, double c2,
                                        double t_max)
{
    if (q < 2) throw ConfigError("deuring_heilbronn_check: q must be at least 2");
    if (!(eps > 0) || !(eps < 1))
        throw ConfigError("deuring_heilbronn_check: eps must lie in (0, 1)");
    if (!(c2 > 0)) throw ConfigError("deuring_heilbronn_check: c2 must be positive");
    check_t_max(t_max, "deuring_heilbronn_check");

    RepulsionReport rep;
    rep.q = q;
    rep.eps = eps;
    rep.c2 = c2;
    rep.t_max = t_max;
    rep.beta0 = 1.0 - eps / std::log(static_cast<double>(q));
    const double depth = c2 * std::log(1.0 / eps);
    rep.region_sigma_at_0 = 1.0 - depth / ell(q, 0.0);
    rep.window_clipped = rep.region_sigma_at_0 < kSigmaFloor;
    const SRect rect{std::max(rep.region_sigma_at_0, kSigmaFloor), kSigmaHi, -t_max, t_max};

    const LEvaluator ev(CharacterGroup::make(q));
    ProductScan ps = scan_all_characters(ev, rect);
    rep.scans_complete = ps.complete;

    bool ambiguous = false;
    for (auto& z : ps.zeros) {
        if (std::abs(z.beta - rep.beta0) <= 1e-6 && std::abs(z.gamma) <= 1e-6)
            continue;  // the designated zero itself
        const double boundary = 1.0 - depth / ell(q, z.gamma);
        if (std::abs(z.beta - boundary) <= kBoundaryMargin) ambiguous = true;
        if (z.beta > boundary) rep.offenders.push_back(z);
        rep.others.push_back(std::move(z));
    }
    rep.repulsion_margin = rect.re_lo;
    for (const auto& z : rep.others) rep.repulsion_margin = std::max(rep.repulsion_margin, z.beta);

    if (!rep.scans_complete || ambiguous)
        rep.verdict = Verdict::Unknown;
    else
        rep.verdict = rep.offenders.empty() ? Verdict::Pass : Verdict::Fail;
    return rep;
}

IwaniecReport iwaniec_condition_check(const DirichletCharacter& chi, double m, double eta,
                                      double t)
{
    if (!(eta > 0) || !(eta < 1.0 / 3.0))
        throw ConfigError("iwaniec_condition_check: eta must lie in (0, 1/3)");
    if (!(m >= std::exp(1.0)))
        throw ConfigError("iwaniec_condition_check: m must be at least e");
    if (!(t > 0) || 3.0 * t > 1000.0)
        throw ConfigError("iwaniec_condition_check: need 0 < 3t <= 1000");

    IwaniecReport rep;
    rep.character_label = chi.label();
    rep.m = m;
    rep.eta = eta;
    rep.t = t;
    rep.theta = std::log(m) / eta;
    rep.vartheta = 1.0 / (400.0 * rep.theta);
    const double q = static_cast<double>(chi.modulus());
    rep.eta_condition = 8.0 * std::log(5.0 * std::log(3.0 * q)) +
                            (24.0 / eta) * std::log(160.0 * rep.theta) <=
                        (8.0 / 3.0) * rep.theta;

    const LEvaluator ev(chi.group().shared_from_this());

    // condition (i) sample: seven levels inside (1 - eta, 1), then points
    // above sigma = 1 where the same bound still applies
    std::vector<double> sigmas;
    for (int k = 1; k <= 7; ++k) sigmas.push_back(1.0 - eta + eta * k / 8.0);
    sigmas.insert(sigmas.end(), {1.0 + eta / 8.0, 1.5, 2.0, 3.0});
    const double span = 3.0 * t;
    const double step = std::max(0.25, span / 1000.0);
    for (double sigma : sigmas) {
        for (double tt = -span; tt <= span + 1e-9; tt += step) {
            const std::complex<double> s{sigma, std::min(tt, span)};
            rep.grid_max_abs = std::max(rep.grid_max_abs, std::abs(ev.value(chi, s)));
            ++rep.grid_points;
        }
    }
    rep.bound_holds_sampled = rep.grid_max_abs <= m;

    if (rep.vartheta < 1e-5) {
        rep.no_zero_verdict = Verdict::Unknown;
        return rep;
    }
    const SRect rect{1.0 - rep.vartheta, kSigmaHi, -t, t};
    WindowScan ws = scan_window(ev, chi, rect);
    for (auto& z : ws.zeros)
        if (z.beta > 1.0 - rep.vartheta) rep.zeros.push_back(std::move(z));
    sort_records(rep.zeros);
    rep.no_zero_verdict = !ws.complete          ? Verdict::Unknown
                          : rep.zeros.empty()   ? Verdict::Pass
                                                : Verdict::Fail;
    return rep;
}

GulpReport gulp_region_check(const DirichletCharacter& chi, double scale, double t_max)
{
    if (!(scale >= 1.0)) throw ConfigError("gulp_region_check: scale must be at least 1");
    check_t_max(t_max, "gulp_region_check");

    GulpReport rep;
    rep.character_label = chi.label();
    rep.scale = scale;
    rep.t_max = t_max;
    if (chi.is_principal() || chi.modulus() < 3) {
        rep.vacuous = true;
        rep.scans_complete = true;
        rep.verdict = Verdict::Pass;
        return rep;
    }
    if (!chi.is_primitive())
        throw ConfigError("gulp_region_check: character must be primitive");

    const std::uint64_t q = chi.modulus();
    const double logq = std::log(static_cast<double>(q));
    const auto width = [&](double gamma) {
        const double l = ell(q, gamma);
        return 1.0 / (scale * (logq + std::pow(l * std::log(2.0 * l), 0.75)));
    };
    rep.width_at_0 = width(0.0);
    const SRect rect{std::max(1.0 - rep.width_at_0, kSigmaFloor), kSigmaHi, -t_max, t_max};

    const LEvaluator ev(chi.group().shared_from_this());
    const WindowScan ws = scan_window(ev, chi, rect);
    rep.scans_complete = ws.complete;

    bool ambiguous = false;
    for (const auto& z : ws.zeros) {
        if (z.is_real) continue;  // gamma = 0 lies outside the region
        const double boundary = 1.0 - width(z.gamma);
        if (std::abs(z.beta - boundary) <= kBoundaryMargin) ambiguous = true;
        if (z.beta > boundary) rep.offenders.push_back(z);
    }
    sort_records(rep.offenders);
    if (!rep.scans_complete || ambiguous)
        rep.verdict = Verdict::Unknown;
    else
        rep.verdict = rep.offenders.empty() ? Verdict::Pass : Verdict::Fail;
    return rep;
}

DensityReport density_count_check(std::uint64_t q, double t_max, double c1, double c2)
{
    if (!(c1 > 0) || !(c2 >= 0))
        throw ConfigError("density_count_check: need c1 > 0 and c2 >= 0");
    const Classification cls = classify(q, 4.0 * std::sqrt(std::exp(1.0)), 10.0, t_max);

    DensityReport rep;
    rep.q = q;
    rep.t_max = t_max;
    rep.c1 = c1;
    rep.c2 = c2;
    rep.counts = cls.xi_counts;
    rep.phi = euler_phi(q);
    rep.within.resize(rep.counts.size());
    std::uint64_t sum = cls.indeterminate_count;
    bool all_within = true;
    for (std::size_t k = 0; k < rep.counts.size(); ++k) {
        sum += static_cast<std::uint64_t>(rep.counts[k]);
        rep.within[k] = rep.counts[k] <= c1 * std::exp(c2 * static_cast<double>(k));
        all_within = all_within && rep.within[k];
    }
    rep.sum_bounded = sum <= rep.phi;
    rep.verdict = cls.indeterminate_count > 0 ? Verdict::Unknown
                  : (all_within && rep.sum_bounded) ? Verdict::Pass
                                                    : Verdict::Fail;
    return rep;
}

} // namespace smoothprog
