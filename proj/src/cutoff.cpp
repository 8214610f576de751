#include "smoothprog/cutoff.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/quadrature.hpp"

#include <cmath>

namespace smoothprog {

namespace {
// S(w) = sum c_k w^k; c_{11+k} = 3879876 (-1)^k C(10,k) / (11+k), exact integers
const long long kSCoeffs[22] = {
    0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
    352716,    -3233230,  13430340, -33256080, 54318264,
    -61108047, 47927880, -25865840, 9189180,   -1939938, 184756};
}

CutoffSpec::CutoffSpec()
{
    for (int k = 0; k < 22; ++k) s_coeffs_[k] = static_cast<long double>(kSCoeffs[k]);
}

long double CutoffSpec::eval_s(double w) const
{
    // Horner is accurate only on [0, 1/2], where the largest partial sum is
    // ~3e4 against a value of ~1/2; beyond that reflect through w = 1/2
    // using S(w) + S(1 - w) = 1, exact because S' is symmetric about 1/2.
    const long double v = w > 0.5 ? 1.0L - w : static_cast<long double>(w);
    long double acc = 0.0L;
    for (int k = 21; k >= 11; --k) acc = acc * v + s_coeffs_[k];
    for (int k = 10; k >= 0; --k) acc *= v;
    return w > 0.5 ? 1.0L - acc : acc;
}

long double CutoffSpec::eval_s_deriv(int j, double w) const
{
    // Leibniz on S'(w) = N w^10 (1-w)^10 with N = 3879876:
    //   S^(j)(w) = N sum_k C(j-1,k) [w^10]^(k) [(1-w)^10]^(j-1-k)
    // Every term is a product of falling factorials and pure powers, so
    // nothing large cancels near either knot.
    const long double u = static_cast<long double>(w);
    const long double v = 1.0L - u;
    long double acc = 0.0L;
    long double binom = 1.0L;  // C(j-1, k), updated multiplicatively
    for (int k = 0; k <= j - 1; ++k) {
        const int m = j - 1 - k;  // derivative order landing on (1-w)^10
        long double term = binom;
        for (int i = 0; i < k; ++i) term *= static_cast<long double>(10 - i);
        for (int i = 0; i < m; ++i) term *= static_cast<long double>(-(10 - i));
        long double pw = 1.0L;
        for (int i = 0; i < 10 - k; ++i) pw *= u;
        for (int i = 0; i < 10 - m; ++i) pw *= v;
        acc += term * pw;
        binom = binom * static_cast<long double>(j - 1 - k) / static_cast<long double>(k + 1);
    }
    return 3879876.0L * acc;
}

double CutoffSpec::phi(double t) const
{
    if (!(t >= 0)) throw ConfigError("CutoffSpec::phi: need t >= 0");
    if (t <= kPlateauEnd) return 1.0;
    if (t >= kSupportEnd) return 0.0;
    return static_cast<double>(eval_s((kSupportEnd - t) / 1.5));
}

double CutoffSpec::derivative(int j, double t) const
{
    if (j < 0 || j > 10) throw ConfigError("CutoffSpec::derivative: j in [0, 10]");
    if (j == 0) return phi(t);
    if (!(t >= 0)) throw ConfigError("CutoffSpec::derivative: need t >= 0");
    if (t <= kPlateauEnd || t >= kSupportEnd) return 0.0;
    // phi(t) = S(w), w = (2 - t)/1.5, so each derivative picks up -2/3
    long double scale = 1.0L;
    for (int k = 0; k < j; ++k) scale *= -2.0L / 3.0L;
    return static_cast<double>(scale * eval_s_deriv(j, (kSupportEnd - t) / 1.5));
}

double CutoffSpec::derivative_sup(int j, int samples) const
{
    double sup = 0;
    for (int i = 0; i <= samples; ++i) {
        const double t = kPlateauEnd + (kSupportEnd - kPlateauEnd) * i / samples;
        sup = std::max(sup, std::abs(derivative(j, t)));
    }
    return sup;
}

std::complex<double> CutoffSpec::mellin(std::complex<double> s, int route) const
{
    if (!(s.real() > 0 && s.real() <= 400))
        throw ConfigError("CutoffSpec::mellin: need 0 < Re s <= 400");
    if (route < 0 || route > 2) throw ConfigError("CutoffSpec::mellin: route in {0,1,2}");
    const bool direct = route == 1 || (route == 0 && std::abs(s) < 10.0);

    // one seed panel per oscillation of t^(i Im s); geometric splits give
    // equal phase increments per panel
    const double osc = std::abs(s.imag()) * std::log(4.0) / 6.283185307179586;
    const int panels = std::max(1, static_cast<int>(std::ceil(osc)));
    auto panel_edge = [&](int k) { return 0.5 * std::pow(4.0, double(k) / panels); };

    QuadOptions opt;
    opt.max_depth = 40;

    if (direct) {
        opt.abs_tol = 2e-13 / panels;
        opt.rel_tol = 1e-14;
        std::complex<double> acc = std::exp(-s * std::log(2.0)) / s;  // (1/2)^s / s
        double err = 0;
        auto f = [&](double t) { return phi(t) * std::exp((s - 1.0) * std::log(t)); };
        for (int k = 0; k < panels; ++k) {
            const auto r = integrate_gk(f, panel_edge(k), panel_edge(k + 1), opt);
            acc += r.value;
            err += r.err_est;
        }
        if (err > 1e-12)
            throw NumericalError("CutoffSpec::mellin: direct quadrature missed tolerance");
        return acc;
    }

    std::complex<double> prod = 1.0;
    for (int j = 0; j < 10; ++j) prod *= s + double(j);
    // relative-first: the raw integral keeps size ~ |breve| * |prod|, so panel
    // differences are controlled against it, with an absolute floor tied to
    // sup |phi^(10)| ~ 2.85e9 over the band
    opt.rel_tol = 1e-13;
    opt.abs_tol = 4e-6 / panels;
    std::complex<double> acc = 0;
    double err = 0;
    auto f = [&](double t) { return derivative(10, t) * std::exp((s + 9.0) * std::log(t)); };
    for (int k = 0; k < panels; ++k) {
        const auto r = integrate_gk(f, panel_edge(k), panel_edge(k + 1), opt);
        acc += r.value;
        err += r.err_est;
    }
    if (err > std::max(1e-12 * std::abs(prod), 1e-10 * std::abs(acc)))
        throw NumericalError("CutoffSpec::mellin: by-parts quadrature missed tolerance");
    return acc / prod;
}

} // namespace smoothprog
