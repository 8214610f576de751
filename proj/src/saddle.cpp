#include "smoothprog/saddle.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"

#include <cmath>

namespace smoothprog {

namespace {

std::vector<double> prime_logs(double y)
{
    if (y > 1e8) throw CapacityError("solve_alpha: y above 1e8 not supported");
    const auto ps = primes_up_to(static_cast<uint64_t>(y));
    std::vector<double> logs;
    logs.reserve(ps.size());
    for (uint32_t p : ps) logs.push_back(std::log(double(p)));
    return logs;
}

// f(a) = sum_p log p / (p^a - 1) - log x, strictly decreasing in a
double saddle_f(const std::vector<double>& logs, double a, double logx)
{
    double s = 0;
    for (double lp : logs) s += lp / std::expm1(a * lp);
    return s - logx;
}

double saddle_fprime(const std::vector<double>& logs, double a)
{
    double s = 0;
    for (double lp : logs) {
        const double t = a * lp;
        if (t > 500) {
            s += lp * lp * std::exp(-t);       // e^t/(e^t-1)^2 -> e^-t
        } else {
            const double em = std::expm1(t);
            s += lp * lp * std::exp(t) / (em * em);
        }
    }
    return -s;
}

} // namespace

SaddleResult solve_alpha(double x, double y)
{
    if (!(x >= 2)) throw ConfigError("solve_alpha: need x >= 2");
    if (!(y >= 2)) throw ConfigError("solve_alpha: need y >= 2");
    const double logx = std::log(x);
    const auto logs = prime_logs(y);

    double lo, hi;
    if (saddle_f(logs, 1.0, logx) > 0) {
        lo = 1.0; hi = 2.0;
        while (saddle_f(logs, hi, logx) > 0) {
            lo = hi;
            hi *= 2;
            if (hi > 512) throw NumericalError("solve_alpha: no bracket below alpha = 512");
        }
    } else {
        hi = 1.0; lo = 0.5;
        while (saddle_f(logs, lo, logx) <= 0) {
            hi = lo;
            lo /= 2;
            if (lo < 1e-12) throw NumericalError("solve_alpha: no bracket above alpha = 1e-12");
        }
    }

    double a = 0.5 * (lo + hi), fa = saddle_f(logs, a, logx);
    int iters = 0;
    for (; iters < 200; ++iters) {
        if (std::abs(fa) <= 1e-12 * std::max(1.0, logx) || hi - lo <= 1e-15 * a) break;
        if (fa > 0) lo = a; else hi = a;
        const double fp = saddle_fprime(logs, a);
        double next = a - fa / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        a = next;
        fa = saddle_f(logs, a, logx);
    }
    if (std::abs(fa) > 1e-9 * logx)
        throw NumericalError("solve_alpha: residual above tolerance");

    double logL = 0;
    for (double lp : logs) logL -= std::log(-std::expm1(-a * lp));

    SaddleResult r;
    r.alpha = a;
    r.residual = fa;
    r.log_L_alpha = logL;
    r.L_alpha = std::exp(logL);
    r.iterations = iters;
    return r;
}

double estimate_E_log(double x, double y, uint64_t q)
{
    if (q == 0) throw ConfigError("estimate_E: q must be positive");
    const auto s = solve_alpha(x, y);
    const double logx = std::log(x);
    double logL = 0;
    for (uint32_t p : primes_up_to(static_cast<uint64_t>(y))) {
        if (q % p == 0) continue;
        logL -= std::log(-std::expm1(-s.alpha * std::log(double(p))));
    }
    const double root = (1.0 + logx / y) * logx * std::log(y);
    return s.alpha * logx + logL - std::log(s.alpha) - 0.5 * std::log(root);
}

double estimate_E(double x, double y, uint64_t q)
{
    return std::exp(estimate_E_log(x, y, q));
}

DickmanRho::DickmanRho(double h, double u_max) : h_(h), u_max_(u_max)
{
    if (!(h > 0) || h > 0.25) throw ConfigError("DickmanRho: need 0 < h <= 1/4");
    const double inv = 1.0 / h;
    per_unit_ = static_cast<uint64_t>(std::llround(inv));
    if (std::abs(inv - double(per_unit_)) > 1e-9)
        throw ConfigError("DickmanRho: 1/h must be an integer");
    if (!(u_max >= 2) || u_max > 2048) throw ConfigError("DickmanRho: u_max in [2, 2048]");

    const uint64_t n = static_cast<uint64_t>(std::ceil(u_max * double(per_unit_)));
    grid_.assign(n + 1, 1.0L);
    const long double hl = 1.0L / static_cast<long double>(per_unit_);
    for (uint64_t k = per_unit_; k < n; ++k) {
        // u = k h; midpoint slope uses rho(u + h/2 - 1), between k-n1 and k+1-n1
        const long double mid = 0.5L * (grid_[k - per_unit_] + grid_[k + 1 - per_unit_]);
        const long double u = static_cast<long double>(k) * hl;
        long double next = grid_[k] - hl * mid / (u + 0.5L * hl);
        if (next < 0) next = 0;
        grid_[k + 1] = next;
    }
}

double DickmanRho::operator()(double u) const
{
    if (!(u >= 0)) throw ConfigError("DickmanRho: need u >= 0");
    if (u <= 1) return 1.0;
    if (u >= u_max_) return 0.0;
    const double pos = u * double(per_unit_);
    uint64_t k = static_cast<uint64_t>(pos);
    if (k + 1 >= grid_.size()) k = grid_.size() - 2;
    const long double frac = static_cast<long double>(pos - double(k));
    const long double v = grid_[k] + frac * (grid_[k + 1] - grid_[k]);
    return static_cast<double>(v);
}

ProportionalityReport check_coprime_proportionality(const SmoothTable& table,
                                                    double x, double y, uint64_t q)
{
    if (q == 0) throw ConfigError("check_coprime_proportionality: q must be positive");
    const auto s = solve_alpha(x, y);
    double factor = 1.0;
    for (uint64_t p : prime_factors(q))
        if (double(p) <= y) factor *= -std::expm1(-s.alpha * std::log(double(p)));

    ProportionalityReport r;
    r.alpha = s.alpha;
    r.psi_all = table.psi(x, y);
    r.psi_coprime = table.psi_coprime(x, y, q);
    r.sieve_factor = factor;
    if (r.psi_all == 0)
        throw NumericalError("check_coprime_proportionality: psi(x, y) = 0");
    r.ratio = double(r.psi_coprime) / (double(r.psi_all) * factor);
    r.flagged = !(r.ratio >= 0.2 && r.ratio <= 5.0);
    return r;
}

} // namespace smoothprog
