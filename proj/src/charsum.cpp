#include "smoothprog/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"
#include "smoothprog/runtime.hpp"

namespace smoothprog {
namespace {

constexpr std::uint64_t kBlock = 1u << 16;
constexpr std::uint64_t kMaxTerms = 1ull << 40;

struct Kahan {
    double sum = 0, carry = 0;
    void add(double x)
    {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// sum over one block (lo, hi], compensated
std::complex<double> block_sum(const SumQuery& a, std::uint64_t lo, std::uint64_t hi)
{
    const CharacterGroup& group = a.chi.group();
    Kahan re, im;
    for (std::uint64_t n = lo + 1; n <= hi; ++n) {
        const std::int64_t rot = a.chi.rotation(n);
        if (rot < 0) continue;  // gcd(n, q) > 1
        const double ln = std::log(static_cast<double>(n));
        const std::complex<double> term =
            group.root_of_unity(rot) * std::polar(std::exp(-a.sigma * ln), -a.t * ln);
        re.add(term.real());
        im.add(term.imag());
    }
    return {re.sum, im.sum};
}

} // namespace

std::complex<double> char_sum(const SumQuery& query)
{
    if (query.n_lo >= query.n_hi)
        throw ConfigError("char_sum: interval (n_lo, n_hi] must be nonempty");
    if (query.n_hi - query.n_lo > kMaxTerms)
        throw CapacityError("char_sum: interval longer than 2^40 terms");

    const std::uint64_t nblocks = (query.n_hi - query.n_lo + kBlock - 1) / kBlock;
    std::vector<std::complex<double>> parts(nblocks);
    fill_indexed(parts, [&](std::size_t b) {
        const std::uint64_t lo = query.n_lo + b * kBlock;
        return block_sum(query, lo, std::min(query.n_hi, lo + kBlock));
    });
    Kahan re, im;
    for (const std::complex<double>& part : parts) {
        re.add(part.real());
        im.add(part.imag());
    }
    return {re.sum, im.sum};
}

ThresholdParams compute_thresholds(std::uint64_t q, double nu, double tau, double c3,
                                   int e0)
{
    if (q < 16) throw ConfigError("compute_thresholds: q must be at least 16");
    if (!(nu > 0) || !(tau > 0) || !(c3 > 0))
        throw ConfigError("compute_thresholds: nu, tau, c3 must be positive");
    if (e0 < 1) throw ConfigError("compute_thresholds: e0 must be at least 1");

    ThresholdParams p;
    p.q = q;
    p.nu = nu;
    p.tau = tau;
    p.c3 = c3;
    p.e0 = e0;
    const double logq = std::log(static_cast<double>(q));
    const double pq = static_cast<double>(largest_prime_factor(q));
    p.q_flat = std::pow(pq, static_cast<double>(e0)) + std::exp(c3 * logq / std::log(logq));
    p.xi = std::min(1.0, 1.0 / (3.0 * nu));
    p.ell = std::log(3.0 * static_cast<double>(q));
    p.eta = 1.0 / (std::sqrt(p.ell) * std::pow(std::log(2.0 * p.ell), 0.75));
    // pow saturates to inf when e0 is large; inf is never below q^nu
    p.scope_vacuous = !(p.q_flat < std::pow(static_cast<double>(q), nu));
    return p;
}

ChangRatioReport chang_ratio(const SumQuery& query, const ThresholdParams& params)
{
    if (query.chi.modulus() != params.q)
        throw ConfigError("chang_ratio: query and threshold moduli differ");

    ChangRatioReport rep;
    rep.q = params.q;
    rep.character_label = query.chi.label();
    rep.n_lo = query.n_lo;
    rep.n_hi = query.n_hi;
    rep.t = query.t;
    rep.sigma = query.sigma;
    rep.abs_sum = std::abs(char_sum(query));
    const double n = static_cast<double>(query.n_hi - query.n_lo);
    rep.bound = n * std::exp(-params.xi * std::sqrt(std::log(n)));
    rep.ratio = rep.abs_sum / rep.bound;
    rep.in_scope = params.q_flat < n &&
                   n <= std::pow(static_cast<double>(params.q), params.nu) &&
                   query.n_hi <= 2 * query.n_lo;
    return rep;
}

LBoundReport l_bound_compare(const DirichletCharacter& chi,
                             const std::vector<std::complex<double>>& s_grid,
                             const ThresholdParams& params)
{
    if (chi.modulus() != params.q)
        throw ConfigError("l_bound_compare: character and threshold moduli differ");
    if (chi.is_principal() || !chi.is_primitive())
        throw ConfigError("l_bound_compare: character must be primitive and nonprincipal");

    LBoundReport rep;
    rep.character_label = chi.label();
    rep.params = params;
    rep.all_within = true;
    const double q = static_cast<double>(params.q);
    const double t_cap = 3.0 * std::pow(q, params.tau);
    const LEvaluator ev(chi.group().shared_from_this());

    for (const std::complex<double> s : s_grid) {
        LBoundPoint pt;
        pt.s = s;
        const double ell = std::log(q * (std::abs(s.imag()) + 3.0));
        pt.eta = 1.0 / (std::sqrt(ell) * std::pow(std::log(2.0 * ell), 0.75));
        pt.bound = std::pow(params.q_flat, pt.eta) / pt.eta;
        pt.in_region = s.real() > 1.0 - pt.eta && std::abs(s.imag()) <= t_cap;
        pt.abs_l = std::abs(ev.value(chi, s));
        pt.ratio = pt.abs_l / pt.bound;
        if (pt.in_region) {
            rep.max_ratio = std::max(rep.max_ratio, pt.ratio);
            rep.all_within = rep.all_within && pt.ratio <= 1.0;
        }
        rep.points.push_back(pt);
    }
    return rep;
}

BProfile b_profile(const std::vector<double>& n_grid, double eta, double xi)
{
    if (!(eta > 0) || !(xi > 0)) throw ConfigError("b_profile: eta and xi must be positive");
    BProfile prof;
    prof.eta = eta;
    prof.xi = xi;
    prof.log_n_stationary = xi * xi / (4.0 * eta * eta);
    prof.decreasing_before_stationary = true;
    for (double n : n_grid) {
        if (!(n >= 1.0)) throw ConfigError("b_profile: grid points must be >= 1");
        prof.n.push_back(n);
        prof.b.push_back(4.0 * std::pow(n, eta) * std::exp(-xi * std::sqrt(std::log(n))));
    }
    for (std::size_t i = 0; i + 1 < prof.n.size(); ++i) {
        if (std::log(prof.n[i + 1]) > prof.log_n_stationary) continue;
        if (prof.b[i + 1] > prof.b[i]) prof.decreasing_before_stationary = false;
    }
    return prof;
}

} // namespace smoothprog
