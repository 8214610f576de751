#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "smoothprog/characters.hpp"
#include "smoothprog/lfunc.hpp"

namespace smoothprog {

// Twisted interval character sums sum_{n_lo < n <= n_hi} chi(n) n^{-sigma-it}
// and their comparison against short-interval decay profiles, the q_flat
// thresholds that gate those profiles, and the resulting L-bound.

struct SumQuery {
    DirichletCharacter chi;
    std::uint64_t n_lo = 0;  // exclusive
    std::uint64_t n_hi = 0;  // inclusive
    double sigma = 0;        // 0 for raw sums
    double t = 0;
};

// Compensated summation, one logarithm per term: each term is
// chi(n) exp(-(sigma + it) log n) with chi read off its exact rotation
// count. Blocks of 2^16 terms accumulate independently and combine in
// index order, so the result is identical for any thread count.
std::complex<double> char_sum(const SumQuery& query);

struct ThresholdParams {
    std::uint64_t q = 0;
    double nu = 0, tau = 0, c3 = 0;
    int e0 = 0;           // exponent on P(q); the reference strength is 1000
    double q_flat = 0;    // P(q)^e0 + exp(c3 log q / log log q)
    double xi = 0;        // min(1, 1/(3 nu))
    double ell = 0;       // log(3q), the t = 0 value of log(q(|t|+3))
    double eta = 0;       // ell^{-1/2} (log 2 ell)^{-3/4} at t = 0
    bool scope_vacuous = false;  // q_flat >= q^nu: no admissible interval length
};

// Threshold package for modulus q. Requires q >= 16 so that log log q > 1.
// With the reference exponent e0 = 1000 the P(q) term overflows any usable
// range and scope_vacuous is set; small e0 keeps the profile studies alive.
ThresholdParams compute_thresholds(std::uint64_t q, double nu, double tau, double c3,
                                   int e0);

struct ChangRatioReport {
    std::uint64_t q = 0;
    std::string character_label;
    std::uint64_t n_lo = 0, n_hi = 0;
    double t = 0, sigma = 0;
    double abs_sum = 0;
    double bound = 0;  // N exp(-xi sqrt(log N)), N = n_hi - n_lo
    double ratio = 0;
    // q_flat < N <= q^nu with n_hi <= 2 n_lo: the stated scope of the bound
    bool in_scope = false;
};

// |char_sum| against the interval decay profile. The report carries the
// scope flag rather than a verdict: outside the scope the profile is not a
// claimed bound, only a reference curve.
ChangRatioReport chang_ratio(const SumQuery& query, const ThresholdParams& params);

struct LBoundPoint {
    std::complex<double> s;
    double abs_l = 0;
    double eta = 0;    // recomputed from ell = log(q(|t|+3)) at this point
    double bound = 0;  // eta^{-1} q_flat^eta
    double ratio = 0;
    bool in_region = false;  // sigma > 1 - eta and |t| <= 3 q^tau
};

struct LBoundReport {
    std::string character_label;
    ThresholdParams params;
    std::vector<LBoundPoint> points;
    double max_ratio = 0;     // over in-region points
    bool all_within = false;  // every in-region point satisfies ratio <= 1
};

// |L(s, chi)| versus eta^{-1} q_flat^eta on a grid, chi primitive and
// nonprincipal. Points outside sigma > 1 - eta, |t| <= 3 q^tau are reported
// with in_region = false and do not count against all_within.
LBoundReport l_bound_compare(const DirichletCharacter& chi,
                             const std::vector<std::complex<double>>& s_grid,
                             const ThresholdParams& params);

struct BProfile {
    double eta = 0, xi = 0;
    std::vector<double> n;
    std::vector<double> b;        // 4 N^eta exp(-xi sqrt(log N))
    double log_n_stationary = 0;  // xi^2/(4 eta^2), the zero of (log b)'
    bool decreasing_before_stationary = false;
};

// The dyadic-block envelope b(N) on a grid. log b has derivative
// eta - xi/(2 sqrt(log N)) in log N, so b falls until log N reaches
// xi^2/(4 eta^2) and rises afterwards; the flag checks the falling half on
// the given grid by finite differences.
BProfile b_profile(const std::vector<double>& n_grid, double eta, double xi);

} // namespace smoothprog
