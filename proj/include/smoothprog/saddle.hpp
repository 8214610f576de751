#pragma once
#include <cstdint>
#include <vector>

#include "smoothprog/smooth_table.hpp"

namespace smoothprog {

// Saddle point alpha(x, y): the unique positive root of
//   sum_{p <= y} log p / (p^alpha - 1) = log x.
// The left side decreases from +inf to 0, so the root exists for any x > 1
// once y >= 2. Solved by bracketed Newton; residual is checked against
// 1e-9 * log x before returning.
struct SaddleResult {
    double alpha;
    double residual;      // f(alpha) = sum - log x at the returned alpha
    double log_L_alpha;   // log prod_{p <= y} (1 - p^-alpha)^-1
    double L_alpha;       // exp(log_L_alpha); +inf when it overflows
    int iterations;
};

SaddleResult solve_alpha(double x, double y);

// log of the saddle-point main-term scale
//   E_q(x, y) = x^alpha L(alpha, chi0; y) / (alpha sqrt((1 + log(x)/y) log x log y)),
// where L(alpha, chi0; y) is the Euler product over p <= y, p not dividing q.
double estimate_E_log(double x, double y, uint64_t q);
double estimate_E(double x, double y, uint64_t q);

// Dickman rho via the delay equation u rho'(u) = -rho(u - 1), marched on a
// uniform grid with midpoint slopes:
//   rho(u + h) = rho(u) - h * rho(u + h/2 - 1) / (u + h/2),
// where the half-grid value is the mean of its two neighbors. The grid is
// long double: at u = 10 the value is 2.77e-11 and double roundoff alone
// would swamp a 1e-6 relative target. 1/h must be an integer so that
// u + h/2 - 1 stays on the half-grid.
class DickmanRho {
public:
    explicit DickmanRho(double h = 1.0 / 4096, double u_max = 64.0);

    double operator()(double u) const;   // exact 1 on [0, 1]; 0 beyond u_max
    double step() const { return h_; }
    double u_max() const { return u_max_; }

private:
    double h_;
    double u_max_;
    uint64_t per_unit_;
    std::vector<long double> grid_;      // grid_[k] = rho(k * h)
};

// Ratio of the coprime count to its sieve-factor prediction
//   psi_coprime(x, y, q) vs psi(x, y) * prod_{p | q, p <= y} (1 - p^-alpha).
struct ProportionalityReport {
    double alpha;
    int64_t psi_all;
    int64_t psi_coprime;
    double sieve_factor;
    double ratio;          // psi_coprime / (psi_all * sieve_factor)
    bool flagged;          // ratio outside [0.2, 5]
};

ProportionalityReport check_coprime_proportionality(const SmoothTable& table,
                                                    double x, double y, uint64_t q);

} // namespace smoothprog
