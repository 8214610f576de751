#pragma once
#include <complex>
#include <vector>

#include "smoothprog/characters.hpp"
#include "smoothprog/cutoff.hpp"
#include "smoothprog/smooth_table.hpp"

namespace smoothprog {

// sum over y-smooth n of chi(n) phi(n / x); the sum runs to 2x, so the table
// must cover 2x. Terms accumulate into exact rotation buckets, one complex
// dot product at the end.
std::complex<double> psi_smoothed(const SmoothTable& table, const DirichletCharacter& chi,
                                  double x, double y, const CutoffSpec& spec);

// prod_{p <= y} (1 - chi(p) p^-s)^{-1}, accumulated as sum of -log terms;
// needs Re s > 0 so every factor satisfies |chi(p) p^-s| < 1
std::complex<double> truncated_L(const DirichletCharacter& chi, std::complex<double> s,
                                 double y);

// log of the principal-character product prod_{p <= y, p not | q} (1 - p^-sigma)^{-1}
double truncated_L_log_principal(double sigma, double y, uint64_t q);

// Mellin inversion of the smoothed count along Re s = alpha(x, y):
//   (1/2pi) int_{-T}^{T} L(alpha + it, chi; y) x^{alpha + it} breve(alpha + it) dt,
// split at +-(y q)^{1/4} into a center piece and two tails. I_center and
// I_plus / I_minus are the raw integral pieces; total already carries 1/2pi.
struct ContourReport {
    double x = 0, y = 0;
    double alpha = 0;
    double T = 0;            // numerical truncation height actually used
    double split = 0;        // (y q)^{1/4}, clamped to T
    std::complex<double> I_center, I_plus, I_minus;
    std::complex<double> total;
    double quad_err_est = 0; // accumulated panel error, same scale as the raw pieces
    double tail_bound = 0;   // |integrand(T)| * T / (8 pi): decay-9 estimate of the cut tail
    long evals = 0;
};

ContourReport contour_psi(const DirichletCharacter& chi, double x, double y,
                          const CutoffSpec& spec, double T_num = 0);

// |L(alpha + it, chi; y)| / L(alpha, chi0; y) sampled on a t-grid
std::vector<std::pair<double, double>> l_ratio_profile(const DirichletCharacter& chi,
                                                       double y, double alpha,
                                                       const std::vector<double>& ts);

} // namespace smoothprog
