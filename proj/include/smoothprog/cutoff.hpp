#pragma once
#include <array>
#include <complex>
#include <vector>

namespace smoothprog {

// Smooth cutoff used to mollify sharp counts:
//   phi = 1 on [0, 1/2], 0 on [2, inf), and S((2 - t)/1.5) between, where
//   S(w) = 3879876 * sum_{k=0}^{10} (-1)^k C(10,k) w^{11+k} / (11 + k)
// is the degree-21 polynomial with S'(w) = 3879876 w^10 (1-w)^10, S(0) = 0,
// S(1) = 1. The normalizer 3879876 = 11 * C(21, 10) makes every coefficient
// an integer, so the polynomial is exact in doubles. Derivatives through
// order 10 vanish at both knots, giving phi in C^10.
class CutoffSpec {
public:
    CutoffSpec();

    static constexpr double kPlateauEnd = 0.5;
    static constexpr double kSupportEnd = 2.0;

    double phi(double t) const;                  // t >= 0
    double derivative(int j, double t) const;    // j in [0, 10]

    // grid sup of |phi^(j)| over the transition band (diagnostic)
    double derivative_sup(int j, int samples = 4096) const;

    // Mellin transform for Re s > 0:
    //   breve(s) = (1/2)^s / s + int_{1/2}^{2} phi(t) t^{s-1} dt.
    // Evaluated directly for |s| < 10; for larger |s| through ten
    // integrations by parts,
    //   breve(s) = (s(s+1)..(s+9))^{-1} int phi^(10)(t) t^{s+9} dt
    // (all boundary terms vanish), which keeps relative accuracy once the
    // transform decays below absolute double noise. route: 0 = automatic,
    // 1 = force direct, 2 = force by-parts.
    std::complex<double> mellin(std::complex<double> s, int route = 0) const;

private:
    // S by Horner needs care: the integer coefficients reach 6.1e7 with
    // alternating signs, so near w = 1 naive evaluation loses ~8 digits to
    // cancellation. For w > 1/2 the exact identity S(w) = 1 - S(1 - w) is
    // used instead (S' is symmetric about 1/2), and derivatives come from
    // the factored Leibniz expansion of S'(w) = N w^10 (1-w)^10, which has
    // no large cancellation at either knot.
    std::array<long double, 22> s_coeffs_;

    long double eval_s(double w) const;          // stable S(w), w in [0, 1]
    long double eval_s_deriv(int j, double w) const;  // S^(j)(w), j in [1, 10]
};

} // namespace smoothprog
