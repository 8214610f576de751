#include <doctest.h>

#include "smoothprog/cutoff.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/quadrature.hpp"

#include <cmath>
#include <complex>

using namespace smoothprog;
using cplx = std::complex<double>;

namespace {
// the transition polynomial's integer coefficients, c_k for w^k, k = 11..21;
// used to build small exact reference sums independent of the class internals
const long long kC[11] = {352716,    -3233230,  13430340, -33256080, 54318264, -61108047,
                          47927880, -25865840, 9189180,   -1939938,  184756};
}

TEST_CASE("plateau and support are exact, transition strictly inside (0,1)")
{
    CutoffSpec spec;
    CHECK(spec.phi(0.0) == 1.0);
    CHECK(spec.phi(0.25) == 1.0);
    CHECK(spec.phi(0.5) == 1.0);
    CHECK(spec.phi(2.0) == 0.0);
    CHECK(spec.phi(3.7) == 0.0);
    for (double t = 0.51; t < 2.0; t += 0.01) {
        CHECK(spec.phi(t) > 0.0);
        CHECK(spec.phi(t) <= 1.0);
    }
    // near t = 0.5 the true gap 1 - phi is ~1e-19, under double resolution;
    // it first becomes representable around t = 0.6 (gap ~2e-8)
    for (double t = 0.6; t < 2.0; t += 0.01) CHECK(spec.phi(t) < 1.0);
    // monotone nonincreasing across the transition
    double prev = 1.0;
    for (double t = 0.5; t <= 2.0; t += 1.0 / 512) {
        CHECK(spec.phi(t) <= prev + 1e-15);
        prev = spec.phi(t);
    }
    CHECK_THROWS_AS(spec.phi(-0.1), ConfigError);
}

TEST_CASE("derivatives agree with finite differences of the previous order")
{
    CutoffSpec spec;
    const double h = 1e-6;
    for (int j = 1; j <= 10; ++j) {
        const double sup = spec.derivative_sup(j);
        // central differences carry h^2/6 * sup|next-but-one derivative|
        // truncation; past order 10 estimate that sup by the ~14x growth
        // per order seen across 0..10
        const double supnn =
            j + 2 <= 10 ? spec.derivative_sup(j + 2)
                        : spec.derivative_sup(10) * std::pow(16.0, j - 8);
        // truncation h^2 sup|f''| plus rounding ulp(f)/h from the difference
        const double tol = h * h * supnn + 1e-12 * (1.0 + sup) +
                           5e-16 * (1.0 + spec.derivative_sup(j - 1)) / h;
        for (double t : {0.6, 0.9, 1.25, 1.7, 1.95}) {
            const double fd =
                (spec.derivative(j - 1, t + h) - spec.derivative(j - 1, t - h)) / (2 * h);
            CHECK(std::abs(spec.derivative(j, t) - fd) < tol);
        }
    }
}

TEST_CASE("derivatives 1..10 vanish at both knots, continuously")
{
    CutoffSpec spec;
    for (int j = 1; j <= 10; ++j) {
        CHECK(spec.derivative(j, 0.5) == 0.0);
        CHECK(spec.derivative(j, 2.0) == 0.0);
        // order-(11-j) zero at each knot: halving the offset divides the
        // value by 2^(11-j), up to O(offset) corrections
        const double rate = std::pow(2.0, 11 - j);
        for (double knot : {0.5, 2.0}) {
            const double sgn = knot < 1.0 ? 1.0 : -1.0;
            const double a = spec.derivative(j, knot + sgn * 1e-3);
            const double b = spec.derivative(j, knot + sgn * 0.5e-3);
            CHECK(a != 0.0);
            CHECK(std::abs(a / b) == doctest::Approx(rate).epsilon(0.1));
        }
        // orders with at least a double zero are already tiny at offset 1e-3
        if (j <= 9)
            CHECK(std::abs(spec.derivative(j, 0.5 + 1e-3)) < spec.derivative_sup(j) * 1e-3);
    }
}

TEST_CASE("frozen magnitudes of the top derivatives")
{
    CutoffSpec spec;
    CHECK(spec.derivative_sup(9) == doctest::Approx(2.09e8).epsilon(0.02));
    CHECK(spec.derivative_sup(10) == doctest::Approx(2.85e9).epsilon(0.02));
    CHECK(spec.derivative_sup(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mellin at s = 1 and s = 2 against exact coefficient sums")
{
    CutoffSpec spec;
    // int phi = 1/2 + 1.5 * sum c_k/(k+1);  int phi t dt = 1/8 + 3 sum c_k/(k+1) - 2.25 sum c_k/(k+2)
    double s1 = 0, s2 = 0;
    for (int i = 0; i < 11; ++i) {
        const int k = 11 + i;
        s1 += double(kC[i]) / (k + 1);
        s2 += double(kC[i]) / (k + 2);
    }
    const double want1 = 0.5 + 1.5 * s1;
    const double want2 = 0.125 + 3.0 * s1 - 2.25 * s2;
    CHECK(std::abs(spec.mellin({1.0, 0.0}).real() - want1) < 1e-12);
    CHECK(std::abs(spec.mellin({1.0, 0.0}).imag()) < 1e-13);
    CHECK(std::abs(spec.mellin({2.0, 0.0}).real() - want2) < 1e-12);
}

TEST_CASE("mellin: direct and by-parts routes agree on the overlap ring")
{
    CutoffSpec spec;
    for (double sigma : {0.3, 0.7, 1.0, 1.8}) {
        for (double t : {-13.0, -9.0, 8.0, 9.5, 11.0, 14.0}) {
            const cplx s(sigma, t);
            const cplx a = spec.mellin(s, 1);
            const cplx b = spec.mellin(s, 2);
            CHECK(std::abs(a - b) <= 2e-12 + 1e-9 * std::abs(b));
        }
    }
}

TEST_CASE("mellin decay: slope of log|breve| in log t is steeper than -8.5")
{
    CutoffSpec spec;
    const double sigma = 0.7;
    // least squares over a decade and a half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (double t = 100; t <= 1000.0001; t *= std::pow(10.0, 0.125)) {
        const double lx = std::log(t);
        const double ly = std::log(std::abs(spec.mellin({sigma, t})));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope < -8.5);
    // ten integrations by parts bound |breve(s) * prod_j (s+j)| by
    // int |phi^(10)(tau)| tau^(sigma+9) dtau, uniformly in Im s
    QuadOptions qo;
    qo.rel_tol = 1e-8;
    const double envelope =
        integrate_gk([&](double t) { return std::abs(spec.derivative(10, t)) *
                                            std::pow(t, sigma + 9.0); },
                     0.5, 2.0, qo)
            .value.real();
    for (double t : {50.0, 120.0, 400.0, 1000.0}) {
        const cplx s(sigma, t);
        cplx prod = 1.0;
        for (int j = 0; j < 10; ++j) prod *= s + double(j);
        CHECK(std::abs(spec.mellin(s)) * std::abs(prod) <= envelope * 1.01);
    }
}

TEST_CASE("mellin rejects out-of-domain s")
{
    CutoffSpec spec;
    CHECK_THROWS_AS(spec.mellin({0.0, 5.0}), ConfigError);
    CHECK_THROWS_AS(spec.mellin({-1.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(spec.mellin({1.0, 0.0}, 7), ConfigError);
    CHECK_THROWS_AS(spec.derivative(11, 1.0), ConfigError);
    CHECK_THROWS_AS(spec.derivative(-1, 1.0), ConfigError);
}
