#include <doctest.h>

#include "smoothprog/characters.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/lfunc.hpp"

#include <cmath>
#include <complex>
#include <numeric>

using namespace smoothprog;
using cplx = std::complex<double>;

namespace {

// direct Dirichlet series sum_{n<=N} chi(n) n^{-s}; the tail after N is
// bounded through Abel summation by 2q |s| N^{-Re s}
cplx series_L(const DirichletCharacter& chi, cplx s, uint64_t N)
{
    cplx sum = 0.0;
    for (uint64_t n = 1; n <= N; ++n) {
        if (chi.rotation(n) < 0) continue;
        sum += chi(n) * std::exp(-s * std::log(double(n)));
    }
    return sum;
}

} // namespace

TEST_CASE("zeta at even integers matches the closed forms")
{
    const double pi = 3.14159265358979323846;
    CHECK(std::abs(riemann_zeta({2.0, 0.0}) - pi * pi / 6.0) < 1e-12);
    CHECK(std::abs(riemann_zeta({4.0, 0.0}) - std::pow(pi, 4) / 90.0) < 1e-12);
    CHECK(std::abs(riemann_zeta({6.0, 0.0}) - std::pow(pi, 6) / 945.0) < 1e-12);
}

TEST_CASE("regularized value at s = 1 is -digamma(w)")
{
    const double gamma = 0.5772156649015329;
    CHECK(std::abs(hurwitz_zeta_regular({1.0, 0.0}, 1.0) - gamma) < 1e-12);
    CHECK(std::abs(hurwitz_zeta_regular({1.0, 0.0}, 0.5) - (gamma + 2 * std::log(2.0))) < 1e-12);
    // -psi(1/3) = gamma + (3/2) log 3 + pi / (2 sqrt 3)
    CHECK(std::abs(hurwitz_zeta_regular({1.0, 0.0}, 1.0 / 3) - 3.1320337800208065) < 1e-12);
}

TEST_CASE("hurwitz values against direct sums with bracketed tails")
{
    // zeta(3, w): sum to N, then the integral bracket
    // [int_{N}^{inf}, int_{N-1}^{inf}] of (x+w)^{-3} pins the tail
    for (double w : {0.1, 1.0 / 3, 0.5, 0.9, 1.0}) {
        const int N = 30000;
        double sum = 0;
        for (int n = N - 1; n >= 0; --n) sum += std::pow(n + w, -3.0);
        const double lo = 0.5 * std::pow(N + w, -2.0);
        const double hi = 0.5 * std::pow(N - 1 + w, -2.0);
        const double mid = sum + 0.5 * (lo + hi);
        CHECK(std::abs(hurwitz_zeta({3.0, 0.0}, w).real() - mid) < 0.5 * (hi - lo) + 2e-14);
        CHECK(std::abs(hurwitz_zeta({3.0, 0.0}, w).imag()) < 1e-15);
    }
    // complex s: direct sum, tail bounded by the sigma = 3 integral
    for (double w : {0.25, 2.0 / 3}) {
        const cplx s{3.0, 7.0};
        const int N = 100000;
        cplx sum = 0.0;
        for (int n = N - 1; n >= 0; --n) sum += std::exp(-s * std::log(n + w));
        CHECK(std::abs(hurwitz_zeta(s, w) - sum) < std::pow(double(N), -2.0));
    }
}

TEST_CASE("L(1, nontrivial character mod 4) is pi/4")
{
    auto g = CharacterGroup::make(4);
    auto chis = g->enumerate();
    REQUIRE(chis.size() == 2);
    const auto& chi = chis[1];
    REQUIRE(!chi.is_principal());
    LEvaluator ev(g);
    CHECK(std::abs(ev.value(chi, {1.0, 0.0}) - 3.14159265358979323846 / 4.0) < 1e-12);
}

TEST_CASE("nonprincipal L is regular at s = 1 and continuous there")
{
    for (uint64_t q : {3, 5, 8, 21}) {
        auto g = CharacterGroup::make(q);
        LEvaluator ev(g);
        for (const auto& chi : g->enumerate()) {
            if (chi.is_principal()) continue;
            const cplx at1 = ev.value(chi, {1.0, 0.0});
            const cplx near1 = ev.value(chi, {1.0 + 1e-7, 0.0});
            CHECK(std::abs(at1 - near1) < 1e-5);
            CHECK(std::abs(at1) > 1e-3);  // no vanishing at s = 1
        }
    }
}

TEST_CASE("L-values match direct Dirichlet series at Re s = 2")
{
    for (uint64_t q : {3, 4, 8, 9, 21, 40, 72, 100}) {
        auto g = CharacterGroup::make(q);
        LEvaluator ev(g);
        auto chis = g->enumerate();
        for (size_t i = 0; i < chis.size(); i += std::max<size_t>(1, chis.size() / 3)) {
            for (cplx s : {cplx{2.0, 0.0}, cplx{2.0, 5.0}}) {
                const cplx direct = series_L(chis[i], s, 1000000);
                CHECK(std::abs(ev.value(chis[i], s) - direct) < 1e-6);
            }
        }
    }
}

TEST_CASE("principal route equals zeta times the Euler factors")
{
    for (uint64_t q : {4, 45}) {
        auto g = CharacterGroup::make(q);
        LEvaluator ev(g);
        const cplx s{2.0, 1.5};
        const cplx direct = series_L(g->principal(), s, 1000000);
        CHECK(std::abs(ev.value(g->principal(), s) - direct) < 1e-6);
    }
}

TEST_CASE("induced-product route agrees with the direct residue sum")
{
    for (uint64_t q : {45, 72}) {
        auto g = CharacterGroup::make(q);
        LEvaluator ev(g);
        for (const auto& chi : g->enumerate()) {
            for (cplx s : {cplx{2.0, 0.3}, cplx{0.8, 14.0}}) {
                if (chi.is_principal() && std::abs(s - 1.0) < 1e-9) continue;
                const cplx a = ev.value(chi, s);
                const cplx b = ev.value_induced(chi, s);
                CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(b)));
            }
        }
    }
}

TEST_CASE("conjugate symmetry across the real axis")
{
    auto g = CharacterGroup::make(7);
    LEvaluator ev(g);
    for (const auto& chi : g->enumerate()) {
        if (chi.is_principal()) continue;
        for (cplx s : {cplx{1.2, 9.0}, cplx{0.7, 31.0}}) {
            const cplx a = ev.value(chi, s);
            const cplx b = std::conj(ev.value(chi.conjugate(), std::conj(s)));
            CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
        }
    }
}

TEST_CASE("zeta is tiny at the first critical zero and not nearby")
{
    CHECK(std::abs(riemann_zeta({0.5, 14.13472514173469})) < 1e-9);
    CHECK(std::abs(riemann_zeta({0.5, 13.0})) > 0.01);
    CHECK(std::abs(riemann_zeta({0.5, 15.0})) > 0.01);
}

TEST_CASE("high-imaginary evaluation still matches the direct series")
{
    auto g = CharacterGroup::make(5);
    LEvaluator ev(g);
    auto chis = g->enumerate();
    const cplx s{2.0, 900.0};
    const cplx direct = series_L(chis[2], s, 2000000);
    CHECK(std::abs(ev.value(chis[2], s) - direct) < 1e-5);
}

TEST_CASE("cache hits reproduce cold values bitwise")
{
    auto g = CharacterGroup::make(45);
    LEvaluator ev(g);
    auto chis = g->enumerate();
    const cplx s{0.9, 12.5};
    const auto first = ev.values(chis, s);
    ev.values(chis, {0.9, 13.0});
    const auto again = ev.values(chis, s);
    REQUIRE(first.size() == again.size());
    for (size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i].real() == again[i].real());
        CHECK(first[i].imag() == again[i].imag());
    }
}

TEST_CASE("domain and capacity errors")
{
    CHECK_THROWS_AS(hurwitz_zeta_regular({2.0, 0.0}, 0.0), ConfigError);
    CHECK_THROWS_AS(hurwitz_zeta_regular({2.0, 0.0}, -0.5), ConfigError);
    CHECK_THROWS_AS(hurwitz_zeta_regular({101.0, 0.0}, 0.5), ConfigError);
    CHECK_THROWS_AS(hurwitz_zeta_regular({2.0, 1500.0}, 0.5), ConfigError);
    CHECK_THROWS_AS(hurwitz_zeta({1.0, 0.0}, 0.5), ConfigError);
    CHECK_THROWS_AS(riemann_zeta({1.0, 0.0}), ConfigError);

    auto g4 = CharacterGroup::make(4);
    LEvaluator ev(g4);
    CHECK_THROWS_AS(ev.value(g4->principal(), {1.0, 0.0}), ConfigError);
    auto g5 = CharacterGroup::make(5);
    CHECK_THROWS_AS(ev.value(g5->principal(), {2.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(LEvaluator(CharacterGroup::make(10007)), CapacityError);
}
