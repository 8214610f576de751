#include <doctest.h>

#include "smoothprog/contour.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"
#include "smoothprog/saddle.hpp"

#include <cmath>
#include <complex>
#include <numeric>

using namespace smoothprog;
using cplx = std::complex<double>;

TEST_CASE("truncated_L equals the direct Euler product")
{
    auto g4 = CharacterGroup::make(4);
    const auto chi0 = g4->principal();
    const auto chi1 = g4->character({1});
    for (cplx s : {cplx(0.8, 0.0), cplx(1.0, 2.5), cplx(0.4, -7.0)}) {
        cplx want0 = 1, want1 = 1;
        for (uint32_t p : primes_up_to(50)) {
            const cplx ps = std::exp(-s * std::log(double(p)));
            want0 /= 1.0 - chi0(p) * ps;
            want1 /= 1.0 - chi1(p) * ps;
        }
        CHECK(std::abs(truncated_L(chi0, s, 50) - want0) < 1e-12 * std::abs(want0));
        CHECK(std::abs(truncated_L(chi1, s, 50) - want1) < 1e-12 * std::abs(want1));
    }
    // principal log form agrees
    CHECK(std::exp(truncated_L_log_principal(0.8, 50, 4)) ==
          doctest::Approx(std::abs(truncated_L(chi0, {0.8, 0.0}, 50))).epsilon(1e-12));
    CHECK_THROWS_AS(truncated_L(chi1, cplx(0.0, 1.0), 50), ConfigError);
}

TEST_CASE("psi_smoothed: sandwich between sharp counts, conjugate symmetry")
{
    auto table = SmoothTable::build(40000);
    CutoffSpec spec;
    const double x = 15000, y = 60;
    for (uint64_t q : {4ull, 5ull, 9ull}) {
        auto g = CharacterGroup::make(q);
        const auto smoothed0 = psi_smoothed(table, g->principal(), x, y, spec);
        CHECK(smoothed0.imag() == 0.0);
        CHECK(smoothed0.real() >= double(table.psi_coprime(x / 2, y, q)));
        CHECK(smoothed0.real() <= double(table.psi_coprime(2 * x, y, q)));
        for (const auto& chi : g->enumerate()) {
            const auto v = psi_smoothed(table, chi, x, y, spec);
            const auto vc = psi_smoothed(table, chi.conjugate(), x, y, spec);
            CHECK(std::abs(vc - std::conj(v)) < 1e-9 * (1 + std::abs(v)));
        }
    }
    CHECK_THROWS_AS(psi_smoothed(table, CharacterGroup::make(4)->principal(), 30000, 60, spec),
                    ConfigError);
}

TEST_CASE("contour integral reproduces the smoothed sum")
{
    auto table = SmoothTable::build(12000);
    CutoffSpec spec;
    const double x = 5000, y = 100;
    auto g4 = CharacterGroup::make(4);
    for (const auto& chi : g4->enumerate()) {
        const auto target = psi_smoothed(table, chi, x, y, spec);
        const auto rep = contour_psi(chi, x, y, spec);
        CHECK(std::abs(rep.total - target) <= 1e-3 * (1.0 + std::abs(target)));
        CHECK(rep.alpha == doctest::Approx(solve_alpha(x, y).alpha));
        CHECK(rep.evals > 0);
        // report pieces recombine to the reported total
        const cplx sum = (rep.I_center + rep.I_plus + rep.I_minus) / (2 * 3.14159265358979324);
        CHECK(std::abs(sum - rep.total) < 1e-12 * (1 + std::abs(rep.total)));
    }
}

TEST_CASE("contour: custom truncation height and tail diagnostic")
{
    CutoffSpec spec;
    auto chi = CharacterGroup::make(5)->character({2});
    const auto rep_short = contour_psi(chi, 2000, 50, spec, 60);
    const auto rep_long = contour_psi(chi, 2000, 50, spec, 240);
    CHECK(rep_short.T == 60);
    CHECK(rep_long.split == doctest::Approx(std::pow(50.0 * 5, 0.25)));
    // pushing T out should not move the answer by more than the tail scale
    CHECK(std::abs(rep_short.total - rep_long.total) <
          100 * (rep_short.tail_bound + rep_long.tail_bound) + 1e-9);
}

TEST_CASE("l_ratio_profile: principal ratio is 1 at t = 0 and below 1 beyond")
{
    auto g = CharacterGroup::make(4);
    const double y = 200;
    const auto s = solve_alpha(10000, y);
    const auto rows = l_ratio_profile(g->principal(), y, s.alpha, {0.0, 0.5, 2.0, 10.0});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].second == doctest::Approx(1.0).epsilon(1e-12));
    for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].second <= 1.0 + 1e-12);
}
