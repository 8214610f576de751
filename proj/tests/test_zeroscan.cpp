#include <doctest.h>

#include "smoothprog/characters.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/lfunc.hpp"
#include "smoothprog/zeroscan.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

using namespace smoothprog;
using cplx = std::complex<double>;

namespace {

// independent locator: bracket the minimum of |L(1/2 + it)| on a grid, then
// ternary-search it down to 1e-9; no winding machinery involved
double line_minimum(const std::function<double(double)>& absL, double t_lo, double t_hi)
{
    const int n = 400;
    int best = 1;
    double bv = 1e300;
    for (int i = 0; i <= n; ++i) {
        const double v = absL(t_lo + (t_hi - t_lo) * i / n);
        if (v < bv) {
            bv = v;
            best = i;
        }
    }
    double a = t_lo + (t_hi - t_lo) * std::max(0, best - 1) / n;
    double b = t_lo + (t_hi - t_lo) * std::min(n, best + 1) / n;
    while (b - a > 1e-9) {
        const double m1 = a + (b - a) / 3, m2 = b - (b - a) / 3;
        if (absL(m1) < absL(m2))
            b = m2;
        else
            a = m1;
    }
    return 0.5 * (a + b);
}

} // namespace

TEST_CASE("scanner finds the first zeta zero with a certified box")
{
    auto g = CharacterGroup::make(1);
    LEvaluator ev(g);
    const auto chi = g->principal();

    const double oracle = line_minimum(
        [&](double t) { return std::abs(riemann_zeta({0.5, t})); }, 13.0, 15.0);
    CHECK(std::abs(oracle - 14.13472514173469) < 1e-6);

    const auto rep = scan_zeros(ev, chi, {0.05, 0.98, 2.0, 20.0}, 0.5);
    REQUIRE(rep.zeros.size() == 1);
    CHECK(rep.rect_winding == 1);
    CHECK(rep.coverage_ok);
    const auto& z = rep.zeros[0];
    CHECK(std::abs(z.gamma - oracle) < 1e-6);
    CHECK(std::abs(z.beta - 0.5) < 1e-6);
    CHECK(z.winding_count == 1);
    CHECK(!z.is_real);
    CHECK(z.certified_box.diam() <= 1e-6);
    CHECK(z.certified_box.contains({z.beta, z.gamma}));
}

TEST_CASE("two zeta zeros in one rectangle, windings partition")
{
    auto g = CharacterGroup::make(1);
    LEvaluator ev(g);
    const auto rep = scan_zeros(ev, g->principal(), {0.05, 0.98, 10.0, 22.0}, 0.5);
    REQUIRE(rep.zeros.size() == 2);
    CHECK(rep.rect_winding == 2);
    CHECK(rep.coverage_ok);
    CHECK(std::abs(rep.zeros[0].gamma - 14.13472514173469) < 1e-5);
    CHECK(std::abs(rep.zeros[1].gamma - 21.022039638771555) < 1e-5);
    for (const auto& z : rep.zeros) {
        CHECK(z.winding_count == 1);
        CHECK(std::abs(z.beta - 0.5) < 1e-6);
    }
}

TEST_CASE("mod-4 zeros match the line-minimum oracle")
{
    auto g = CharacterGroup::make(4);
    LEvaluator ev(g);
    const auto chi = g->enumerate()[1];
    REQUIRE(!chi.is_principal());

    const double expect[3] = {6.020948904697596, 10.243770304166550, 12.988098012312422};
    const auto rep = scan_zeros(ev, chi, {0.05, 0.98, 0.5, 13.2}, 0.5);
    REQUIRE(rep.zeros.size() == 3);
    CHECK(rep.rect_winding == 3);
    CHECK(rep.coverage_ok);
    for (int i = 0; i < 3; ++i) {
        const double oracle = line_minimum(
            [&](double t) { return std::abs(ev.value(chi, {0.5, t})); }, expect[i] - 0.4,
            expect[i] + 0.4);
        CHECK(std::abs(oracle - expect[i]) < 1e-6);
        CHECK(std::abs(rep.zeros[i].gamma - oracle) < 1e-5);
        CHECK(std::abs(rep.zeros[i].beta - 0.5) < 1e-6);
    }
}

TEST_CASE("no zeros to the right of the convergence line")
{
    auto g1 = CharacterGroup::make(1);
    LEvaluator ev1(g1);
    const auto r1 = scan_zeros(ev1, g1->principal(), {1.05, 2.0, 0.5, 25.0}, 2.0);
    CHECK(r1.zeros.empty());
    CHECK(r1.rect_winding == 0);
    CHECK(r1.coverage_ok);

    auto g5 = CharacterGroup::make(5);
    LEvaluator ev5(g5);
    for (const auto& chi : g5->enumerate()) {
        const auto r = scan_zeros(ev5, chi, {1.05, 2.0, -8.0, 8.0}, 2.0);
        CHECK(r.zeros.empty());
        CHECK(r.coverage_ok);
    }
}

TEST_CASE("conjugate characters mirror zeros across the real axis")
{
    auto g = CharacterGroup::make(5);
    LEvaluator ev(g);
    const auto chi = g->character({1});
    REQUIRE(chi.order() == 4);
    const auto up = scan_zeros(ev, chi, {0.05, 0.98, 2.0, 12.0}, 0.5);
    const auto dn = scan_zeros(ev, chi.conjugate(), {0.05, 0.98, -12.0, -2.0}, 0.5);
    CHECK(up.coverage_ok);
    CHECK(dn.coverage_ok);
    REQUIRE(up.zeros.size() == dn.zeros.size());
    REQUIRE(!up.zeros.empty());
    const size_t n = up.zeros.size();
    for (size_t i = 0; i < n; ++i) {
        CHECK(std::abs(up.zeros[i].gamma + dn.zeros[n - 1 - i].gamma) < 1e-6);
        CHECK(std::abs(up.zeros[i].beta - dn.zeros[n - 1 - i].beta) < 1e-6);
    }
}

TEST_CASE("scan rejects bad rectangles and the principal pole")
{
    auto g = CharacterGroup::make(4);
    LEvaluator ev(g);
    CHECK_THROWS_AS(scan_zeros(ev, g->principal(), {0.5, 1.5, -0.5, 0.5}, 0.5), ConfigError);
    CHECK_THROWS_AS(scan_zeros(ev, g->principal(), {0.9, 0.2, 1.0, 2.0}, 0.5), ConfigError);
    CHECK_THROWS_AS(scan_zeros(ev, g->enumerate()[1], {0.2, 0.9, 1.0, 2.0}, 0.0), ConfigError);
}

TEST_CASE("repeat scans are bitwise deterministic")
{
    auto g = CharacterGroup::make(4);
    LEvaluator ev(g);
    const auto chi = g->enumerate()[1];
    const auto a = scan_zeros(ev, chi, {0.05, 0.98, 4.0, 8.0}, 0.5);
    const auto b = scan_zeros(ev, chi, {0.05, 0.98, 4.0, 8.0}, 0.5);
    REQUIRE(a.zeros.size() == b.zeros.size());
    CHECK(a.l_evals == b.l_evals);
    for (size_t i = 0; i < a.zeros.size(); ++i) {
        CHECK(a.zeros[i].beta == b.zeros[i].beta);
        CHECK(a.zeros[i].gamma == b.zeros[i].gamma);
        CHECK(a.zeros[i].certified_box.re_lo == b.zeros[i].certified_box.re_lo);
    }
}
