#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "smoothprog/characters.hpp"
#include "smoothprog/charsum.hpp"
#include "smoothprog/errors.hpp"

using namespace smoothprog;

namespace {

DirichletCharacter nonprincipal(uint64_t q)
{
    auto group = CharacterGroup::make(q);
    for (const auto& chi : group->enumerate())
        if (!chi.is_principal()) return chi;
    throw std::logic_error("no nonprincipal character");
}

} // namespace

TEST_CASE("character sums match hand arithmetic")
{
    const DirichletCharacter chi4 = nonprincipal(4);

    // odd n <= 10: chi4 = +1 -1 +1 -1 +1, even n skipped
    const std::complex<double> ten = char_sum({chi4, 0, 10, 0.0, 0.0});
    CHECK(ten.real() == 1.0);
    CHECK(ten.imag() == 0.0);

    // sigma = 1 over (0,3]: 1/1 - 1/3
    const std::complex<double> third = char_sum({chi4, 0, 3, 1.0, 0.0});
    CHECK(third.real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(third.imag() == 0.0);

    // t = 1 over (0,3]: 1 - exp(-i log 3)
    const std::complex<double> osc = char_sum({chi4, 0, 3, 0.0, 1.0});
    CHECK(osc.real() == doctest::Approx(1.0 - std::cos(std::log(3.0))).epsilon(1e-15));
    CHECK(osc.imag() == doctest::Approx(std::sin(std::log(3.0))).epsilon(1e-15));

    // nonprincipal character over full periods cancels exactly
    const DirichletCharacter chi7 = nonprincipal(7);
    CHECK(std::abs(char_sum({chi7, 0, 7, 0.0, 0.0})) < 1e-12);
    CHECK(std::abs(char_sum({chi7, 0, 70, 0.0, 0.0})) < 1e-12);
}

TEST_CASE("character sums split, conjugate, and stay bounded")
{
    const DirichletCharacter chi7 = nonprincipal(7);

    // additivity over a split point that does not land on a block boundary
    const std::complex<double> whole = char_sum({chi7, 0, 150000, 0.1, 3.0});
    const std::complex<double> left = char_sum({chi7, 0, 70000, 0.1, 3.0});
    const std::complex<double> right = char_sum({chi7, 70000, 150000, 0.1, 3.0});
    CHECK(std::abs(whole - left - right) < 1e-10);

    // conj(chi), -t mirrors the sum
    auto g5 = CharacterGroup::make(5);
    DirichletCharacter chi5 = g5->principal();
    for (const auto& chi : g5->enumerate())
        if (chi.order() == 4) chi5 = chi;
    REQUIRE(chi5.order() == 4);
    const std::complex<double> plus = char_sum({chi5, 0, 1000, 0.3, 2.5});
    const std::complex<double> minus = char_sum({chi5.conjugate(), 0, 1000, 0.3, -2.5});
    CHECK(std::abs(minus - std::conj(plus)) < 1e-12);

    // at sigma = 0 every retained term has modulus 1
    uint64_t coprime = 0;
    for (uint64_t n = 1001; n <= 3000; ++n)
        if (std::gcd(n, uint64_t{7}) == 1) ++coprime;
    CHECK(coprime == 1714);
    CHECK(std::abs(char_sum({chi7, 1000, 3000, 0.0, 0.7})) <= coprime + 1e-12);

    CHECK_THROWS_AS(char_sum({chi7, 5, 5, 0.0, 0.0}), ConfigError);
    CHECK_THROWS_AS(char_sum({chi7, 0, (1ull << 40) + 1, 0.0, 0.0}), CapacityError);
}

TEST_CASE("block reduction is identical for any thread count")
{
    const DirichletCharacter chi7 = nonprincipal(7);
    const SumQuery query{chi7, 0, 200000, 0.2, 5.0};  // four blocks

    const char* saved = std::getenv("SMOOTHPROG_THREADS");
    const std::string restore = saved ? saved : "";

    setenv("SMOOTHPROG_THREADS", "1", 1);
    const std::complex<double> serial = char_sum(query);
    for (const char* n : {"2", "3", "7"}) {
        setenv("SMOOTHPROG_THREADS", n, 1);
        const std::complex<double> parallel = char_sum(query);
        CHECK(parallel.real() == serial.real());
        CHECK(parallel.imag() == serial.imag());
    }

    if (saved) setenv("SMOOTHPROG_THREADS", restore.c_str(), 1);
    else unsetenv("SMOOTHPROG_THREADS");
}

TEST_CASE("threshold package reproduces frozen hand values")
{
    // q = 3^20: P(q)^3 = 27, exp(log q / log log q) = exp(21.9722../3.0897..)
    const ThresholdParams deep = compute_thresholds(3486784401ull, 2.0, 1.0, 1.0, 3);
    CHECK(deep.q_flat == doctest::Approx(1252.697343235282).epsilon(1e-12));
    CHECK(deep.ell == doctest::Approx(23.070858062030304).epsilon(1e-12));
    CHECK(deep.eta == doctest::Approx(0.0760191517179019).epsilon(1e-12));
    CHECK(deep.xi == doctest::Approx(1.0 / 6.0));
    CHECK(!deep.scope_vacuous);

    const ThresholdParams mid = compute_thresholds(59049, 2.0, 1.0, 1.0, 2);
    CHECK(mid.q_flat == doctest::Approx(106.903499992262).epsilon(1e-10));
    CHECK(!mid.scope_vacuous);

    // small nu pushes 1/(3 nu) above the cap
    CHECK(compute_thresholds(59049, 0.25, 1.0, 1.0, 2).xi == 1.0);

    // the reference exponent overflows P(q)^e0 and empties the scope
    const ThresholdParams ref = compute_thresholds(59049, 2.0, 1.0, 1.0, 1000);
    CHECK(ref.scope_vacuous);
    CHECK(std::isinf(ref.q_flat));

    CHECK(compute_thresholds(59049, 2.0, 1.0, 2.0, 1).q_flat >
          compute_thresholds(59049, 2.0, 1.0, 1.0, 1).q_flat);

    CHECK_THROWS_AS(compute_thresholds(15, 2.0, 1.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(compute_thresholds(59049, 0.0, 1.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(compute_thresholds(59049, 2.0, -1.0, 1.0, 1), ConfigError);
    CHECK_THROWS_AS(compute_thresholds(59049, 2.0, 1.0, 0.0, 1), ConfigError);
    CHECK_THROWS_AS(compute_thresholds(59049, 2.0, 1.0, 1.0, 0), ConfigError);
}

TEST_CASE("interval ratios respect the stated scope")
{
    auto g = CharacterGroup::make(59049);
    const DirichletCharacter quad = g->character({g->component_orders()[0] / 2});
    REQUIRE(quad.order() == 2);
    const ThresholdParams params = compute_thresholds(59049, 2.0, 1.0, 1.0, 2);

    // q_flat = 106.9 < N = 200 <= q^2 and 400 <= 2*200
    const ChangRatioReport in = chang_ratio({quad, 200, 400, 0.0, 0.0}, params);
    CHECK(in.in_scope);
    CHECK(in.bound == doctest::Approx(136.276075863229).epsilon(1e-10));
    CHECK(in.ratio == doctest::Approx(in.abs_sum / in.bound));
    CHECK(in.ratio < 1.0);

    // N = 50 sits below q_flat
    CHECK(!chang_ratio({quad, 50, 100, 0.0, 0.0}, params).in_scope);
    // 500 > 2 * 200 breaks the dyadic-interval requirement
    CHECK(!chang_ratio({quad, 200, 500, 0.0, 0.0}, params).in_scope);

    // a full period cancels exactly; the reference curve stays positive
    const ChangRatioReport period = chang_ratio({quad, 0, 59049, 0.0, 0.0}, params);
    CHECK(period.abs_sum < 1e-12);
    CHECK(period.bound > 0.0);
    CHECK(!period.in_scope);

    CHECK_THROWS_AS(chang_ratio({nonprincipal(4), 10, 20, 0.0, 0.0}, params), ConfigError);
}

TEST_CASE("prefix sums stay below the classical envelope")
{
    // max_M |sum_{n <= M} chi(n)| <= sqrt(q) log q for primitive nonprincipal chi
    double worst = 0;
    int checked = 0;
    for (uint64_t q = 3; q <= 100; ++q) {
        auto group = CharacterGroup::make(q);
        const double envelope = std::sqrt(double(q)) * std::log(double(q));
        for (const auto& chi : group->enumerate()) {
            if (chi.is_principal() || !chi.is_primitive()) continue;
            double peak = 0;
            for (uint64_t m = 1; m <= q; ++m)
                peak = std::max(peak, std::abs(char_sum({chi, 0, m, 0.0, 0.0})));
            worst = std::max(worst, peak / envelope);
            ++checked;
        }
    }
    CHECK(checked > 1000);
    CHECK(worst <= 1.0);
}

TEST_CASE("l bounds hold on and off the admissible region")
{
    auto g17 = CharacterGroup::make(17);
    const DirichletCharacter quad = g17->character({8});
    REQUIRE(quad.is_primitive());
    const ThresholdParams params = compute_thresholds(17, 2.0, 1.0, 1.0, 1);

    // eta(t = 0) = 0.2931, so sigma > 0.7069 is in region up to |t| <= 3q
    const std::vector<std::complex<double>> grid = {
        {2.0, 0.0}, {1.2, 0.5}, {0.6, 0.0}, {1.5, 60.0}};
    const LBoundReport rep = l_bound_compare(quad, grid, params);
    REQUIRE(rep.points.size() == 4);
    CHECK(rep.points[0].in_region);
    CHECK(rep.points[1].in_region);
    CHECK(!rep.points[2].in_region);   // below 1 - eta
    CHECK(!rep.points[3].in_region);   // |t| above 3 q^tau = 51
    CHECK(rep.points[0].eta == doctest::Approx(0.293053374960).epsilon(1e-10));
    CHECK(rep.points[0].bound == doctest::Approx(9.438235724782).epsilon(1e-10));
    CHECK(rep.points[0].abs_l > 0.0);
    CHECK(rep.all_within);
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.max_ratio < 1.0);

    CHECK_THROWS_AS(l_bound_compare(g17->principal(), grid, params), ConfigError);
    const ThresholdParams p25 = compute_thresholds(25, 2.0, 1.0, 1.0, 1);
    auto g25 = CharacterGroup::make(25);
    const DirichletCharacter induced = g25->character({5});
    REQUIRE(!induced.is_primitive());
    CHECK_THROWS_AS(l_bound_compare(induced, grid, p25), ConfigError);
    CHECK_THROWS_AS(l_bound_compare(nonprincipal(4), grid, params), ConfigError);
    // grid points must stay inside the Hurwitz domain
    CHECK_THROWS_AS(l_bound_compare(quad, {{-1.0, 0.0}}, params), ConfigError);
}

TEST_CASE("block envelope falls then rises")
{
    // b(e) = 4 e^{eta} e^{-xi}
    const BProfile spot = b_profile({std::exp(1.0)}, 0.25, 0.5);
    CHECK(spot.b[0] == doctest::Approx(4.0 * std::exp(-0.25)).epsilon(1e-12));

    // stationary point of log b at log N = xi^2 / (4 eta^2) = 0.64 / 0.04
    std::vector<double> dyadic;
    for (int k = 1; k <= 40; ++k) dyadic.push_back(std::ldexp(1.0, k));
    const BProfile prof = b_profile(dyadic, 0.1, 0.8);
    CHECK(prof.log_n_stationary == doctest::Approx(16.0));
    CHECK(prof.decreasing_before_stationary);
    // n = 2^23 is the last grid point before the minimum; 2^31 sits well after
    CHECK(prof.b[21] > prof.b[22]);
    CHECK(prof.b[30] > prof.b[24]);

    // a grid walking backwards down the falling branch breaks the check
    CHECK(!b_profile({10.0, 5.0}, 0.1, 0.8).decreasing_before_stationary);

    CHECK_THROWS_AS(b_profile({2.0}, 0.0, 0.8), ConfigError);
    CHECK_THROWS_AS(b_profile({2.0}, 0.1, -0.8), ConfigError);
    CHECK_THROWS_AS(b_profile({0.5}, 0.1, 0.8), ConfigError);
}
