#include <doctest.h>

#include "smoothprog/errors.hpp"
#include "smoothprog/smooth_table.hpp"

#include <cstdio>
#include <filesystem>
#include <numeric>
#include <random>

using namespace smoothprog;

namespace {

// oracle: largest prime factor by naive trial division, no sieve shared
uint64_t lpf_oracle(uint64_t n)
{
    if (n == 1) return 1;
    uint64_t best = 1, m = n;
    for (uint64_t d = 2; d * d <= m; ++d)
        while (m % d == 0) { best = d; m /= d; }
    return m > 1 ? m : best;
}

int64_t psi_oracle(uint64_t x, double y)
{
    int64_t c = 0;
    for (uint64_t n = 1; n <= x; ++n)
        if (static_cast<double>(lpf_oracle(n)) <= y) ++c;
    return c;
}

} // namespace

TEST_CASE("lpf matches trial division up to 20000")
{
    auto t = SmoothTable::build(20000, 1);
    for (uint64_t n = 1; n <= 20000; ++n)
        REQUIRE(t.lpf(n) == lpf_oracle(n));
}

TEST_CASE("lpf independent of segment length and thread count")
{
    auto a = SmoothTable::build(50000, 1, 1 << 22);
    auto b = SmoothTable::build(50000, 4, 1024);
    auto c = SmoothTable::build(50000, 3, 4096);
    for (uint64_t n = 1; n <= 50000; ++n) {
        REQUIRE(a.lpf(n) == b.lpf(n));
        REQUIRE(a.lpf(n) == c.lpf(n));
    }
}

TEST_CASE("psi counts against direct oracle")
{
    auto t = SmoothTable::build(5000);
    CHECK(t.psi(100, 10) == psi_oracle(100, 10));
    CHECK(t.psi(100, 10) == 46);
    CHECK(t.psi(1, 1) == 1);          // n = 1 counted, P(1) = 1
    CHECK(t.psi(10, 0.5) == 0);       // y below 1 matches nothing
    CHECK(t.psi(0.5, 100) == 0);
    CHECK(t.psi(5000, 5000) == 5000);
    std::mt19937_64 rng(20240817);
    for (int i = 0; i < 25; ++i) {
        const uint64_t x = rng() % 3000 + 1;
        const double y = static_cast<double>(rng() % 200 + 1);
        CHECK(t.psi(static_cast<double>(x), y) == psi_oracle(x, y));
    }
}

TEST_CASE("Buchstab identity psi(x,y) = psi(x,p-) + psi(x/p,p) at primes")
{
    // recurrence over the largest prime in (y', y]: every n counted by
    // psi(x, p) but not psi(x, p-) has P(n) = p, and n/p is p-smooth
    auto t = SmoothTable::build(30000);
    const double x = 30000;
    const std::vector<int> ps = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (int p : ps) {
        const int64_t lhs = t.psi(x, p);
        const int64_t rhs = t.psi(x, p - 0.5) + t.psi(std::floor(x / p), p);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("psi_coprime and psi_progression decompositions")
{
    auto t = SmoothTable::build(20000);
    const double x = 18000, y = 37;
    for (uint64_t q : {1ull, 2ull, 4ull, 7ull, 12ull, 30ull}) {
        int64_t sum = 0, coprime_sum = 0;
        for (uint64_t a = 0; a < q; ++a) {
            const int64_t c = t.psi_progression(x, y, q, a);
            sum += c;
            if (std::gcd(a, q) == 1) coprime_sum += c;
        }
        CHECK(sum == t.psi(x, y));
        CHECK(coprime_sum == t.psi_coprime(x, y, q));
        const auto counts = t.class_counts(x, y, q);
        REQUIRE(counts.size() == q);
        for (uint64_t a = 0; a < q; ++a)
            CHECK(counts[a] == t.psi_progression(x, y, q, a));
    }
    // progression accepts residues given mod q or shifted by q
    CHECK(t.psi_progression(x, y, 12, 5) == t.psi_progression(x, y, 12, 17));
}

TEST_CASE("dump and load round-trip, corrupt files rejected")
{
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "smoothprog_table_test";
    fs::create_directories(dir);
    const auto path = (dir / "t.smtb").string();

    auto t = SmoothTable::build(12345);
    t.dump(path);
    auto u = SmoothTable::load(path);
    REQUIRE(u.x_max() == t.x_max());
    for (uint64_t n = 1; n <= 12345; ++n) REQUIRE(u.lpf(n) == t.lpf(n));

    // wrong magic
    {
        std::FILE* f = std::fopen(path.c_str(), "r+b");
        REQUIRE(f != nullptr);
        std::fputs("XXTB1", f);
        std::fclose(f);
        CHECK_THROWS_AS(SmoothTable::load(path), ConfigError);
    }
    // truncated payload
    t.dump(path);
    fs::resize_file(path, fs::file_size(path) - 8);
    CHECK_THROWS_AS(SmoothTable::load(path), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("capacity and domain errors")
{
    CHECK_THROWS_AS(SmoothTable::build(0), ConfigError);
    CHECK_THROWS_AS(SmoothTable::build(uint64_t(1) << 32), CapacityError);
    auto t = SmoothTable::build(100);
    CHECK_THROWS_AS(t.lpf(0), ConfigError);
    CHECK_THROWS_AS(t.lpf(101), ConfigError);
    CHECK_THROWS_AS(t.psi(101, 10), ConfigError);
    CHECK_THROWS_AS(t.psi_coprime(50, 10, 0), ConfigError);
}
