#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace smoothprog {

// Table of largest prime factors for n = 1..x_max, with the counting
// functions built on top of it:
//
//   psi(x, y)                  #{n <= x : P(n) <= y}
//   psi_coprime(x, y, q)       additionally gcd(n, q) = 1
//   psi_progression(x, y, q, a) additionally n = a (mod q)
//
// P(1) = 1, so n = 1 is counted whenever y >= 1.
//
// Entries are 32-bit; x_max must stay below 2^32 (CapacityError beyond).
// Memory is 4*(x_max+1) bytes. The build is a segmented sieve: within a
// segment each base prime p <= sqrt(x_max) overwrites lpf with p in
// ascending order (so the last write is the largest prime <= sqrt) and
// divides p out of a residual copy; whatever residual exceeds 1 afterwards
// is a prime > sqrt(x_max) and is the true largest prime factor.
class SmoothTable {
public:
    SmoothTable() = default;

    // threads = 0 means hardware concurrency; segment_len in entries.
    static SmoothTable build(uint64_t x_max, unsigned threads = 0,
                             uint64_t segment_len = uint64_t(1) << 22);

    uint64_t x_max() const { return x_max_; }
    uint32_t lpf(uint64_t n) const;

    int64_t psi(double x, double y) const;
    int64_t psi_coprime(double x, double y, uint64_t q) const;
    int64_t psi_progression(double x, double y, uint64_t q, uint64_t a) const;

    // counts[r] = #{n <= x : P(n) <= y, n = r (mod q)}, r = 0..q-1
    std::vector<int64_t> class_counts(double x, double y, uint64_t q) const;

    // Binary format: "SMTB1", x_max as 8-byte LE, then lpf(1..x_max) as
    // 4-byte LE. Load rejects wrong magic or truncated payload.
    void dump(const std::string& path) const;
    static SmoothTable load(const std::string& path);

private:
    uint64_t x_max_ = 0;
    std::vector<uint32_t> lpf_;    // index n, [0] unused

    // bound common to all three counters: largest valid n for (x, y)
    uint64_t count_limit(double x, double y) const;
};

} // namespace smoothprog
