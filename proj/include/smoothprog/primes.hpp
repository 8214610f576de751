#pragma once
#include <cstdint>
#include <vector>

namespace smoothprog {

// Primes p <= n, ascending. Plain odd-only Eratosthenes; n up to ~1e9 is fine
// (the callers below stay far under that).
std::vector<uint32_t> primes_up_to(uint64_t n);

// Largest prime factor by trial division; P(1) = 1 by convention.
uint64_t largest_prime_factor(uint64_t n);

// Distinct prime factors of n, ascending.
std::vector<uint64_t> prime_factors(uint64_t n);

// Euler phi by trial-division factorization.
uint64_t euler_phi(uint64_t n);

// (base^exp) mod m, m < 2^63.
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Inverse of a mod m; requires gcd(a, m) = 1.
uint64_t inv_mod(uint64_t a, uint64_t m);

} // namespace smoothprog
