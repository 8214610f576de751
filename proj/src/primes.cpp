#include "smoothprog/primes.hpp"
#include "smoothprog/errors.hpp"

#include <numeric>

namespace smoothprog {

std::vector<uint32_t> primes_up_to(uint64_t n)
{
    std::vector<uint32_t> out;
    if (n < 2) return out;
    out.push_back(2);
    if (n < 3) return out;
    // sieve[i] represents 2i+3
    const uint64_t m = (n - 1) / 2;
    std::vector<bool> composite(m, false);
    for (uint64_t i = 0;; ++i) {
        const uint64_t p = 2 * i + 3;
        if (p * p > n) break;
        if (composite[i]) continue;
        for (uint64_t j = (p * p - 3) / 2; j < m; j += p)
            composite[j] = true;
    }
    for (uint64_t i = 0; i < m; ++i)
        if (!composite[i]) out.push_back(static_cast<uint32_t>(2 * i + 3));
    return out;
}

uint64_t largest_prime_factor(uint64_t n)
{
    if (n == 0) throw ConfigError("largest_prime_factor: n must be positive");
    if (n == 1) return 1;
    uint64_t best = 1;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) { best = p; n /= p; }
    }
    return n > 1 ? n : best;
}

std::vector<uint64_t> prime_factors(uint64_t n)
{
    std::vector<uint64_t> out;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

uint64_t euler_phi(uint64_t n)
{
    uint64_t r = n;
    for (uint64_t p : prime_factors(n)) r -= r / p;
    return r;
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m)
{
    if (m == 1) return 0;
    unsigned __int128 acc = 1, b = base % m;
    while (exp) {
        if (exp & 1) acc = acc * b % m;
        b = b * b % m;
        exp >>= 1;
    }
    return static_cast<uint64_t>(acc);
}

uint64_t inv_mod(uint64_t a, uint64_t m)
{
    // extended Euclid on (a mod m, m)
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
    while (newr != 0) {
        const int64_t q = r / newr;
        t -= q * newt; std::swap(t, newt);
        r -= q * newr; std::swap(r, newr);
    }
    if (r != 1) throw ConfigError("inv_mod: arguments not coprime");
    if (t < 0) t += static_cast<int64_t>(m);
    return static_cast<uint64_t>(t);
}

} // namespace smoothprog
