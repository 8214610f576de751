#include "smoothprog/lfunc.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numeric>

#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"

namespace smoothprog {

namespace {

using cplx = std::complex<double>;

// B_{2k} / (2k)! for k = 1..9; the k = 9 entry only drives the first-omitted
// error estimate
const std::array<double, 10> kBernFact = [] {
    const long double b2k[10] = {0.0L,           1.0L / 6,    -1.0L / 30,
                                 1.0L / 42,      -1.0L / 30,  5.0L / 66,
                                 -691.0L / 2730, 7.0L / 6,    -3617.0L / 510,
                                 43867.0L / 798};
    std::array<double, 10> out{};
    long double fact = 1.0L;
    for (int k = 1; k <= 9; ++k) {
        fact *= (2 * k - 1) * (2 * k);
        out[k] = static_cast<double>(b2k[k] / fact);
    }
    return out;
}();

// (e^z - 1) / z, stable near z = 0
cplx em1_over_z(cplx z)
{
    if (std::abs(z) < 1e-4)
        return 1.0 + z * (0.5 + z * (1.0 / 6 + z * (1.0 / 24 + z / 120.0)));
    return (std::exp(z) - 1.0) / z;
}

uint64_t key_of(cplx s)
{
    const uint64_t a = std::bit_cast<uint64_t>(s.real());
    const uint64_t b = std::bit_cast<uint64_t>(s.imag());
    return (a * 0x9E3779B97F4A7C15ull) ^ (b << 32 | b >> 32);
}

} // namespace

std::complex<double> hurwitz_zeta_regular(std::complex<double> s, double w)
{
    if (!(w > 0)) throw ConfigError("hurwitz_zeta_regular: need w > 0");
    if (!(s.real() > -0.5 && s.real() <= 100.0))
        throw ConfigError("hurwitz_zeta_regular: Re s in (-0.5, 100]");
    if (!(std::abs(s.imag()) <= 1000.0))
        throw ConfigError("hurwitz_zeta_regular: |Im s| <= 1000");

    const double tol = 1e-13 * std::max(1.0, std::pow(w, -s.real()));
    int N = std::max(20, static_cast<int>(std::ceil(std::abs(s))) + 10);
    cplx head = 0.0;
    int n0 = 0;
    for (;;) {
        for (int n = n0; n < N; ++n) head += std::exp(-s * std::log(n + w));

        const double logNw = std::log(N + w);
        const cplx pw = std::exp(-s * logNw);  // (N+w)^{-s}
        // [(N+w)^{1-s} - 1] / (s - 1) = -log(N+w) * (e^z - 1)/z, z = (1-s) log(N+w)
        cplx tail = -logNw * em1_over_z((1.0 - s) * logNw) + 0.5 * pw;

        cplx rising = s;             // s(s+1)...(s+2k-2), here k = 1
        cplx p = pw / (N + w);       // (N+w)^{-s-2k+1}
        const double inv2 = 1.0 / ((N + w) * (N + w));
        for (int k = 1; k <= 8; ++k) {
            tail += kBernFact[k] * rising * p;
            rising *= (s + double(2 * k - 1)) * (s + double(2 * k));
            p *= inv2;
        }
        if (std::abs(kBernFact[9]) * std::abs(rising) * std::abs(p) <= tol)
            return head + tail;

        n0 = N;
        N *= 2;
        if (N > (1 << 21))
            throw NumericalError("hurwitz_zeta_regular: Euler-Maclaurin tail did not converge");
    }
}

std::complex<double> hurwitz_zeta(std::complex<double> s, double w)
{
    if (std::abs(s - 1.0) < 1e-14) throw ConfigError("hurwitz_zeta: pole at s = 1");
    return hurwitz_zeta_regular(s, w) + 1.0 / (s - 1.0);
}

std::complex<double> riemann_zeta(std::complex<double> s)
{
    return hurwitz_zeta(s, 1.0);
}

LEvaluator::LEvaluator(std::shared_ptr<const CharacterGroup> group)
    : group_(std::move(group))
{
    if (!group_) throw ConfigError("LEvaluator: null group");
    const uint64_t q = group_->modulus();
    if (q > 10000) throw CapacityError("LEvaluator: modulus above 10^4");
    for (uint64_t a = 1; a <= q; ++a)
        if (std::gcd(a, q) == 1) units_.push_back(a);
    if (q == 1) units_ = {1};
}

LEvaluator::Row LEvaluator::hurwitz_row(std::complex<double> s) const
{
    const uint64_t key = key_of(s);
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        auto it = cache_.find(key);
        if (it != cache_.end() && it->second.re == s.real() && it->second.im == s.imag())
            return it->second.row;
    }
    auto row = std::make_shared<std::vector<cplx>>();
    row->reserve(units_.size());
    const double q = double(group_->modulus());
    for (uint64_t a : units_) row->push_back(hurwitz_zeta_regular(s, double(a) / q));
    {
        std::lock_guard<std::mutex> lk(cache_mu_);
        if (cache_.size() >= 500000) cache_.clear();
        cache_[key] = CacheEntry{s.real(), s.imag(), row};
    }
    return row;
}

std::complex<double> LEvaluator::value(const DirichletCharacter& chi,
                                       std::complex<double> s) const
{
    if (chi.modulus() != group_->modulus())
        throw ConfigError("LEvaluator::value: character has a different modulus");
    if (chi.is_principal()) {
        if (std::abs(s - 1.0) < 1e-12)
            throw ConfigError("LEvaluator::value: principal character has a pole at s = 1");
        cplx out = riemann_zeta(s);
        for (uint64_t p : prime_factors(group_->modulus()))
            out *= 1.0 - std::exp(-s * std::log(double(p)));
        return out;
    }
    const Row row = hurwitz_row(s);
    cplx sum = 0.0;
    for (size_t i = 0; i < units_.size(); ++i) sum += chi(units_[i]) * (*row)[i];
    return std::exp(-s * std::log(double(group_->modulus()))) * sum;
}

std::vector<std::complex<double>> LEvaluator::values(
    const std::vector<DirichletCharacter>& chis, std::complex<double> s) const
{
    std::vector<cplx> out;
    out.reserve(chis.size());
    for (const auto& chi : chis) out.push_back(value(chi, s));
    return out;
}

std::complex<double> LEvaluator::value_induced(const DirichletCharacter& chi,
                                               std::complex<double> s) const
{
    if (chi.modulus() != group_->modulus())
        throw ConfigError("LEvaluator::value_induced: character has a different modulus");
    const DirichletCharacter prim = chi.primitive();
    cplx out;
    if (prim.modulus() == group_->modulus()) {
        out = value(prim, s);
    } else {
        LEvaluator sub(prim.group().shared_from_this());
        out = sub.value(prim, s);
    }
    for (uint64_t p : prime_factors(group_->modulus())) {
        if (prim.modulus() % p == 0) continue;
        out *= 1.0 - prim(p) * std::exp(-s * std::log(double(p)));
    }
    return out;
}

} // namespace smoothprog
