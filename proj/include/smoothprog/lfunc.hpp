#pragma once
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "smoothprog/characters.hpp"

namespace smoothprog {

// Hurwitz zeta with the pole split off:
//   R(s, w) = zeta(s, w) - 1/(s - 1),
// which is finite at s = 1 (where it equals -digamma(w)). Euler-Maclaurin
// with 8 Bernoulli correction terms; the cut length starts at
// max(20, ceil|s| + 10) and doubles until the first omitted term clears the
// tolerance. Domain: w > 0, -0.5 < Re s <= 100, |Im s| <= 1000.
std::complex<double> hurwitz_zeta_regular(std::complex<double> s, double w);

// zeta(s, w); rejects s = 1
std::complex<double> hurwitz_zeta(std::complex<double> s, double w);

// zeta(s) = zeta(s, 1); rejects s = 1
std::complex<double> riemann_zeta(std::complex<double> s);

// Dirichlet L-values over one modulus, through
//   L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q).
// For nonprincipal chi the chi(a) sum to zero, so replacing zeta by R drops
// the poles exactly and s = 1 is an ordinary point. Principal characters are
// routed through zeta(s) times the finite Euler product and keep the pole.
//
// A point cache keyed on s holds the R(s, a/q) vector for reuse when many
// characters are evaluated along shared contours; hits are bitwise identical
// to misses, so results do not depend on cache state.
class LEvaluator {
public:
    explicit LEvaluator(std::shared_ptr<const CharacterGroup> group);

    const CharacterGroup& group() const { return *group_; }
    uint64_t modulus() const { return group_->modulus(); }

    std::complex<double> value(const DirichletCharacter& chi, std::complex<double> s) const;

    // every character of chis at one s, from a single Hurwitz pass
    std::vector<std::complex<double>> values(const std::vector<DirichletCharacter>& chis,
                                             std::complex<double> s) const;

    // product route: the inducing primitive character times the Euler factors
    // 1 - primitive_chi(p) p^{-s} at primes p | q away from the conductor
    std::complex<double> value_induced(const DirichletCharacter& chi,
                                       std::complex<double> s) const;

private:
    using Row = std::shared_ptr<const std::vector<std::complex<double>>>;
    Row hurwitz_row(std::complex<double> s) const;

    std::shared_ptr<const CharacterGroup> group_;
    std::vector<uint64_t> units_;  // residues coprime to q, ascending

    // rows are shared_ptr so rehashing never invalidates a row in use
    struct CacheEntry {
        double re = 0, im = 0;
        Row row;
    };
    mutable std::mutex cache_mu_;
    mutable std::unordered_map<uint64_t, CacheEntry> cache_;
};

} // namespace smoothprog
