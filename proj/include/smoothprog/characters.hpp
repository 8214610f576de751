#pragma once
#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "smoothprog/smooth_table.hpp"

namespace smoothprog {

// Dirichlet characters mod q, represented exactly.
//
// (Z/qZ)* is decomposed through CRT into cyclic components, ordered with the
// 2-part first and odd prime powers ascending:
//   2^e: e <= 1 contributes nothing; e = 2 one component of order 2
//        (generator -1); e >= 3 two components of orders 2 and 2^{e-2}
//        (generators -1 and 5).
//   p^e (p odd): one component of order phi(p^e), generator = smallest
//        primitive root mod p^e.
// A character is an exponent vector (e_1, .., e_k), one entry per component,
// 0 <= e_j < d_j. Its value at n is the lambda(q)-th root of unity with
// rotation count
//   r(n) = sum_j e_j * t_j(n) * (lambda / d_j)  (mod lambda),
// where t_j(n) is the discrete log of n in component j. All rotation
// arithmetic is integer, so identities between characters hold exactly; a
// complex value is produced only at the final exp(2*pi*i*r/lambda).
//
// Discrete logs use dense tables for factors up to 2^24 and Pohlig-Hellman
// (odd p) or 2-adic bit lifting above that, so moduli like 3^20 work without
// O(q) memory.
class CharacterGroup;

class DirichletCharacter {
public:
    uint64_t modulus() const;
    uint64_t order() const;
    bool is_principal() const;
    bool is_real() const { return order() <= 2; }

    const std::vector<uint64_t>& exponents() const { return exps_; }
    const CharacterGroup& group() const { return *group_; }

    // rotation count in [0, lambda), or -1 when gcd(n, q) > 1
    int64_t rotation(uint64_t n) const;
    std::complex<double> operator()(uint64_t n) const;

    DirichletCharacter conjugate() const;
    DirichletCharacter times(const DirichletCharacter& other) const;

    // "q:e1,e2,..."; q = 1 and q = 2 print as "1:" / "2:"
    std::string label() const;

    uint64_t conductor() const;
    bool is_primitive() const;
    // the primitive character mod conductor() inducing this one
    DirichletCharacter primitive() const;

private:
    friend class CharacterGroup;
    DirichletCharacter(std::shared_ptr<const CharacterGroup> g, std::vector<uint64_t> e)
        : group_(std::move(g)), exps_(std::move(e)) {}
    std::shared_ptr<const CharacterGroup> group_;
    std::vector<uint64_t> exps_;
};

class CharacterGroup : public std::enable_shared_from_this<CharacterGroup> {
public:
    static std::shared_ptr<const CharacterGroup> make(uint64_t q);

    uint64_t modulus() const { return q_; }
    uint64_t phi() const { return phi_; }
    uint64_t lambda() const { return lambda_; }
    size_t num_components() const { return comp_order_.size(); }
    const std::vector<uint64_t>& component_orders() const { return comp_order_; }

    DirichletCharacter character(std::vector<uint64_t> exponents) const;
    DirichletCharacter principal() const;

    // all phi(q) characters; principal first, exponent vectors in
    // lexicographic order with the last component varying fastest
    std::vector<DirichletCharacter> enumerate() const;

    // discrete-log vector of n, one entry per component; requires gcd(n,q)=1
    bool dlog_vector(uint64_t n, std::vector<uint64_t>& out) const;

    std::complex<double> root_of_unity(int64_t rotation) const;

private:
    friend class DirichletCharacter;
    explicit CharacterGroup(uint64_t q);

    struct Factor {
        uint64_t p = 0, e = 0, pe = 1;
        uint64_t gen = 0;                  // primitive root (odd p); unused for p = 2
        std::vector<uint32_t> dlog;        // dense table when pe is small
        bool tabulated = false;            // otherwise Pohlig-Hellman / bit lifting
        std::vector<std::pair<uint64_t, uint64_t>> order_factors; // (l, l^f) of phi(pe)
    };

    int64_t rotation_of(const std::vector<uint64_t>& exps, uint64_t n) const;

    uint64_t odd_dlog(const Factor& f, uint64_t n) const;       // base f.gen
    void two_dlog(const Factor& f, uint64_t n, uint64_t& a, uint64_t& b) const;

    uint64_t q_, phi_, lambda_;
    std::vector<Factor> factors_;
    // component j -> (factor index, order, kind); kind: 0 odd, 1 sign(-1), 2 base-5
    struct Component { size_t factor; uint64_t order; int kind; };
    std::vector<Component> comps_;
    std::vector<uint64_t> comp_order_;
    std::vector<std::complex<double>> roots_;  // lambda-th roots when lambda small
};

DirichletCharacter parse_character_label(const std::string& label);

// sum over all chi mod q of chi(a) * conj(chi(b)), evaluated from the
// enumerated rotation counts with integer arithmetic only. The rotation
// multiset is checked to be uniform on a cyclic subgroup, which forces the
// sum to be exactly 0 or exactly phi(q).
struct OrthogonalityResult {
    int64_t exact_sum;        // phi(q) or 0
    bool structure_ok;        // rotation multiset matched the cyclic pattern
    bool matches_expected;    // exact_sum == (coprime && a = b mod q ? phi : 0)
};
OrthogonalityResult orthogonality_check(uint64_t q, uint64_t a, uint64_t b);

// sum over n <= x with P(n) <= y of chi(n). Residue-class counts come from
// one table scan; each class count is then attached to its exact rotation
// bucket and a single float conversion happens at the end, so the result is
// deterministic and exact up to one complex dot product.
std::complex<double> psi_twisted(const SmoothTable& table, const DirichletCharacter& chi,
                                 double x, double y);

} // namespace smoothprog
