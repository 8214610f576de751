#include "smoothprog/characters.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace smoothprog {

namespace {

constexpr uint64_t kTableCap = uint64_t(1) << 22;  // dense dlog tables up to this pe
constexpr uint64_t kRootsCap = uint64_t(1) << 20;  // precomputed lambda-th roots
constexpr double kTwoPi = 6.283185307179586476925286766559;

// exp(2 pi i r / lambda) with the quarter rotations snapped to exact 1, i,
// -1, -i. Real characters only ever hit these four, so their values and any
// full-period cancellations come out exact instead of carrying the ~1e-16
// residue of cos/sin at multiples of pi/2. Requires 0 <= r < lambda.
std::complex<double> unit_rotation(uint64_t r, uint64_t lambda)
{
    if ((4 * r) % lambda == 0) {
        switch (4 * r / lambda) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    const double ang = kTwoPi * static_cast<double>(r) / static_cast<double>(lambda);
    return {std::cos(ang), std::sin(ang)};
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m)
{
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// x = g^k in the cyclic group <gamma> of prime order l inside (Z/m)*;
// linear scan for small l, baby-step giant-step above
uint64_t dlog_prime_order(uint64_t gamma, uint64_t x, uint64_t l, uint64_t m)
{
    if (l < 4096) {
        uint64_t cur = 1;
        for (uint64_t k = 0; k < l; ++k) {
            if (cur == x) return k;
            cur = mul_mod(cur, gamma, m);
        }
        throw NumericalError("dlog_prime_order: element not in subgroup");
    }
    const uint64_t step = static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(l))));
    std::unordered_map<uint64_t, uint64_t> baby;
    baby.reserve(step * 2);
    uint64_t cur = x;
    for (uint64_t j = 0; j < step; ++j) {  // x * gamma^j
        baby.emplace(cur, j);
        cur = mul_mod(cur, gamma, m);
    }
    const uint64_t giant = pow_mod(gamma, step, m);
    uint64_t g = 1;
    for (uint64_t i = 1; i * step <= l + step; ++i) {  // gamma^(i*step)
        g = mul_mod(g, giant, m);
        auto it = baby.find(g);
        if (it != baby.end()) return (i * step - it->second) % l;
    }
    throw NumericalError("dlog_prime_order: element not in subgroup");
}

// x of h base g in (Z/pe)*, g of order d, for the prime-power part lf = l^f of d
uint64_t ph_component(uint64_t h, uint64_t g, uint64_t l, uint64_t lf, uint64_t d, uint64_t pe)
{
    const uint64_t gq = pow_mod(g, d / lf, pe);   // order lf
    const uint64_t hq = pow_mod(h, d / lf, pe);
    const uint64_t gamma = pow_mod(gq, lf / l, pe);  // order l
    const uint64_t gq_inv = inv_mod(gq, pe);
    uint64_t x = 0, rem = hq, ljp = 1;
    for (uint64_t scale = lf / l;; scale /= l) {
        const uint64_t t = pow_mod(rem, scale, pe);
        const uint64_t digit = dlog_prime_order(gamma, t, l, pe);
        x += digit * ljp;
        rem = mul_mod(rem, pow_mod(gq_inv, digit * ljp, pe), pe);
        ljp *= l;
        if (scale == 1) break;
    }
    return x;
}

uint64_t crt_combine(const std::vector<std::pair<uint64_t, uint64_t>>& residues)
{
    // residues: (x_i, m_i) with pairwise coprime m_i
    uint64_t x = 0, mod = 1;
    for (auto [xi, mi] : residues) {
        const uint64_t diff = ((xi % mi) + mi - x % mi) % mi;
        const uint64_t t = mul_mod(diff, inv_mod(mod % mi, mi), mi);
        x += mod * t;
        mod *= mi;
    }
    return x;
}

std::vector<std::pair<uint64_t, uint64_t>> factor_order(uint64_t d)
{
    std::vector<std::pair<uint64_t, uint64_t>> out;
    for (uint64_t l : prime_factors(d)) {
        uint64_t lf = 1, m = d;
        while (m % l == 0) { lf *= l; m /= l; }
        out.emplace_back(l, lf);
    }
    return out;
}

uint64_t smallest_primitive_root(uint64_t p, uint64_t pe, uint64_t d,
                                 const std::vector<std::pair<uint64_t, uint64_t>>& dfac)
{
    for (uint64_t g = 2; g < 10000; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (auto [l, lf] : dfac) {
            (void)lf;
            if (pow_mod(g, d / l, pe) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw NumericalError("smallest_primitive_root: search exhausted");
}

} // namespace

CharacterGroup::CharacterGroup(uint64_t q) : q_(q)
{
    if (q == 0) throw ConfigError("CharacterGroup: q must be positive");
    if (q >= (uint64_t(1) << 48))
        throw CapacityError("CharacterGroup: q must be below 2^48");

    // factor q, 2-part first then odd primes ascending
    uint64_t m = q;
    if (m % 2 == 0) {
        Factor f;
        f.p = 2;
        while (m % 2 == 0) { m /= 2; ++f.e; }
        f.pe = uint64_t(1) << f.e;
        factors_.push_back(std::move(f));
    }
    for (uint64_t p = 3; p * p <= m; p += 2) {
        if (m % p) continue;
        Factor f;
        f.p = p;
        while (m % p == 0) { m /= p; ++f.e; f.pe *= p; }
        factors_.push_back(std::move(f));
    }
    if (m > 1) {
        Factor f;
        f.p = m; f.e = 1; f.pe = m;
        factors_.push_back(std::move(f));
    }

    phi_ = 1;
    lambda_ = 1;
    for (size_t fi = 0; fi < factors_.size(); ++fi) {
        Factor& f = factors_[fi];
        if (f.p == 2) {
            phi_ *= f.pe / 2;
            if (f.e == 2) {
                comps_.push_back({fi, 2, 1});
            } else if (f.e >= 3) {
                comps_.push_back({fi, 2, 1});
                comps_.push_back({fi, f.pe / 4, 2});
            }
            continue;
        }
        const uint64_t d = f.pe / f.p * (f.p - 1);
        phi_ *= d;
        f.order_factors = factor_order(d);
        f.gen = smallest_primitive_root(f.p, f.pe, d, f.order_factors);
        if (f.pe <= kTableCap) {
            f.dlog.assign(f.pe, 0);
            uint64_t r = 1;
            for (uint64_t k = 0; k < d; ++k) {
                f.dlog[r] = static_cast<uint32_t>(k);
                r = mul_mod(r, f.gen, f.pe);
            }
            f.tabulated = true;
        }
        comps_.push_back({fi, d, 0});
    }
    for (const auto& c : comps_) {
        comp_order_.push_back(c.order);
        lambda_ = std::lcm(lambda_, c.order);
    }
    if (lambda_ <= kRootsCap) {
        roots_.resize(lambda_);
        for (uint64_t k = 0; k < lambda_; ++k) roots_[k] = unit_rotation(k, lambda_);
    }
}

std::shared_ptr<const CharacterGroup> CharacterGroup::make(uint64_t q)
{
    return std::shared_ptr<const CharacterGroup>(new CharacterGroup(q));
}

uint64_t CharacterGroup::odd_dlog(const Factor& f, uint64_t n) const
{
    if (f.tabulated) return f.dlog[n];
    const uint64_t d = f.pe / f.p * (f.p - 1);
    std::vector<std::pair<uint64_t, uint64_t>> parts;
    parts.reserve(f.order_factors.size());
    for (auto [l, lf] : f.order_factors)
        parts.emplace_back(ph_component(n, f.gen, l, lf, d, f.pe), lf);
    return crt_combine(parts);
}

void CharacterGroup::two_dlog(const Factor& f, uint64_t n, uint64_t& a, uint64_t& b) const
{
    // n odd; write n = (-1)^a 5^b mod 2^e (e >= 3), by lifting bit by bit
    const uint64_t pe = f.pe;
    uint64_t mtarget;
    if ((n & 3) == 1) { a = 0; mtarget = n; }
    else             { a = 1; mtarget = pe - n; }
    b = 0;
    uint64_t cur = 1, five_sq = 5 % pe;
    for (uint64_t i = 0; i + 2 < f.e; ++i) {
        const uint64_t mask = (uint64_t(1) << (i + 3)) - 1;
        if (((cur ^ mtarget) & mask) != 0) {
            b |= uint64_t(1) << i;
            cur = mul_mod(cur, five_sq, pe);
        }
        five_sq = mul_mod(five_sq, five_sq, pe);
    }
}

bool CharacterGroup::dlog_vector(uint64_t n, std::vector<uint64_t>& out) const
{
    out.clear();
    const uint64_t r = n % q_;
    if (std::gcd(r, q_) != 1) return false;
    for (const auto& f : factors_) {
        const uint64_t rf = r % f.pe;
        if (f.p == 2) {
            if (f.e == 1) continue;               // trivial unit group
            if (f.e == 2) { out.push_back(rf == 3 ? 1 : 0); continue; }
            uint64_t a, b;
            two_dlog(f, rf, a, b);
            out.push_back(a);
            out.push_back(b);
        } else {
            out.push_back(odd_dlog(f, rf));
        }
    }
    return true;
}

int64_t CharacterGroup::rotation_of(const std::vector<uint64_t>& exps, uint64_t n) const
{
    std::vector<uint64_t> t;
    if (!dlog_vector(n, t)) return -1;
    unsigned __int128 rot = 0;
    for (size_t j = 0; j < comps_.size(); ++j) {
        unsigned __int128 term = static_cast<unsigned __int128>(exps[j]) * t[j] % lambda_;
        rot += term * (lambda_ / comps_[j].order) % lambda_;
    }
    return static_cast<int64_t>(rot % lambda_);
}

std::complex<double> CharacterGroup::root_of_unity(int64_t rotation) const
{
    int64_t r = rotation % static_cast<int64_t>(lambda_);
    if (r < 0) r += static_cast<int64_t>(lambda_);
    if (!roots_.empty()) return roots_[static_cast<size_t>(r)];
    return unit_rotation(static_cast<uint64_t>(r), lambda_);
}

DirichletCharacter CharacterGroup::character(std::vector<uint64_t> exponents) const
{
    if (exponents.size() != comps_.size())
        throw ConfigError("character: expected " + std::to_string(comps_.size()) +
                          " exponents for q = " + std::to_string(q_));
    for (size_t j = 0; j < comps_.size(); ++j)
        if (exponents[j] >= comps_[j].order)
            throw ConfigError("character: exponent " + std::to_string(exponents[j]) +
                              " out of range for component of order " +
                              std::to_string(comps_[j].order));
    return DirichletCharacter(shared_from_this(), std::move(exponents));
}

DirichletCharacter CharacterGroup::principal() const
{
    return DirichletCharacter(shared_from_this(), std::vector<uint64_t>(comps_.size(), 0));
}

std::vector<DirichletCharacter> CharacterGroup::enumerate() const
{
    if (phi_ > 20'000'000)
        throw CapacityError("enumerate: phi(q) too large to list characters");
    std::vector<DirichletCharacter> out;
    out.reserve(phi_);
    std::vector<uint64_t> e(comps_.size(), 0);
    while (true) {
        out.push_back(DirichletCharacter(shared_from_this(), e));
        size_t j = comps_.size();
        while (j > 0) {
            --j;
            if (++e[j] < comps_[j].order) break;
            e[j] = 0;
            if (j == 0) return out;
        }
        if (comps_.empty()) return out;
    }
}

uint64_t DirichletCharacter::modulus() const { return group_->modulus(); }

uint64_t DirichletCharacter::order() const
{
    uint64_t o = 1;
    const auto& orders = group_->component_orders();
    for (size_t j = 0; j < exps_.size(); ++j)
        o = std::lcm(o, orders[j] / std::gcd(exps_[j], orders[j]));
    return o;
}

bool DirichletCharacter::is_principal() const
{
    return std::all_of(exps_.begin(), exps_.end(), [](uint64_t e) { return e == 0; });
}

int64_t DirichletCharacter::rotation(uint64_t n) const
{
    return group_->rotation_of(exps_, n);
}

std::complex<double> DirichletCharacter::operator()(uint64_t n) const
{
    const int64_t r = rotation(n);
    if (r < 0) return {0.0, 0.0};
    return group_->root_of_unity(r);
}

DirichletCharacter DirichletCharacter::conjugate() const
{
    std::vector<uint64_t> e(exps_.size());
    const auto& orders = group_->component_orders();
    for (size_t j = 0; j < exps_.size(); ++j)
        e[j] = exps_[j] == 0 ? 0 : orders[j] - exps_[j];
    return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::times(const DirichletCharacter& other) const
{
    if (group_->modulus() != other.group_->modulus())
        throw ConfigError("times: characters must share a modulus");
    std::vector<uint64_t> e(exps_.size());
    const auto& orders = group_->component_orders();
    for (size_t j = 0; j < exps_.size(); ++j)
        e[j] = (exps_[j] + other.exps_[j]) % orders[j];
    return DirichletCharacter(group_, std::move(e));
}

std::string DirichletCharacter::label() const
{
    std::string s = std::to_string(group_->modulus()) + ":";
    for (size_t j = 0; j < exps_.size(); ++j) {
        if (j) s += ",";
        s += std::to_string(exps_[j]);
    }
    return s;
}

uint64_t DirichletCharacter::conductor() const
{
    uint64_t cond = 1;
    size_t j = 0;  // component cursor
    for (const auto& f : group_->factors_) {
        if (f.p == 2) {
            if (f.e <= 1) continue;
            if (f.e == 2) {
                const uint64_t a = exps_[j++];
                if (a) cond *= 4;
                continue;
            }
            const uint64_t a = exps_[j++];
            const uint64_t b = exps_[j++];
            if (b == 0) {
                if (a) cond *= 4;
            } else {
                const uint64_t half = f.pe / 4;  // component order 2^{e-2}
                const uint64_t ord = half / std::gcd(b, half);
                uint64_t mb = 0;
                for (uint64_t t = ord; t > 1; t >>= 1) ++mb;
                cond *= uint64_t(1) << (mb + 2);
            }
            continue;
        }
        const uint64_t d = f.pe / f.p * (f.p - 1);
        const uint64_t a = exps_[j++];
        if (a == 0) continue;
        uint64_t o = d / std::gcd(a, d), m = 0;
        while (o % f.p == 0) { o /= f.p; ++m; }
        uint64_t pc = f.p;                       // p^(m+1), or p when m = 0
        for (uint64_t k = 0; k < m; ++k) pc *= f.p;
        cond *= pc;
    }
    return cond;
}

bool DirichletCharacter::is_primitive() const
{
    return conductor() == group_->modulus();
}

DirichletCharacter DirichletCharacter::primitive() const
{
    const uint64_t cond = conductor();
    auto tgt = CharacterGroup::make(cond);
    if (cond == group_->modulus())
        return tgt->character(exps_);  // same component structure by construction

    std::vector<uint64_t> out;
    for (const auto& tf : tgt->factors_) {
        // locate the matching source factor
        const CharacterGroup::Factor* sf = nullptr;
        size_t sidx = 0;  // index of the factor's first component in exps_
        {
            size_t cur = 0;
            for (const auto& f : group_->factors_) {
                if (f.p == tf.p) { sf = &f; sidx = cur; break; }
                if (f.p == 2) cur += (f.e >= 3) ? 2 : (f.e == 2 ? 1 : 0);
                else ++cur;
            }
        }
        if (!sf) throw NumericalError("primitive: factor alignment failed");

        if (tf.p == 2) {
            if (tf.e <= 1) continue;
            if (tf.e == 2) { out.push_back(1); continue; }
            // conductor 2^e with e >= 3: source was (a, b), b != 0
            const uint64_t a = exps_[sidx];
            const uint64_t b = exps_[sidx + 1];
            out.push_back(a);
            out.push_back(b >> (sf->e - tf.e));
        } else {
            const uint64_t dd = tf.pe / tf.p * (tf.p - 1);
            uint64_t shrink = 1;                  // p^(e - c)
            for (uint64_t k = tf.e; k < sf->e; ++k) shrink *= sf->p;
            const uint64_t ep = exps_[sidx] / shrink;  // exponent w.r.t. g mod p^c
            const uint64_t z = tgt->odd_dlog(tf, sf->gen % tf.pe);
            out.push_back(mul_mod(ep, inv_mod(z, dd), dd));
        }
    }
    return tgt->character(std::move(out));
}

DirichletCharacter parse_character_label(const std::string& label)
{
    const auto colon = label.find(':');
    if (colon == std::string::npos)
        throw ConfigError("character label must look like \"q:e1,e2,...\"");
    uint64_t q = 0;
    try {
        size_t used = 0;
        q = std::stoull(label.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ConfigError("character label: bad modulus in \"" + label + "\"");
    }
    auto group = CharacterGroup::make(q);
    std::vector<uint64_t> exps;
    std::string rest = label.substr(colon + 1);
    if (!rest.empty()) {
        size_t pos = 0;
        while (true) {
            const auto comma = rest.find(',', pos);
            const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos);
            try {
                size_t used = 0;
                exps.push_back(std::stoull(tok, &used));
                if (used != tok.size() || tok.empty()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ConfigError("character label: bad exponent \"" + tok + "\"");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return group->character(std::move(exps));
}

OrthogonalityResult orthogonality_check(uint64_t q, uint64_t a, uint64_t b)
{
    auto group = CharacterGroup::make(q);
    const uint64_t phi = group->phi();
    const bool coprime = std::gcd(a % q, q) == 1 && std::gcd(b % q, q) == 1;
    const int64_t expected = (coprime && a % q == b % q) ? static_cast<int64_t>(phi) : 0;
    if (!coprime) return {0, true, expected == 0};

    const uint64_t c = a % q * inv_mod(b % q, q) % q;
    const uint64_t lambda = group->lambda();
    std::vector<int64_t> counts(lambda, 0);
    for (const auto& chi : group->enumerate()) {
        const int64_t r = chi.rotation(c);
        if (r < 0) return {0, false, false};
        ++counts[static_cast<size_t>(r)];
    }
    uint64_t g = lambda;
    for (uint64_t r = 1; r < lambda; ++r)
        if (counts[r]) g = std::gcd(g, r);
    if (g == lambda) {
        // support is {0}: sum is the plain count there
        const bool ok = counts[0] == static_cast<int64_t>(phi);
        return {counts[0], ok, ok && counts[0] == expected};
    }
    // support must be all multiples of g with a uniform count; the sum over a
    // full set of (lambda/g)-th roots of unity is then exactly zero
    const int64_t uniform = static_cast<int64_t>(phi / (lambda / g));
    bool ok = true;
    for (uint64_t r = 0; r < lambda; ++r) {
        const int64_t want = (r % g == 0) ? uniform : 0;
        if (counts[r] != want) { ok = false; break; }
    }
    return {0, ok, ok && expected == 0};
}

std::complex<double> psi_twisted(const SmoothTable& table, const DirichletCharacter& chi,
                                 double x, double y)
{
    const uint64_t q = chi.modulus();
    if (q > (uint64_t(1) << 26))
        throw CapacityError("psi_twisted: q too large for residue-class accumulation");
    const auto counts = table.class_counts(x, y, q);
    const uint64_t lambda = chi.group().lambda();
    std::vector<int64_t> buckets(lambda, 0);
    for (uint64_t r = 0; r < q; ++r) {
        if (counts[r] == 0) continue;
        const int64_t rot = chi.rotation(r);
        if (rot >= 0) buckets[static_cast<size_t>(rot)] += counts[r];
    }
    std::complex<double> sum = 0;
    for (uint64_t k = 0; k < lambda; ++k)
        if (buckets[k])
            sum += static_cast<double>(buckets[k]) * chi.group().root_of_unity(static_cast<int64_t>(k));
    return sum;
}

} // namespace smoothprog
