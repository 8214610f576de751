#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smoothprog/characters.hpp"
#include "smoothprog/lfunc.hpp"
#include "smoothprog/zeroscan.hpp"

namespace smoothprog {

// Empirical checkers for the statements that control how close L-function
// zeros come to s = 1: the classification of characters by zero-free depth,
// the at-most-one-exceptional-zero region, zero repulsion, and the two
// auxiliary nonvanishing conditions used by the classification argument.
// Every verdict rests on certified winding counts from scan_zeros; scans
// that end with indeterminate boxes surface as Unknown, never as Pass.

enum class Verdict { Pass, Fail, Unknown };
const char* verdict_name(Verdict v);

// k0 = ceil(4 A log A + D), floored at 0, and the companion modulus
// threshold Q_A = 500000 k0.
struct Theorem1Constants {
    double a = 0, d = 0;
    int k0 = 0;
    std::int64_t q_a = 0;
};
Theorem1Constants theorem1_constants(double a, double d);

// The window whose zeros decide whether chi is a problem character:
// sigma in (1 - k0/log q, 1.2], |t| <= min(t_max, q, conductor^tau_a).
// Returns the raw formula rectangle; scanning layers clip it to the
// evaluator window themselves.
SRect problem_range_rectangle(const DirichletCharacter& chi, int k0, double tau_a,
                              double t_max);

struct CharacterClass {
    std::string label;
    std::uint64_t conductor = 0;
    // largest k <= k_cap for which sigma > 1 - k/log q, |t| <= t_max holds
    // no zero of L(s, chi); k_cap when the whole scanned window is clear
    int xi_index = 0;
    double beta_max = 0;          // rightmost zero in the window; 0 when none
    bool in_problem_set = false;  // xi_index < k0
    bool indeterminate = false;   // the scan could not settle the window
};

struct Classification {
    std::uint64_t q = 0;
    double t_max = 0;
    double a = 0, d = 0;
    int k0 = 0;
    int k_cap = 0;  // ceil(log(q)/2); depth indices live in [0, k_cap]
    std::vector<CharacterClass> entries;  // nonprincipal, enumeration order
    std::vector<int> xi_counts;  // xi_counts[k] = #{determinate entries at k}
    std::size_t problem_count = 0;
    std::size_t indeterminate_count = 0;
    // rightmost real zero of a real nonprincipal character, when one exists
    std::optional<ZeroRecord> exceptional;
};

// Splits the nonprincipal characters mod q by zero-free depth: index k means
// sigma > 1 - k/log q is zero-free in |t| <= t_max while
// sigma > 1 - (k+1)/log q is not. One scan of the deepest rectangle decides
// every index, and a character shares that scan with its conjugate (zeros
// reflect in the real axis). Indeterminate entries stay out of xi_counts.
Classification classify(std::uint64_t q, double a, double d, double t_max);

struct ZeroFreeReport {
    std::uint64_t q = 0;
    double c1 = 0, t_max = 0;
    double region_sigma_at_0 = 0;  // 1 - c1/log(3q), the region's widest point
    bool window_clipped = false;   // region reaches below the evaluator window
    std::vector<ZeroRecord> zeros;      // all zeros of prod_chi L in the bounding box
    std::vector<ZeroRecord> offenders;  // those with beta > 1 - c1/log(q(|gamma|+3))
    bool scans_complete = false;
    Verdict verdict = Verdict::Unknown;
};

// Scans every L(s, chi) mod q over the bounding box of the region
// beta > 1 - c1/log(q(|gamma|+3)), |gamma| <= t_max and lists the zeros
// inside the region. Pass requires at most one offender, real and attached
// to a real nonprincipal character. The principal factor contributes the
// zeros of zeta and of its missing Euler factors; its pole at s = 1 sits in
// a box certified zero-free by a Laurent bound instead of being scanned.
ZeroFreeReport zero_free_region_check(std::uint64_t q, double c1, double t_max);

struct RepulsionReport {
    std::uint64_t q = 0;
    double eps = 0, c2 = 0, t_max = 0;
    double beta0 = 0;              // the supplied exceptional zero 1 - eps/log q
    double region_sigma_at_0 = 0;  // 1 - c2 log(1/eps)/log(3q)
    bool window_clipped = false;
    std::vector<ZeroRecord> others;     // zeros found, the supplied one removed
    std::vector<ZeroRecord> offenders;  // others inside the repulsion region
    double repulsion_margin = 0;  // max beta over others; scan edge when none
    bool scans_complete = false;
    Verdict verdict = Verdict::Unknown;
};

// Checks that, apart from a designated real zero at beta0 = 1 - eps/log q,
// no zero of prod_chi L(s, chi) enters the repulsion region
// beta > 1 - c2 log(1/eps)/log(q(|gamma|+3)), |gamma| <= t_max.
RepulsionReport deuring_heilbronn_check(std::uint64_t q, double eps, double c2,
                                        double t_max);

struct IwaniecReport {
    std::string character_label;
    double m = 0, eta = 0, t = 0;
    double theta = 0;            // log(m)/eta
    double vartheta = 0;         // 1/(400 theta)
    bool eta_condition = false;  // 8 log(5 log 3q) + 24/eta log(160 theta) <= 8 theta/3
    double grid_max_abs = 0;     // max |L| sampled on sigma > 1 - eta, |t| <= 3t
    long grid_points = 0;
    bool bound_holds_sampled = false;  // grid_max_abs <= m; sampled, never proved
    Verdict no_zero_verdict = Verdict::Unknown;  // no beta > 1 - vartheta, |gamma| <= t
    std::vector<ZeroRecord> zeros;  // witnesses when no_zero_verdict is Fail
};

// Evaluates the two simultaneous conditions behind the uniqueness argument:
// (i) |L(s, chi)| <= m on sigma > 1 - eta, |t| <= 3t, tested on a finite
// sample grid only, and (ii) L has no zero with beta > 1 - vartheta,
// |gamma| <= t, decided by a certified scan. When vartheta drops below 1e-5
// the certification boxes (diameter 1e-6) cannot separate the region
// boundary and (ii) reports Unknown without scanning.
IwaniecReport iwaniec_condition_check(const DirichletCharacter& chi, double m,
                                      double eta, double t);

struct GulpReport {
    std::string character_label;
    double scale = 0, t_max = 0;
    double width_at_0 = 0;  // 1/(scale (log q + (l log 2l)^{3/4})) at gamma = 0
    bool vacuous = false;   // principal or modulus < 3: nothing to scan
    std::vector<ZeroRecord> offenders;  // nonreal zeros inside the region
    bool scans_complete = false;
    Verdict verdict = Verdict::Unknown;
};

// Scans a primitive character for nonreal zeros in
// beta > 1 - 1/(scale (log q + (l log 2l)^{3/4})), l = log(q(|gamma|+3)),
// 0 < |gamma| <= t_max. scale = 40000 is the reference strength; scale = 1
// widens the region to desk-visible size.
GulpReport gulp_region_check(const DirichletCharacter& chi, double scale, double t_max);

struct DensityReport {
    std::uint64_t q = 0;
    double t_max = 0;
    double c1 = 0, c2 = 0;
    std::vector<int> counts;   // |Xi_q(k)| by k, from classify
    std::vector<bool> within;  // counts[k] <= c1 e^{c2 k}
    std::uint64_t phi = 0;
    bool sum_bounded = false;  // sum_k counts[k] <= phi(q)
    Verdict verdict = Verdict::Unknown;
};

// Compares the classification counts |Xi_q(k)| against the density profile
// c1 e^{c2 k} per depth and against the unconditional total phi(q).
// Classification runs with a = 4 sqrt(e), d = 10.
DensityReport density_count_check(std::uint64_t q, double t_max, double c1, double c2);

} // namespace smoothprog
