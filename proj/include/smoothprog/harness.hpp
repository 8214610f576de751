#pragma once
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "smoothprog/smooth_table.hpp"

namespace smoothprog {

// Modulus families for experiment sweeps. All four kinds enumerate in
// ascending order, so a family is determined by its parameters alone.
struct FamilySpec {
    std::string kind = "explicit";  // explicit | prime_power | smooth | exceptional
    std::vector<uint64_t> list;     // explicit moduli
    uint64_t p = 3;                 // prime_power: p^1 .. p^n_max
    int n_max = 5;
    int q_power = 3;                // smooth: P(q)^q_power < q
    uint64_t limit = 100;           // smooth / exceptional: q <= limit
};

// The smooth kind reads P(q) from the table when one covering the limit is
// supplied and falls back to factoring each q otherwise. The exceptional
// kind keeps the moduli carrying a real primitive nonprincipal character,
// the only characters that can have a real zero near s = 1.
std::vector<uint64_t> family_generate(const FamilySpec& spec,
                                      const SmoothTable* table = nullptr);

struct ExperimentConstants {
    double c1 = 0.1;    // zero-free region strength
    double c2 = 0.05;   // repulsion depth factor
    double c3 = 1.0;    // q_flat exponent numerator
    int e0 = 3;         // q_flat prime-power exponent
    double big_c1 = 1.0, big_c2 = 1.0;  // density profile C1 e^{C2 k}
    double tau_a = 2.0;  // problem-range height exponent
    double nu = 2.0, tau = 1.0;  // interval-sum scope exponents
    double eps = 1e-3;  // supplied zero position for the repulsion check
};

struct ExperimentConfig {
    std::vector<std::string> experiments;  // subset: equidist classify checkers charsum
    std::vector<double> x = {1e4};
    std::string y_mode = "fixed";  // fixed | qroot (y = q^{1/A})
    double y_value = 100.0;
    FamilySpec family;
    double a = 4.0 * std::sqrt(std::exp(1.0));
    double d = 10.0;
    double t_max = 10.0;
    ExperimentConstants constants;
    std::string out_dir = "out";
    uint64_t seed = 0;  // echoed; reserved for sampled modulus subsets
};

// Strict JSON: unknown keys and wrong types are ConfigErrors, absent keys
// take the defaults above. canonical_config materializes every field with
// sorted keys, so two configs echo identically iff they run identically.
ExperimentConfig parse_config(const std::string& json_text);
std::string canonical_config(const ExperimentConfig& config);

struct RangeLabels {
    std::string y_label;   // large | small | very small
    int k0 = 0;            // problem range: k < k0
    double sqrt_u = 0;     // Rodosskii range: k0 <= k < sqrt(u)
    double half_log_q = 0; // basic range: sqrt(u) <= k <= log(q)/2
};

// y is very small below (log log x)^3, large above e^{(log x)^0.1}, small
// between. At desk scale the two cutoffs cross, so the very-small test runs
// first and the remaining y are split by the large cutoff alone; every
// (x, y) gets exactly one label.
RangeLabels label_ranges(double x, double y, uint64_t q, double u, double a, double d);

struct DiscrepancyReport {
    uint64_t q = 0;
    double x = 0, y = 0;
    double u = 0, v = 0;  // log x / log y, log x / log q
    std::vector<int64_t> counts;  // smooth n <= x per class, indices 0..q-1
    int64_t psi_q = 0;            // total over the coprime classes
    double delta = 0;             // max over (a,q)=1 of |phi q * counts[a]/psi_q - 1|
    uint64_t argmax_class = 0;
    RangeLabels labels;
};

// Exact class counts from one table scan. psi_q = 0 is a NumericalError:
// the discrepancy is undefined without a nonempty coprime population.
DiscrepancyReport discrepancy(const SmoothTable& table, double x, double y, uint64_t q,
                              double a = 4.0 * std::sqrt(std::exp(1.0)), double d = 10.0);

// Kendall tau (tau-a): concordant minus discordant pairs over all pairs,
// ties counting for neither. Constant series give exactly 0.
double kendall_tau(const std::vector<std::pair<double, double>>& points);

struct TrendSeries {
    uint64_t q = 0;
    double y = 0;
    std::vector<DiscrepancyReport> points;  // one per x, in the given order
    double tau = 0;                         // kendall_tau of (log x, delta)
};
TrendSeries trend(const SmoothTable& table, const std::vector<double>& xs, double y,
                  uint64_t q, double a, double d);

struct RunResult {
    std::vector<std::string> files;  // bundle paths, fixed order
};

// Writes the full bundle under config.out_dir: equidist.csv, trends.csv,
// classify.jsonl, checkers.jsonl, charsum.csv. Files for unselected
// experiments carry only the config echo and header. Work parallelizes over
// moduli with per-task output buffers flushed in task order, so a config
// and toolkit version determine every output byte.
RunResult run(const ExperimentConfig& config);

} // namespace smoothprog
