#include "smoothprog/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "smoothprog/characters.hpp"
#include "smoothprog/charsum.hpp"
#include "smoothprog/checkers.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/io.hpp"
#include "smoothprog/primes.hpp"
#include "smoothprog/runtime.hpp"

namespace smoothprog {
namespace {

using nlohmann::json;

const std::vector<std::string> kExperiments = {"equidist", "classify", "checkers",
                                               "charsum"};

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed)
{
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) known = true;
        if (!known)
            throw ConfigError("config: unknown key '" + it.key() + "' in " + where);
    }
}

double get_num(const json& v, const std::string& where)
{
    if (!v.is_number()) throw ConfigError("config: " + where + " must be a number");
    return v.get<double>();
}

int get_int(const json& v, const std::string& where)
{
    if (!v.is_number_integer())
        throw ConfigError("config: " + where + " must be an integer");
    return v.get<int>();
}

uint64_t get_u64(const json& v, const std::string& where)
{
    if (!v.is_number_integer() || (v.is_number_integer() && v.get<int64_t>() < 0))
        throw ConfigError("config: " + where + " must be a nonnegative integer");
    return v.get<uint64_t>();
}

std::string get_str(const json& v, const std::string& where)
{
    if (!v.is_string()) throw ConfigError("config: " + where + " must be a string");
    return v.get<std::string>();
}

void require_positive(double v, const std::string& where)
{
    if (!(v > 0)) throw ConfigError("config: " + where + " must be positive");
}

std::string join_counts(const std::vector<int64_t>& counts)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < counts.size(); ++i) s << (i ? ";" : "") << counts[i];
    return s.str();
}

json classification_record(const Classification& c)
{
    json entries = json::array();
    for (const CharacterClass& e : c.entries)
        entries.push_back({{"label", e.label},
                           {"conductor", e.conductor},
                           {"xi_index", e.xi_index},
                           {"beta_max", e.beta_max},
                           {"in_problem_set", e.in_problem_set},
                           {"indeterminate", e.indeterminate}});
    json j{{"q", c.q},           {"a", c.a},
           {"d", c.d},           {"t_max", c.t_max},
           {"k0", c.k0},         {"k_cap", c.k_cap},
           {"xi_counts", c.xi_counts},
           {"problem_count", c.problem_count},
           {"indeterminate_count", c.indeterminate_count},
           {"characters", std::move(entries)}};
    if (c.exceptional)
        j["exceptional"] = {{"label", c.exceptional->character_label},
                            {"beta", c.exceptional->beta},
                            {"gamma", c.exceptional->gamma}};
    else
        j["exceptional"] = nullptr;
    return j;
}

json checker_record(uint64_t q, const ExperimentConstants& k, double t_max)
{
    json j{{"q", q}};
    const ZeroFreeReport zf = zero_free_region_check(q, k.c1, t_max);
    j["zero_free"] = {{"c1", zf.c1},
                      {"t_max", zf.t_max},
                      {"region_sigma_at_0", zf.region_sigma_at_0},
                      {"window_clipped", zf.window_clipped},
                      {"zeros", zf.zeros.size()},
                      {"offenders", zf.offenders.size()},
                      {"scans_complete", zf.scans_complete},
                      {"verdict", verdict_name(zf.verdict)}};
    if (q >= 2) {
        const RepulsionReport rp = deuring_heilbronn_check(q, k.eps, k.c2, t_max);
        j["repulsion"] = {{"eps", rp.eps},
                          {"c2", rp.c2},
                          {"t_max", rp.t_max},
                          {"beta0", rp.beta0},
                          {"region_sigma_at_0", rp.region_sigma_at_0},
                          {"window_clipped", rp.window_clipped},
                          {"others", rp.others.size()},
                          {"offenders", rp.offenders.size()},
                          {"repulsion_margin", rp.repulsion_margin},
                          {"scans_complete", rp.scans_complete},
                          {"verdict", verdict_name(rp.verdict)}};
    } else {
        j["repulsion"] = nullptr;  // no nonprincipal characters below q = 2
    }
    const DensityReport dn = density_count_check(q, t_max, k.big_c1, k.big_c2);
    j["density"] = {{"c1", dn.c1},
                    {"c2", dn.c2},
                    {"t_max", dn.t_max},
                    {"counts", dn.counts},
                    {"within", dn.within},
                    {"phi", dn.phi},
                    {"sum_bounded", dn.sum_bounded},
                    {"verdict", verdict_name(dn.verdict)}};
    return j;
}

} // namespace

std::vector<uint64_t> family_generate(const FamilySpec& spec, const SmoothTable* table)
{
    if (spec.kind == "explicit") {
        std::vector<uint64_t> qs = spec.list;
        for (uint64_t q : qs)
            if (q == 0) throw ConfigError("family: moduli must be positive");
        std::sort(qs.begin(), qs.end());
        qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
        return qs;
    }
    if (spec.kind == "prime_power") {
        if (spec.p < 2 || largest_prime_factor(spec.p) != spec.p)
            throw ConfigError("family: p must be prime");
        if (spec.n_max < 1) throw ConfigError("family: n_max must be at least 1");
        std::vector<uint64_t> qs;
        uint64_t q = 1;
        for (int n = 1; n <= spec.n_max; ++n) {
            if (q > std::numeric_limits<uint64_t>::max() / spec.p)
                throw CapacityError("family: p^n overflows 64 bits");
            q *= spec.p;
            qs.push_back(q);
        }
        return qs;
    }
    if (spec.kind == "smooth") {
        if (spec.q_power < 1) throw ConfigError("family: Q must be at least 1");
        const bool tabulated = table && table->x_max() >= spec.limit;
        std::vector<uint64_t> qs;
        for (uint64_t q = 2; q <= spec.limit; ++q) {
            const uint64_t pq = tabulated ? table->lpf(q) : largest_prime_factor(q);
            unsigned __int128 power = 1;
            bool below = true;
            for (int j = 0; j < spec.q_power && below; ++j) {
                power *= pq;
                if (power >= q) below = false;
            }
            if (below) qs.push_back(q);
        }
        return qs;
    }
    if (spec.kind == "exceptional") {
        std::vector<uint64_t> qs;
        for (uint64_t q = 3; q <= spec.limit; ++q) {
            auto group = CharacterGroup::make(q);
            for (const auto& chi : group->enumerate())
                if (chi.is_real() && !chi.is_principal() && chi.is_primitive()) {
                    qs.push_back(q);
                    break;
                }
        }
        return qs;
    }
    throw ConfigError("family: unknown kind '" + spec.kind + "'");
}

ExperimentConfig parse_config(const std::string& json_text)
{
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(root, "top level",
               {"experiments", "x", "y", "family", "A", "D", "T_max", "constants",
                "out_dir", "seed"});

    ExperimentConfig c;
    if (root.contains("experiments")) {
        if (!root["experiments"].is_array())
            throw ConfigError("config: experiments must be an array");
        c.experiments.clear();
        for (const json& v : root["experiments"]) {
            const std::string name = get_str(v, "experiments entry");
            if (std::find(kExperiments.begin(), kExperiments.end(), name) ==
                kExperiments.end())
                throw ConfigError("config: unknown experiment '" + name + "'");
            if (std::find(c.experiments.begin(), c.experiments.end(), name) !=
                c.experiments.end())
                throw ConfigError("config: duplicate experiment '" + name + "'");
            c.experiments.push_back(name);
        }
    }
    if (root.contains("x")) {
        if (!root["x"].is_array() || root["x"].empty())
            throw ConfigError("config: x must be a nonempty array");
        c.x.clear();
        for (const json& v : root["x"]) {
            const double x = get_num(v, "x entry");
            if (!(x >= 1)) throw ConfigError("config: x entries must be at least 1");
            c.x.push_back(x);
        }
    }
    if (root.contains("y")) {
        const json& y = root["y"];
        if (!y.is_object()) throw ConfigError("config: y must be an object");
        check_keys(y, "y", {"mode", "value"});
        if (y.contains("mode")) c.y_mode = get_str(y["mode"], "y.mode");
        if (c.y_mode != "fixed" && c.y_mode != "qroot")
            throw ConfigError("config: y.mode must be 'fixed' or 'qroot'");
        if (y.contains("value")) {
            c.y_value = get_num(y["value"], "y.value");
            if (!(c.y_value >= 1)) throw ConfigError("config: y.value must be at least 1");
        }
    }
    if (root.contains("family")) {
        const json& f = root["family"];
        if (!f.is_object()) throw ConfigError("config: family must be an object");
        check_keys(f, "family", {"kind", "list", "p", "n_max", "Q", "limit"});
        if (f.contains("kind")) c.family.kind = get_str(f["kind"], "family.kind");
        if (f.contains("list")) {
            if (!f["list"].is_array())
                throw ConfigError("config: family.list must be an array");
            c.family.list.clear();
            for (const json& v : f["list"])
                c.family.list.push_back(get_u64(v, "family.list entry"));
        }
        if (f.contains("p")) c.family.p = get_u64(f["p"], "family.p");
        if (f.contains("n_max")) c.family.n_max = get_int(f["n_max"], "family.n_max");
        if (f.contains("Q")) c.family.q_power = get_int(f["Q"], "family.Q");
        if (f.contains("limit")) c.family.limit = get_u64(f["limit"], "family.limit");
    }
    if (root.contains("A")) c.a = get_num(root["A"], "A");
    require_positive(c.a, "A");
    if (root.contains("D")) c.d = get_num(root["D"], "D");
    if (c.d < 0) throw ConfigError("config: D must be nonnegative");
    if (root.contains("T_max")) c.t_max = get_num(root["T_max"], "T_max");
    require_positive(c.t_max, "T_max");
    if (root.contains("constants")) {
        const json& k = root["constants"];
        if (!k.is_object()) throw ConfigError("config: constants must be an object");
        check_keys(k, "constants",
                   {"c1", "c2", "c3", "e0", "C1", "C2", "tau_A", "nu", "tau", "eps"});
        ExperimentConstants& kc = c.constants;
        if (k.contains("c1")) kc.c1 = get_num(k["c1"], "constants.c1");
        if (k.contains("c2")) kc.c2 = get_num(k["c2"], "constants.c2");
        if (k.contains("c3")) kc.c3 = get_num(k["c3"], "constants.c3");
        if (k.contains("e0")) kc.e0 = get_int(k["e0"], "constants.e0");
        if (k.contains("C1")) kc.big_c1 = get_num(k["C1"], "constants.C1");
        if (k.contains("C2")) kc.big_c2 = get_num(k["C2"], "constants.C2");
        if (k.contains("tau_A")) kc.tau_a = get_num(k["tau_A"], "constants.tau_A");
        if (k.contains("nu")) kc.nu = get_num(k["nu"], "constants.nu");
        if (k.contains("tau")) kc.tau = get_num(k["tau"], "constants.tau");
        if (k.contains("eps")) kc.eps = get_num(k["eps"], "constants.eps");
        require_positive(kc.c1, "constants.c1");
        require_positive(kc.c2, "constants.c2");
        require_positive(kc.c3, "constants.c3");
        if (kc.e0 < 1) throw ConfigError("config: constants.e0 must be at least 1");
        require_positive(kc.big_c1, "constants.C1");
        if (kc.big_c2 < 0) throw ConfigError("config: constants.C2 must be nonnegative");
        require_positive(kc.tau_a, "constants.tau_A");
        require_positive(kc.nu, "constants.nu");
        require_positive(kc.tau, "constants.tau");
        if (!(kc.eps > 0 && kc.eps < 1))
            throw ConfigError("config: constants.eps must lie in (0, 1)");
    }
    if (root.contains("out_dir")) {
        c.out_dir = get_str(root["out_dir"], "out_dir");
        if (c.out_dir.empty()) throw ConfigError("config: out_dir must be nonempty");
    }
    if (root.contains("seed")) c.seed = get_u64(root["seed"], "seed");
    return c;
}

std::string canonical_config(const ExperimentConfig& c)
{
    json j;
    j["experiments"] = c.experiments;
    j["x"] = c.x;
    j["y"] = {{"mode", c.y_mode}, {"value", c.y_value}};
    j["family"] = {{"kind", c.family.kind}, {"list", c.family.list},
                   {"p", c.family.p},       {"n_max", c.family.n_max},
                   {"Q", c.family.q_power}, {"limit", c.family.limit}};
    j["A"] = c.a;
    j["D"] = c.d;
    j["T_max"] = c.t_max;
    j["constants"] = {{"c1", c.constants.c1},     {"c2", c.constants.c2},
                      {"c3", c.constants.c3},     {"e0", c.constants.e0},
                      {"C1", c.constants.big_c1}, {"C2", c.constants.big_c2},
                      {"tau_A", c.constants.tau_a}, {"nu", c.constants.nu},
                      {"tau", c.constants.tau},   {"eps", c.constants.eps}};
    j["out_dir"] = c.out_dir;
    j["seed"] = c.seed;
    return j.dump();
}

RangeLabels label_ranges(double x, double y, uint64_t q, double u, double a, double d)
{
    RangeLabels out;
    const double lx = std::log(std::max(x, 1.0));
    const double lll = std::log(lx);  // -inf at x = e^0; the cube stays below any y
    const double very_small_cut = lll * lll * lll;
    const double large_cut = std::exp(std::pow(lx, 0.1));
    if (y < very_small_cut)
        out.y_label = "very small";
    else if (y > large_cut)
        out.y_label = "large";
    else
        out.y_label = "small";
    out.k0 = theorem1_constants(a, d).k0;
    out.sqrt_u = std::sqrt(std::max(u, 0.0));
    out.half_log_q = 0.5 * std::log(static_cast<double>(std::max<uint64_t>(q, 1)));
    return out;
}

DiscrepancyReport discrepancy(const SmoothTable& table, double x, double y, uint64_t q,
                              double a, double d)
{
    if (q == 0) throw ConfigError("discrepancy: q must be positive");
    DiscrepancyReport rep;
    rep.q = q;
    rep.x = x;
    rep.y = y;
    rep.counts = table.class_counts(x, y, q);
    for (uint64_t r = 0; r < q; ++r)
        if (std::gcd(r, q) == 1) rep.psi_q += rep.counts[r];
    if (rep.psi_q == 0)
        throw NumericalError("discrepancy: no smooth numbers coprime to q below x");

    const double phi = static_cast<double>(euler_phi(q));
    double best = -1.0;
    for (uint64_t r = 0; r < q; ++r) {
        if (std::gcd(r, q) != 1) continue;
        const double dev = std::abs(phi * static_cast<double>(rep.counts[r]) /
                                        static_cast<double>(rep.psi_q) -
                                    1.0);
        if (dev > best) {
            best = dev;
            rep.argmax_class = r;
        }
    }
    rep.delta = best;
    const double lx = std::log(x), ly = std::log(y);
    const double lq = std::log(static_cast<double>(q));
    rep.u = ly > 0 ? lx / ly : std::numeric_limits<double>::infinity();
    rep.v = lq > 0 ? lx / lq : std::numeric_limits<double>::infinity();
    rep.labels = label_ranges(x, y, q, rep.u, a, d);
    return rep;
}

double kendall_tau(const std::vector<std::pair<double, double>>& points)
{
    const std::size_t n = points.size();
    if (n < 2) return 0.0;
    long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double prod = (points[j].first - points[i].first) *
                                (points[j].second - points[i].second);
            if (prod > 0) ++concordant;
            else if (prod < 0) ++discordant;
        }
    return static_cast<double>(concordant - discordant) /
           (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

TrendSeries trend(const SmoothTable& table, const std::vector<double>& xs, double y,
                  uint64_t q, double a, double d)
{
    TrendSeries series;
    series.q = q;
    series.y = y;
    std::vector<std::pair<double, double>> pairs;
    for (double x : xs) {
        series.points.push_back(discrepancy(table, x, y, q, a, d));
        pairs.emplace_back(std::log(x), series.points.back().delta);
    }
    series.tau = kendall_tau(pairs);
    return series;
}

RunResult run(const ExperimentConfig& config)
{
    // normalizing through the canonical echo also validates hand-built configs
    const std::string echo = canonical_config(config);
    const ExperimentConfig c = parse_config(echo);
    std::filesystem::create_directories(c.out_dir);
    const auto want = [&](const char* name) {
        return std::find(c.experiments.begin(), c.experiments.end(), name) !=
               c.experiments.end();
    };

    std::optional<SmoothTable> table;
    if (want("equidist")) {
        const double x_max = *std::max_element(c.x.begin(), c.x.end());
        table = SmoothTable::build(static_cast<uint64_t>(x_max), worker_threads());
    }
    std::vector<uint64_t> moduli;
    if (!c.experiments.empty()) {
        const SmoothTable* lookup =
            table && table->x_max() >= c.family.limit ? &*table : nullptr;
        moduli = family_generate(c.family, lookup);
    }

    RunResult result;
    const std::filesystem::path dir(c.out_dir);
    const auto path = [&](const char* name) { return (dir / name).string(); };

    {
        CsvFile eq(path("equidist.csv"),
                   {"q", "x", "y", "u", "v", "psi_q", "delta", "argmax_class",
                    "y_label", "k0", "sqrt_u", "half_log_q", "counts"},
                   echo);
        CsvFile tr(path("trends.csv"), {"q", "y", "n_points", "kendall_tau"}, echo);
        if (want("equidist")) {
            struct PerModulus {
                std::vector<std::vector<std::string>> rows;
                std::vector<std::string> trend_row;
            };
            std::vector<PerModulus> buffers(moduli.size());
            fill_indexed(buffers, [&](std::size_t i) {
                const uint64_t q = moduli[i];
                const double y = c.y_mode == "fixed"
                                     ? c.y_value
                                     : std::pow(static_cast<double>(q), 1.0 / c.a);
                const TrendSeries series = trend(*table, c.x, y, q, c.a, c.d);
                PerModulus out;
                for (const DiscrepancyReport& p : series.points)
                    out.rows.push_back({std::to_string(p.q), fmt_double(p.x),
                                        fmt_double(p.y), fmt_double(p.u),
                                        fmt_double(p.v), std::to_string(p.psi_q),
                                        fmt_double(p.delta),
                                        std::to_string(p.argmax_class),
                                        p.labels.y_label, std::to_string(p.labels.k0),
                                        fmt_double(p.labels.sqrt_u),
                                        fmt_double(p.labels.half_log_q),
                                        join_counts(p.counts)});
                out.trend_row = {std::to_string(series.q), fmt_double(series.y),
                                 std::to_string(series.points.size()),
                                 fmt_double(series.tau)};
                return out;
            });
            for (const auto& buf : buffers) {
                for (const auto& cells : buf.rows) eq.row(cells);
                tr.row(buf.trend_row);
            }
        }
        result.files.push_back(path("equidist.csv"));
        result.files.push_back(path("trends.csv"));
    }

    {
        JsonlFile cj(path("classify.jsonl"), echo);
        if (want("classify")) {
            std::vector<std::string> lines(moduli.size());
            fill_indexed(lines, [&](std::size_t i) {
                return classification_record(classify(moduli[i], c.a, c.d, c.t_max))
                    .dump();
            });
            for (const std::string& line : lines) cj.record(line);
        }
        result.files.push_back(path("classify.jsonl"));
    }

    {
        JsonlFile kj(path("checkers.jsonl"), echo);
        if (want("checkers")) {
            std::vector<std::string> lines(moduli.size());
            fill_indexed(lines, [&](std::size_t i) {
                return checker_record(moduli[i], c.constants, c.t_max).dump();
            });
            for (const std::string& line : lines) kj.record(line);
        }
        result.files.push_back(path("checkers.jsonl"));
    }

    {
        CsvFile cs(path("charsum.csv"),
                   {"q", "char_label", "N", "M", "t", "sigma", "abs_sum", "bound",
                    "ratio", "in_scope"},
                   echo);
        if (want("charsum")) {
            std::vector<std::vector<std::vector<std::string>>> buffers(moduli.size());
            fill_indexed(buffers, [&](std::size_t i) {
                std::vector<std::vector<std::string>> rows;
                const uint64_t q = moduli[i];
                if (q < 16) return rows;  // thresholds need log log q > 1
                auto group = CharacterGroup::make(q);
                std::optional<DirichletCharacter> pick;
                for (const auto& chi : group->enumerate())
                    if (!chi.is_principal() && chi.is_primitive()) {
                        pick = chi;
                        break;
                    }
                if (!pick) return rows;
                const ThresholdParams params = compute_thresholds(
                    q, c.constants.nu, c.constants.tau, c.constants.c3, c.constants.e0);
                for (uint64_t n = 128; n <= 8192; n *= 2) {
                    const ChangRatioReport r =
                        chang_ratio({*pick, n, 2 * n, 0.0, 0.0}, params);
                    rows.push_back({std::to_string(r.q), r.character_label,
                                    std::to_string(r.n_lo), std::to_string(r.n_hi),
                                    fmt_double(r.t), fmt_double(r.sigma),
                                    fmt_double(r.abs_sum), fmt_double(r.bound),
                                    fmt_double(r.ratio),
                                    r.in_scope ? "true" : "false"});
                }
                return rows;
            });
            for (const auto& buf : buffers)
                for (const auto& cells : buf) cs.row(cells);
        }
        result.files.push_back(path("charsum.csv"));
    }

    return result;
}

} // namespace smoothprog
