// Command-line front end: one subcommand per module surface, plus `run`
// for config-driven experiment bundles. Exit codes: 0 success, 2 config
// error, 3 numerical failure, 4 capacity.
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smoothprog/characters.hpp"
#include "smoothprog/charsum.hpp"
#include "smoothprog/checkers.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/harness.hpp"
#include "smoothprog/io.hpp"
#include "smoothprog/lfunc.hpp"
#include "smoothprog/runtime.hpp"
#include "smoothprog/saddle.hpp"
#include "smoothprog/smooth_table.hpp"
#include "smoothprog/zeroscan.hpp"

namespace {

using namespace smoothprog;

double box_radius(const SRect& box)
{
    return 0.5 * std::max(box.width(), box.height());
}

void print_zero_csv(const std::vector<ZeroRecord>& zeros)
{
    std::cout << "character_label,beta,gamma,box_radius,winding\n";
    for (const ZeroRecord& z : zeros)
        std::cout << csv_escape(z.character_label) << "," << fmt_double(z.beta) << ","
                  << fmt_double(z.gamma) << "," << fmt_double(box_radius(z.certified_box))
                  << "," << z.winding_count << "\n";
}

struct SieveArgs {
    double x = 0, y = 0;
    uint64_t q = 0;
    int64_t a = -1;
};

struct AlphaArgs {
    double x = 0, y = 0;
    uint64_t q = 1;
};

struct RhoArgs {
    double u = 0;
};

struct CharsArgs {
    uint64_t q = 0;
};

struct LZerosArgs {
    uint64_t q = 0;
    std::string chi;
    double t_max = 10.0;
    double sigma_lo = 0.0;
};

struct ClassifyArgs {
    uint64_t q = 0;
    double a = 4.0 * std::sqrt(std::exp(1.0));
    double d = 10.0;
    double t_max = 10.0;
};

struct CheckersArgs {
    uint64_t q = 0;
    double t_max = 10.0;
    double c1 = 0.1, c2 = 0.05, eps = 1e-3;
    double big_c1 = 1.0, big_c2 = 1.0;
    std::string chi;
    double m = 0, eta = 0, t = 0;  // iwaniec, when all three are set
    double scale = 0;              // gulp, when set
};

struct CharsumArgs {
    uint64_t q = 0;
    std::string chi;
    uint64_t n_lo = 0, n_hi = 0;
    double sigma = 0, t = 0;
    double nu = 2.0, tau = 1.0, c3 = 1.0;
    int e0 = 3;
};

struct EquidistArgs {
    double x = 0, y = 0;
    uint64_t q = 0;
    double a = 4.0 * std::sqrt(std::exp(1.0));
    double d = 10.0;
};

struct ConstantsArgs {
    double a = 0, d = 0;
};

struct RunArgs {
    std::string config_path;
    std::string out_dir;
    double t_max = 0;
    std::vector<std::string> experiments;
    int threads = 0;
};

DirichletCharacter pick_character(uint64_t q, const std::string& label)
{
    if (!label.empty()) {
        DirichletCharacter chi = parse_character_label(label);
        if (chi.modulus() != q)
            throw ConfigError("--chi modulus does not match --q");
        return chi;
    }
    auto group = CharacterGroup::make(q);
    for (const auto& chi : group->enumerate())
        if (!chi.is_principal() && chi.is_primitive()) return chi;
    throw ConfigError("no primitive nonprincipal character mod " +
                      std::to_string(q) + "; pass --chi");
}

void cmd_sieve(const SieveArgs& a)
{
    const SmoothTable table =
        SmoothTable::build(static_cast<uint64_t>(a.x), worker_threads());
    std::cout << "psi(" << fmt_double(a.x) << ", " << fmt_double(a.y)
              << ") = " << table.psi(a.x, a.y) << "\n";
    if (a.q) {
        std::cout << "psi_coprime(q=" << a.q << ") = " << table.psi_coprime(a.x, a.y, a.q)
                  << "\n";
        if (a.a >= 0)
            std::cout << "psi_progression(a=" << a.a
                      << ") = " << table.psi_progression(a.x, a.y, a.q, a.a) << "\n";
    }
}

void cmd_alpha(const AlphaArgs& a)
{
    const SaddleResult s = solve_alpha(a.x, a.y);
    std::cout << "alpha = " << fmt_double(s.alpha) << "\n";
    std::cout << "residual = " << fmt_double(s.residual) << "\n";
    std::cout << "E_q(x, y) log = " << fmt_double(estimate_E_log(a.x, a.y, a.q))
              << " (q = " << a.q << ")\n";
}

void cmd_rho(const RhoArgs& a)
{
    const DickmanRho rho;
    std::cout << "rho(" << fmt_double(a.u) << ") = " << fmt_double(rho(a.u)) << "\n";
}

void cmd_chars(const CharsArgs& a)
{
    auto group = CharacterGroup::make(a.q);
    std::cout << "label,order,conductor,primitive,real,principal\n";
    for (const auto& chi : group->enumerate())
        std::cout << csv_escape(chi.label()) << "," << chi.order() << ","
                  << chi.conductor() << "," << (chi.is_primitive() ? "true" : "false")
                  << "," << (chi.is_real() ? "true" : "false") << ","
                  << (chi.is_principal() ? "true" : "false") << "\n";
}

void cmd_lzeros(const LZerosArgs& a)
{
    auto group = CharacterGroup::make(a.q);
    const LEvaluator ev(group);
    std::vector<DirichletCharacter> targets;
    if (!a.chi.empty()) {
        DirichletCharacter chi = parse_character_label(a.chi);
        if (chi.modulus() != a.q) throw ConfigError("--chi modulus does not match --q");
        if (chi.is_principal())
            throw ConfigError("principal L has a pole at s = 1; scan nonprincipal "
                              "characters");
        targets.push_back(chi);
    } else {
        for (const auto& chi : group->enumerate())
            if (!chi.is_principal()) targets.push_back(chi);
    }
    std::vector<ZeroRecord> zeros;
    for (const auto& chi : targets) {
        const SRect rect{a.sigma_lo, 1.2, -a.t_max, a.t_max};
        const ScanReport report = scan_zeros(ev, chi, rect, 1e-3);
        std::cout << "# " << chi.label() << " coverage_ok="
                  << (report.coverage_ok ? "true" : "false")
                  << " l_evals=" << report.l_evals << "\n";
        zeros.insert(zeros.end(), report.zeros.begin(), report.zeros.end());
    }
    print_zero_csv(zeros);
}

void cmd_classify(const ClassifyArgs& a)
{
    const Classification c = classify(a.q, a.a, a.d, a.t_max);
    std::cout << "q = " << c.q << ", k0 = " << c.k0 << ", k_cap = " << c.k_cap
              << ", problem characters = " << c.problem_count
              << ", indeterminate = " << c.indeterminate_count << "\n";
    std::cout << "xi_counts =";
    for (int n : c.xi_counts) std::cout << " " << n;
    std::cout << "\n";
    if (c.exceptional)
        std::cout << "exceptional zero: " << c.exceptional->character_label
                  << " beta = " << fmt_double(c.exceptional->beta) << "\n";
    std::cout << "label,conductor,xi_index,beta_max,in_problem_set,indeterminate\n";
    for (const CharacterClass& e : c.entries)
        std::cout << csv_escape(e.label) << "," << e.conductor << "," << e.xi_index
                  << "," << fmt_double(e.beta_max) << ","
                  << (e.in_problem_set ? "true" : "false") << ","
                  << (e.indeterminate ? "true" : "false") << "\n";
}

void cmd_checkers(const CheckersArgs& a)
{
    const ZeroFreeReport zf = zero_free_region_check(a.q, a.c1, a.t_max);
    std::cout << "zero_free: verdict=" << verdict_name(zf.verdict)
              << " zeros=" << zf.zeros.size() << " offenders=" << zf.offenders.size()
              << " region_sigma_at_0=" << fmt_double(zf.region_sigma_at_0)
              << " complete=" << (zf.scans_complete ? "true" : "false") << "\n";
    if (a.q >= 2) {
        const RepulsionReport rp = deuring_heilbronn_check(a.q, a.eps, a.c2, a.t_max);
        std::cout << "repulsion: verdict=" << verdict_name(rp.verdict)
                  << " beta0=" << fmt_double(rp.beta0)
                  << " margin=" << fmt_double(rp.repulsion_margin)
                  << " offenders=" << rp.offenders.size() << "\n";
    }
    const DensityReport dn = density_count_check(a.q, a.t_max, a.big_c1, a.big_c2);
    std::cout << "density: verdict=" << verdict_name(dn.verdict) << " counts=";
    for (std::size_t k = 0; k < dn.counts.size(); ++k)
        std::cout << (k ? ";" : "") << dn.counts[k];
    std::cout << " phi=" << dn.phi
              << " sum_bounded=" << (dn.sum_bounded ? "true" : "false") << "\n";

    if (!a.chi.empty()) {
        const DirichletCharacter chi = pick_character(a.q, a.chi);
        if (a.m > 0 && a.eta > 0 && a.t > 0) {
            const IwaniecReport iw = iwaniec_condition_check(chi, a.m, a.eta, a.t);
            std::cout << "iwaniec: eta_condition=" << (iw.eta_condition ? "true" : "false")
                      << " grid_max=" << fmt_double(iw.grid_max_abs)
                      << " bound_holds=" << (iw.bound_holds_sampled ? "true" : "false")
                      << " no_zero=" << verdict_name(iw.no_zero_verdict)
                      << " vartheta=" << fmt_double(iw.vartheta) << "\n";
        }
        if (a.scale > 0) {
            const GulpReport g = gulp_region_check(chi, a.scale, a.t_max);
            std::cout << "gulp: verdict=" << verdict_name(g.verdict)
                      << " width_at_0=" << fmt_double(g.width_at_0)
                      << " offenders=" << g.offenders.size()
                      << " vacuous=" << (g.vacuous ? "true" : "false") << "\n";
        }
    }
}

void cmd_charsum(const CharsumArgs& a)
{
    const DirichletCharacter chi = pick_character(a.q, a.chi);
    const SumQuery query{chi, a.n_lo, a.n_hi, a.sigma, a.t};
    const std::complex<double> sum = char_sum(query);
    std::cout << "chi = " << chi.label() << "\n";
    std::cout << "sum = " << fmt_double(sum.real()) << " + " << fmt_double(sum.imag())
              << "i, |sum| = " << fmt_double(std::abs(sum)) << "\n";
    if (a.q >= 16) {
        const ThresholdParams params =
            compute_thresholds(a.q, a.nu, a.tau, a.c3, a.e0);
        const ChangRatioReport rep = chang_ratio(query, params);
        std::cout << "q_flat = " << fmt_double(params.q_flat)
                  << ", xi = " << fmt_double(params.xi)
                  << ", scope_vacuous = " << (params.scope_vacuous ? "true" : "false")
                  << "\n";
        std::cout << "bound = " << fmt_double(rep.bound)
                  << ", ratio = " << fmt_double(rep.ratio)
                  << ", in_scope = " << (rep.in_scope ? "true" : "false") << "\n";
    } else {
        std::cout << "thresholds need q >= 16; raw sum only\n";
    }
}

void cmd_equidist(const EquidistArgs& a)
{
    const SmoothTable table =
        SmoothTable::build(static_cast<uint64_t>(a.x), worker_threads());
    const DiscrepancyReport rep = discrepancy(table, a.x, a.y, a.q, a.a, a.d);
    std::cout << "q = " << rep.q << ", x = " << fmt_double(rep.x)
              << ", y = " << fmt_double(rep.y) << "\n";
    std::cout << "u = " << fmt_double(rep.u) << ", v = " << fmt_double(rep.v)
              << ", y range: " << rep.labels.y_label << "\n";
    std::cout << "psi_q = " << rep.psi_q << ", delta = " << fmt_double(rep.delta)
              << " at class " << rep.argmax_class << "\n";
    std::cout << "k ranges: problem < " << rep.labels.k0 << " <= Rodosskii < "
              << fmt_double(rep.labels.sqrt_u) << " <= basic <= "
              << fmt_double(rep.labels.half_log_q) << "\n";
    std::cout << "counts =";
    for (int64_t n : rep.counts) std::cout << " " << n;
    std::cout << "\n";
}

void cmd_constants(const ConstantsArgs& a)
{
    const Theorem1Constants c = theorem1_constants(a.a, a.d);
    std::cout << "k0 = " << c.k0 << "\n";
    std::cout << "Q_A = " << c.q_a << "\n";
}

void cmd_run(const RunArgs& a)
{
    std::ifstream f(a.config_path);
    if (!f) throw ConfigError("run: cannot open config " + a.config_path);
    std::ostringstream text;
    text << f.rdbuf();
    ExperimentConfig config = parse_config(text.str());
    if (!a.out_dir.empty()) config.out_dir = a.out_dir;
    if (a.t_max > 0) config.t_max = a.t_max;
    if (!a.experiments.empty()) config.experiments = a.experiments;
    if (a.threads > 0) setenv("SMOOTHPROG_THREADS", std::to_string(a.threads).c_str(), 1);
    const RunResult result = run(config);
    for (const std::string& file : result.files) std::cout << file << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"smooth-number and Dirichlet L-function experiment toolkit"};
    app.require_subcommand(1);

    SieveArgs sieve;
    auto* s = app.add_subcommand("sieve", "count y-smooth numbers up to x");
    s->add_option("--x", sieve.x, "count limit")->required();
    s->add_option("--y", sieve.y, "smoothness bound")->required();
    s->add_option("--q", sieve.q, "also report the count coprime to q");
    s->add_option("--a", sieve.a, "also report the class a mod q");
    s->callback([&] { cmd_sieve(sieve); });

    AlphaArgs alpha;
    auto* al = app.add_subcommand("alpha", "saddle point and main-term scale");
    al->add_option("--x", alpha.x, "")->required();
    al->add_option("--y", alpha.y, "")->required();
    al->add_option("--q", alpha.q, "modulus for the Euler-factor removal");
    al->callback([&] { cmd_alpha(alpha); });

    RhoArgs rho;
    auto* rh = app.add_subcommand("rho", "Dickman rho");
    rh->add_option("--u", rho.u, "")->required();
    rh->callback([&] { cmd_rho(rho); });

    CharsArgs chars;
    auto* ch = app.add_subcommand("chars", "list the character group mod q");
    ch->add_option("--q", chars.q, "")->required();
    ch->callback([&] { cmd_chars(chars); });

    LZerosArgs lzeros;
    auto* lz = app.add_subcommand("lzeros", "scan L-function zeros");
    lz->add_option("--q", lzeros.q, "")->required();
    lz->add_option("--chi", lzeros.chi, "character label; default all nonprincipal");
    lz->add_option("--t-max", lzeros.t_max, "scan height");
    lz->add_option("--sigma-lo", lzeros.sigma_lo, "left edge of the scan rectangle");
    lz->callback([&] { cmd_lzeros(lzeros); });

    ClassifyArgs classify_args;
    auto* cl = app.add_subcommand("classify", "zero-free depth classification mod q");
    cl->add_option("--q", classify_args.q, "")->required();
    cl->add_option("--a", classify_args.a, "hypothesis strength A");
    cl->add_option("--d", classify_args.d, "additive constant D");
    cl->add_option("--t-max", classify_args.t_max, "scan height");
    cl->callback([&] { cmd_classify(classify_args); });

    CheckersArgs checkers;
    auto* ck = app.add_subcommand("checkers", "zero-region verdicts for one modulus");
    ck->add_option("--q", checkers.q, "")->required();
    ck->add_option("--t-max", checkers.t_max, "scan height");
    ck->add_option("--c1", checkers.c1, "zero-free region strength");
    ck->add_option("--c2", checkers.c2, "repulsion depth factor");
    ck->add_option("--eps", checkers.eps, "supplied exceptional-zero distance");
    ck->add_option("--C1", checkers.big_c1, "density profile scale");
    ck->add_option("--C2", checkers.big_c2, "density profile growth");
    ck->add_option("--chi", checkers.chi, "character for the per-character checks");
    ck->add_option("--m", checkers.m, "sampled |L| bound (with --chi)");
    ck->add_option("--eta", checkers.eta, "strip width (with --chi)");
    ck->add_option("--t", checkers.t, "strip height (with --chi)");
    ck->add_option("--scale", checkers.scale, "nonreal-zero region scale (with --chi)");
    ck->callback([&] { cmd_checkers(checkers); });

    CharsumArgs charsum;
    auto* cs = app.add_subcommand("charsum", "twisted interval character sum");
    cs->add_option("--q", charsum.q, "")->required();
    cs->add_option("--chi", charsum.chi, "character label; default first primitive");
    cs->add_option("--n-lo", charsum.n_lo, "interval start, exclusive")->required();
    cs->add_option("--n-hi", charsum.n_hi, "interval end, inclusive")->required();
    cs->add_option("--sigma", charsum.sigma, "real twist exponent");
    cs->add_option("--t", charsum.t, "imaginary twist");
    cs->add_option("--nu", charsum.nu, "scope exponent: N <= q^nu");
    cs->add_option("--tau", charsum.tau, "height exponent");
    cs->add_option("--c3", charsum.c3, "q_flat exponent numerator");
    cs->add_option("--e0", charsum.e0, "q_flat prime-power exponent");
    cs->callback([&] { cmd_charsum(charsum); });

    EquidistArgs equidist;
    auto* eq = app.add_subcommand("equidist", "class discrepancy of smooth numbers");
    eq->add_option("--x", equidist.x, "")->required();
    eq->add_option("--y", equidist.y, "")->required();
    eq->add_option("--q", equidist.q, "")->required();
    eq->add_option("--a", equidist.a, "hypothesis strength A");
    eq->add_option("--d", equidist.d, "additive constant D");
    eq->callback([&] { cmd_equidist(equidist); });

    ConstantsArgs constants;
    auto* co = app.add_subcommand("constants", "problem-range constants");
    co->add_option("--a", constants.a, "hypothesis strength A")->required();
    co->add_option("--d", constants.d, "additive constant D")->required();
    co->callback([&] { cmd_constants(constants); });

    RunArgs run_args;
    auto* ru = app.add_subcommand("run", "execute a config-driven experiment bundle");
    ru->add_option("--config", run_args.config_path, "JSON config path")->required();
    ru->add_option("--out", run_args.out_dir, "override out_dir");
    ru->add_option("--t-max", run_args.t_max, "override T_max");
    ru->add_option("--experiments", run_args.experiments, "override experiment list");
    ru->add_option("--threads", run_args.threads, "worker pool size");
    ru->callback([&] { cmd_run(run_args); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const smoothprog::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const smoothprog::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const smoothprog::CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
