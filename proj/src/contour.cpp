#include "smoothprog/contour.hpp"
#include "smoothprog/errors.hpp"
#include "smoothprog/primes.hpp"
#include "smoothprog/quadrature.hpp"
#include "smoothprog/saddle.hpp"

#include <cmath>

namespace smoothprog {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

std::complex<double> psi_smoothed(const SmoothTable& table, const DirichletCharacter& chi,
                                  double x, double y, const CutoffSpec& spec)
{
    if (!(x >= 1)) throw ConfigError("psi_smoothed: need x >= 1");
    if (2 * x > static_cast<double>(table.x_max()) + 1)
        throw ConfigError("psi_smoothed: table must cover 2x");
    const uint64_t q = chi.modulus();
    const uint64_t lambda = chi.group().lambda();
    const uint64_t nmax = static_cast<uint64_t>(std::ceil(2 * x)) - 1;

    // chi is periodic: resolve each residue's rotation once
    std::vector<int64_t> rot_of(q);
    for (uint64_t r = 0; r < q; ++r) rot_of[r] = chi.rotation(r);

    std::vector<double> buckets(lambda, 0.0);
    const uint64_t cap = y >= 1 ? static_cast<uint64_t>(std::min(y, 4294967296.0)) : 0;
    for (uint64_t n = 1; n <= nmax && n <= table.x_max(); ++n) {
        if (table.lpf(n) > cap) continue;
        const int64_t rot = rot_of[n % q];
        if (rot < 0) continue;
        buckets[static_cast<size_t>(rot)] += spec.phi(double(n) / x);
    }
    std::complex<double> sum = 0;
    for (uint64_t k = 0; k < lambda; ++k)
        if (buckets[k] != 0.0)
            sum += buckets[k] * chi.group().root_of_unity(static_cast<int64_t>(k));
    return sum;
}

std::complex<double> truncated_L(const DirichletCharacter& chi, std::complex<double> s,
                                 double y)
{
    if (!(s.real() > 0)) throw ConfigError("truncated_L: need Re s > 0");
    std::complex<double> acc = 0;
    for (uint32_t p : primes_up_to(static_cast<uint64_t>(y))) {
        const int64_t rot = chi.rotation(p);
        if (rot < 0) continue;
        const std::complex<double> w =
            chi.group().root_of_unity(rot) * std::exp(-s * std::log(double(p)));
        acc -= std::log(1.0 - w);
    }
    return std::exp(acc);
}

double truncated_L_log_principal(double sigma, double y, uint64_t q)
{
    if (!(sigma > 0)) throw ConfigError("truncated_L_log_principal: need sigma > 0");
    if (q == 0) throw ConfigError("truncated_L_log_principal: q must be positive");
    double acc = 0;
    for (uint32_t p : primes_up_to(static_cast<uint64_t>(y))) {
        if (q % p == 0) continue;
        acc -= std::log(-std::expm1(-sigma * std::log(double(p))));
    }
    return acc;
}

ContourReport contour_psi(const DirichletCharacter& chi, double x, double y,
                          const CutoffSpec& spec, double T_num)
{
    const uint64_t q = chi.modulus();
    const auto saddle = solve_alpha(x, y);
    const double alpha = saddle.alpha;
    const double logx = std::log(x);

    ContourReport rep;
    rep.x = x;
    rep.y = y;
    rep.alpha = alpha;
    rep.T = T_num > 0 ? T_num : std::max(500.0, 4.0 * std::pow(y * double(q), 0.25));
    rep.split = std::min(std::pow(y * double(q), 0.25), rep.T);

    // integrand pieces reused at every node
    const auto ps = primes_up_to(static_cast<uint64_t>(y));
    std::vector<double> logp;
    std::vector<std::complex<double>> chip;
    for (uint32_t p : ps) {
        const int64_t rot = chi.rotation(p);
        if (rot < 0) continue;
        logp.push_back(std::log(double(p)));
        chip.push_back(chi.group().root_of_unity(rot));
    }
    long evals = 0;
    auto integrand = [&](double t) -> std::complex<double> {
        ++evals;
        const std::complex<double> s(alpha, t);
        std::complex<double> logL = 0;
        for (size_t i = 0; i < logp.size(); ++i) {
            const std::complex<double> w = chip[i] * std::exp(-s * logp[i]);
            logL -= std::log(1.0 - w);
        }
        return std::exp(logL + s * logx) * spec.mellin(s);
    };

    // tolerance anchored at the t = 0 magnitude of the principal product
    const double scale =
        std::exp(alpha * logx + truncated_L_log_principal(alpha, y, q)) *
        std::abs(spec.mellin(std::complex<double>(alpha, 0.0)));

    // panel edges: short panels near t = 0 (width ~ pi / (2 log x), where
    // x^(it) turns slowly), growing geometrically; tails split per decade
    std::vector<double> edges{0.0};
    {
        double w = std::min(rep.split, 3.1415926535897932 / (2.0 * std::max(logx, 2.0)));
        double t = 0;
        while (t < rep.split) {
            t = std::min(t + w, rep.split);
            edges.push_back(t);
            w *= 1.6;
        }
        while (t < rep.T) {
            t = std::min(t * 2.0, rep.T);
            if (t > edges.back()) edges.push_back(t);
        }
        if (edges.back() < rep.T) edges.push_back(rep.T);
    }

    QuadOptions opt;
    opt.max_depth = 30;
    opt.abs_tol = 1e-10 * std::max(scale, 1e-300) / double(edges.size());
    opt.rel_tol = 1e-10;

    std::complex<double> ic = 0, ip = 0, im = 0;
    double err = 0;
    for (size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k], b = edges[k + 1];
        const auto rpos = integrate_gk(integrand, a, b, opt);
        const auto rneg = integrate_gk(integrand, -b, -a, opt);
        err += rpos.err_est + rneg.err_est;
        if (b <= rep.split + 1e-12) {
            ic += rpos.value + rneg.value;
        } else {
            ip += rpos.value;
            im += rneg.value;
        }
    }
    rep.I_center = ic;
    rep.I_plus = ip;
    rep.I_minus = im;
    rep.total = (ic + ip + im) / kTwoPi;
    rep.quad_err_est = err;
    rep.tail_bound = std::abs(integrand(rep.T)) * rep.T / (8.0 * 3.1415926535897932);
    rep.evals = evals;
    return rep;
}

std::vector<std::pair<double, double>> l_ratio_profile(const DirichletCharacter& chi,
                                                       double y, double alpha,
                                                       const std::vector<double>& ts)
{
    const double denom = std::exp(truncated_L_log_principal(alpha, y, chi.modulus()));
    std::vector<std::pair<double, double>> rows;
    rows.reserve(ts.size());
    for (double t : ts) {
        const auto L = truncated_L(chi, std::complex<double>(alpha, t), y);
        rows.emplace_back(t, std::abs(L) / denom);
    }
    return rows;
}

} // namespace smoothprog
