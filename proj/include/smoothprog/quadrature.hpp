#pragma once
#include <complex>
#include <functional>

namespace smoothprog {

// Adaptive Gauss-Kronrod 7/15 on a real interval, complex-valued integrand.
// Panels are bisected until the Kronrod-Gauss difference meets the local
// share of the absolute tolerance or the relative tolerance; the reported
// err_est is the sum of accepted panel differences, so callers can verify
// their target was met. Deterministic: recursion order is fixed and no
// tolerance depends on timing.
struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;
    int max_depth = 48;
    long max_evals = 40'000'000;
};

struct QuadResult {
    std::complex<double> value;
    double err_est;
    long evals;
    bool depth_exhausted;   // some panel hit max_depth; its error is included
};

QuadResult integrate_gk(const std::function<std::complex<double>(double)>& f,
                        double a, double b, const QuadOptions& opt = {});

} // namespace smoothprog
