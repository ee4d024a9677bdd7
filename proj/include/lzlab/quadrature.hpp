#pragma once

#include <functional>

namespace lzlab {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    bool converged = true;
};

// Adaptive Simpson with Richardson correction; absolute tolerance.
QuadResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                            double tol, int max_depth = 48);

// Adaptive 7/15-point Gauss-Kronrod, bisecting the worst panel until the
// summed error estimate is below tol. `panels` initial equal subintervals.
QuadResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a, double b,
                                  double tol, int panels = 1, int max_evals = 2'000'000);

}  // namespace lzlab
