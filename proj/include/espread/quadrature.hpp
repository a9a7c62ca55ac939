#pragma once

#include <functional>
#include <vector>

namespace espread {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7,15) integration of f over [a, b].
/// Panels are bisected worst-error-first until the summed error estimate
/// drops below max(abs_tol, rel_tol*|value|). Integrable endpoint
/// singularities converge through the bisection cascade (Kronrod nodes are
/// interior). Throws DivergentIntegralError if the budget is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol = 1e-10, double abs_tol = 0.0,
                                    int max_panels = 20000);

/// Convenience: integrate over a union of contiguous intervals given by
/// breakpoints (sorted). Each subinterval is integrated adaptively.
QuadratureResult integrate_adaptive_segments(const std::function<double(double)>& f,
                                             const std::vector<double>& breakpoints,
                                             double rel_tol = 1e-10, double abs_tol = 0.0,
                                             int max_panels = 20000);

}  // namespace espread
