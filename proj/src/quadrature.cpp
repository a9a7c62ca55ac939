#include "espread/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "espread/errors.hpp"

namespace espread {

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1] (QUADPACK dqk15 values).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double integral;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double fv[15];
  for (int k = 0; k < 7; ++k) {
    fv[k] = f(center - half * kXgk[k]);
    fv[14 - k] = f(center + half * kXgk[k]);
  }
  fv[7] = f(center);

  double kronrod = kWgk[7] * fv[7];
  double gauss = kWg[3] * fv[7];
  for (int k = 0; k < 7; ++k) {
    kronrod += kWgk[k] * (fv[k] + fv[14 - k]);
    if (k % 2 == 1) gauss += kWg[k / 2] * (fv[k] + fv[14 - k]);
  }
  kronrod *= half;
  gauss *= half;

  // QUADPACK-style rescaled error estimate; never below the raw difference.
  double err = std::abs(kronrod - gauss);
  if (err > 0.0) err = std::min(err, std::pow(200.0 * err, 1.5));
  return Panel{a, b, kronrod, err};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, double abs_tol, int max_panels) {
  return integrate_adaptive_segments(f, {a, b}, rel_tol, abs_tol, max_panels);
}

QuadratureResult integrate_adaptive_segments(const std::function<double(double)>& f,
                                             const std::vector<double>& breakpoints,
                                             double rel_tol, double abs_tol, int max_panels) {
  if (breakpoints.size() < 2) throw ValidationError("quadrature needs at least one interval");

  std::priority_queue<Panel> queue;
  double total = 0.0;
  double total_err = 0.0;
  int evals = 0;

  auto push = [&](Panel p) {
    total += p.integral;
    total_err += p.error;
    evals += 15;
    queue.push(p);
  };

  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw ValidationError("quadrature breakpoints must be strictly increasing");
    push(evaluate_panel(f, breakpoints[i], breakpoints[i + 1]));
  }

  int panels = static_cast<int>(breakpoints.size()) - 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (panels >= max_panels)
      throw DivergentIntegralError("adaptive quadrature did not converge (error estimate " +
                                   std::to_string(total_err) + ")");
    Panel worst = queue.top();
    queue.pop();
    total -= worst.integral;
    total_err -= worst.error;

    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw DivergentIntegralError("adaptive quadrature hit the resolution limit");
    push(evaluate_panel(f, worst.a, mid));
    push(evaluate_panel(f, mid, worst.b));
    ++panels;
  }

  return QuadratureResult{total, total_err, evals};
}

}  // namespace espread
