#include "espread/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "espread/errors.hpp"

namespace espread::analysis {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double wigner_time(double eps, double s, double hbar) {
  if (!(s < 2.0)) throw ValidationError("wigner_time: requires s < 2");
  if (!(eps > 0.0)) throw ValidationError("wigner_time: requires eps > 0");
  return std::pow(hbar / eps, 2.0 / (2.0 - s));
}

double universal_diffusion(double eps, double s, double hbar) {
  const double t = wigner_time(eps, s, hbar);
  return hbar * hbar / (t * t * t);
}

double universal_diffusion_scaling(double eps, double s, double hbar) {
  if (!(s < 2.0)) throw ValidationError("universal_diffusion: requires s < 2");
  return std::pow(hbar, -2.0 * (s + 1.0) / (2.0 - s)) * std::pow(eps, 6.0 / (2.0 - s));
}

double fgr_rate(double eps, double hbar) {
  if (!(eps >= 0.0)) throw ValidationError("fgr_rate: requires eps >= 0");
  return 2.0 * kPi * eps * eps / hbar;
}

double theory_spreading(double s, double eps, double t, const SystemScales& scales) {
  if (s == 0.0) throw ValidationError("theory_spreading: s = 0 is not covered");
  if (!(t > 0.0)) throw ValidationError("theory_spreading: requires t > 0");
  const double t_eff = std::max(t, scales.t_cl());
  if (s > 0.0) return eps * std::pow(scales.omega_cl, 0.5 * s);
  const double t_eps = wigner_time(eps, s, scales.hbar);
  if (t_eff < t_eps) return eps * std::pow(t_eff, 0.5 * std::abs(s));
  return scales.hbar / t_eps;
}

double theory_diffusion(double s, double eps, double t_phi, const SystemScales& scales,
                        DiffusionRegime regime) {
  if (regime == DiffusionRegime::intrinsic) return universal_diffusion(eps, s, scales.hbar);
  if (!(t_phi > 0.0)) throw ValidationError("theory_diffusion: requires t_phi > 0");
  if (s == 0.0) throw ValidationError("theory_diffusion: s = 0 is not covered");

  if (regime == DiffusionRegime::lrt) {
    if (s > 0.0) return eps * eps * std::pow(scales.omega_cl, s) / t_phi;
    const double t_eps = wigner_time(eps, s, scales.hbar);
    if (t_phi > t_eps)
      throw ValidationError("theory_diffusion: LRT form for s < 0 needs t_phi <= t_eps");
    return eps * eps * std::pow(t_phi, std::abs(s) - 1.0);
  }

  // strong driving: saturated coherent spreading, s < 0 and t_phi > t_eps
  if (!(s < 0.0)) throw ValidationError("theory_diffusion: strong driving needs s < 0");
  const double t_eps = wigner_time(eps, s, scales.hbar);
  if (t_phi < t_eps)
    throw ValidationError("theory_diffusion: strong driving needs t_phi >= t_eps");
  const double a = std::abs(s);
  return std::pow(scales.hbar, 2.0 * a / (2.0 + a)) * std::pow(eps, 4.0 / (2.0 + a)) / t_phi;
}

double core_width(double s, double eps, double t, double hbar) {
  if (!(s < 0.0)) throw ValidationError("core_width: requires s < 0");
  if (!(t > 0.0)) throw ValidationError("core_width: requires t > 0");
  const double a = std::abs(s);
  const double u = eps * t / hbar;
  return std::pow(std::pow(t, a) + 1.0 / (u * u), -1.0 / a);
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y,
                     std::span<const double> sigma) {
  const std::size_t n = x.size();
  if (y.size() != n || (!sigma.empty() && sigma.size() != n))
    throw ValidationError("fit_linear: size mismatch");
  if (n < 2) throw ValidationError("fit_linear: need at least 2 points");

  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (!sigma.empty()) {
      if (!(sigma[i] > 0.0)) throw ValidationError("fit_linear: weights require sigma > 0");
      w = 1.0 / (sigma[i] * sigma[i]);
    }
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
    sxx += w * x[i] * x[i];
    sxy += w * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  if (det <= 0.0) throw ValidationError("fit_linear: degenerate abscissae");

  LinearFit fit;
  fit.points = static_cast<int>(n);
  fit.slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sxx * sy - sx * sxy) / det;
  fit.slope_stderr = std::sqrt(sw / det);
  fit.intercept_stderr = std::sqrt(sxx / det);

  double chi2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    const double w = sigma.empty() ? 1.0 : 1.0 / (sigma[i] * sigma[i]);
    chi2 += w * r * r;
  }
  fit.chi2_reduced = (n > 2) ? chi2 / static_cast<double>(n - 2) : 0.0;
  if (sigma.empty()) {
    // unweighted: scale parameter errors by the residual variance estimate
    const double s2 = (n > 2) ? chi2 / static_cast<double>(n - 2) : 0.0;
    fit.slope_stderr *= std::sqrt(s2);
    fit.intercept_stderr *= std::sqrt(s2);
  }
  return fit;
}

LinearFit fit_loglog(std::span<const double> x, std::span<const double> y, double x_lo,
                     double x_hi, std::span<const double> sigma) {
  std::vector<double> lx, ly, ls;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x_lo || x[i] > x_hi) continue;
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
    if (!sigma.empty()) ls.push_back(sigma[i] / y[i]);  // d(log y) = dy / y
  }
  return fit_linear(lx, ly, ls);
}

DiffusionEstimate fit_diffusion(const dynamics::SpreadingCurve& curve, const FitWindow& window,
                                double chi2_threshold) {
  if (!(window.t_lo < window.t_hi)) throw ValidationError("fit_diffusion: empty window");

  std::vector<double> t, v, s;
  const bool weighted = !curve.std_error.empty();
  for (std::size_t i = 0; i < curve.times.size(); ++i) {
    if (curve.times[i] < window.t_lo || curve.times[i] > window.t_hi) continue;
    t.push_back(curve.times[i]);
    v.push_back(curve.variance[i]);
    if (weighted) {
      const double se = curve.std_error[i];
      s.push_back(se > 0.0 ? se : 1e-300);
    }
  }
  if (t.size() < 5)
    throw ValidationError("fit_diffusion: fewer than 5 samples in the fit window");

  const LinearFit lin = fit_linear(t, v, s);

  DiffusionEstimate est;
  est.d = 0.5 * lin.slope;
  est.d_stderr = 0.5 * lin.slope_stderr;
  est.intercept = lin.intercept;
  est.chi2_reduced = lin.chi2_reduced;
  est.window = window;
  est.points = lin.points;

  const auto& p = curve.params;
  est.s0 = p.s0;
  est.sigma = p.sigma;
  est.eps = p.eps;
  est.fdot = p.fdot;
  est.hbar = p.hbar;
  const double s_eff = p.s_effective();
  if (p.eps > 0.0 && s_eff < 2.0) {
    est.t_eps = wigner_time(p.eps, s_eff, p.hbar);
    est.x = std::pow(p.eps, 2.0 / (2.0 - s_eff));
    est.y = est.d / std::pow(p.eps, 6.0 / (2.0 - s_eff));
  }

  const bool negative = est.d < -2.0 * est.d_stderr;
  const bool bad_residuals = weighted && lin.chi2_reduced > chi2_threshold;
  est.diffusive = !negative && !bad_residuals;
  return est;
}

CollapseResult rescale_collapse(std::span<const dynamics::SpreadingCurve> curves) {
  if (curves.empty()) throw ValidationError("rescale_collapse: no curves");
  const double s_ref = curves[0].params.s_effective();
  for (const auto& c : curves) {
    if (std::abs(c.params.s_effective() - s_ref) > 1e-12)
      throw ValidationError("rescale_collapse: curves with mismatched s");
    if (!(c.params.eps > 0.0))
      throw ValidationError("rescale_collapse: curves must carry eps > 0");
  }

  CollapseResult result;
  double x_min = 0.0, x_max = std::numeric_limits<double>::infinity();
  double t_cl_scaled_max = 0.0;
  for (const auto& c : curves) {
    RescaledCurve r;
    r.params = c.params;
    r.t_eps = wigner_time(c.params.eps, s_ref, c.params.hbar);
    const double y_scale = (r.t_eps * r.t_eps) / (c.params.hbar * c.params.hbar);
    double first_positive = 0.0;
    for (std::size_t i = 0; i < c.times.size(); ++i) {
      const double x = c.times[i] / r.t_eps;
      r.t_scaled.push_back(x);
      r.var_scaled.push_back(c.variance[i] * y_scale);
      if (x > 0.0 && first_positive == 0.0) first_positive = x;
    }
    if (c.params.band > 0) {
      const double omega_cl = c.params.band / (c.params.hbar * 1.0);
      t_cl_scaled_max = std::max(t_cl_scaled_max, 2.0 * kPi / omega_cl / r.t_eps);
    }
    x_min = std::max(x_min, first_positive);
    x_max = std::min(x_max, r.t_scaled.back());
    result.curves.push_back(std::move(r));
  }

  // Common transient window: clear of the classical correlation time, below
  // the Wigner-time crossover.
  result.window_lo = std::max({x_min, 2.0 * t_cl_scaled_max, 1e-12});
  result.window_hi = std::min(x_max, 0.5);
  if (!(result.window_lo < result.window_hi)) {
    // no transient overlap; fall back to the full common range
    result.window_lo = x_min;
    result.window_hi = x_max;
  }

  if (curves.size() < 2 || !(result.window_lo < result.window_hi)) {
    result.max_relative_spread = 0.0;
    return result;
  }

  // log-space interpolation of each curve onto a common grid
  auto interpolate = [](const RescaledCurve& c, double x) {
    const auto& xs = c.t_scaled;
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    std::size_t hi = std::clamp<std::size_t>(it - xs.begin(), 1, xs.size() - 1);
    const std::size_t lo = hi - 1;
    const double x0 = xs[lo], x1 = xs[hi];
    const double y0 = c.var_scaled[lo], y1 = c.var_scaled[hi];
    if (!(x0 > 0.0) || !(y0 > 0.0) || !(y1 > 0.0)) {
      const double w = (x - x0) / (x1 - x0);
      return (1.0 - w) * y0 + w * y1;
    }
    const double w = std::log(x / x0) / std::log(x1 / x0);
    return std::exp((1.0 - w) * std::log(y0) + w * std::log(y1));
  };

  const int grid_points = 33;
  double spread = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double f = static_cast<double>(k) / (grid_points - 1);
    const double x = result.window_lo * std::pow(result.window_hi / result.window_lo, f);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0, sum = 0.0;
    for (const auto& c : result.curves) {
      const double y = interpolate(c, x);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
      sum += y;
    }
    const double mean = sum / static_cast<double>(result.curves.size());
    if (mean > 0.0) spread = std::max(spread, (hi - lo) / mean);
  }
  result.max_relative_spread = spread;
  return result;
}

}  // namespace espread::analysis
