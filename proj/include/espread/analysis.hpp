#pragma once

#include <span>
#include <vector>

#include "espread/spreading.hpp"

namespace espread::analysis {

/// Characteristic scales of the model. omega0 is the mean level spacing,
/// omega_cl the bandwidth (ballistic Thouless energy).
struct SystemScales {
  double omega0 = 1.0;
  double omega_cl = 50.0;
  double hbar = 1.0;
  double rho = 1.0;

  double t_cl() const { return 2.0 * 3.14159265358979323846 / omega_cl; }
  double t_heisenberg() const { return 2.0 * 3.14159265358979323846 * hbar * rho; }
  /// Mesoscopic window: the correlation time must sit well below the
  /// Heisenberg time.
  bool mesoscopic(double margin = 10.0) const { return margin * t_cl() <= t_heisenberg(); }
};

/// Generalized Wigner time t_eps = (hbar/eps)^(2/(2-s)), the single emergent
/// timescale of coherent spreading.
double wigner_time(double eps, double s, double hbar = 1.0);

/// Universal diffusion coefficient D_eps = hbar^2 / t_eps^3.
double universal_diffusion(double eps, double s, double hbar = 1.0);
/// Equivalent closed form hbar^(-2(s+1)/(2-s)) eps^(6/(2-s)).
double universal_diffusion_scaling(double eps, double s, double hbar = 1.0);

/// Fermi-golden-rule rate 2 pi eps^2 / hbar.
double fgr_rate(double eps, double hbar = 1.0);

/// Coherent spreading width Delta E(t):
///   s > 0: eps * omega_cl^(s/2)            (t > t_cl)
///   s < 0: eps * t^(|s|/2)                 (t_cl < t < t_eps)
///   s < 0: hbar / t_eps                    (t > t_eps)
/// Below t_cl the formulas do not apply; the t_cl value is returned.
double theory_spreading(double s, double eps, double t, const SystemScales& scales);

enum class DiffusionRegime { lrt, strong_driving, intrinsic };

/// Diffusion coefficient by regime:
///   lrt:            eps^2 omega_cl^s / t_phi  (s > 0)
///                   eps^2 t_phi^(|s|-1)       (s < 0, t_phi < t_eps)
///   strong_driving: hbar^(2|s|/(2+|s|)) eps^(4/(2+|s|)) / t_phi
///                   (s < 0, t_phi > t_eps)
///   intrinsic:      universal_diffusion (t_phi replaced by t_eps)
/// Prefactors are unit by convention; the 1/2 of the central-limit relation
/// is kept in fits, not here.
double theory_diffusion(double s, double eps, double t_phi, const SystemScales& scales,
                        DiffusionRegime regime);

/// Perturbative core width gamma(t) = [t^|s| + (eps t / hbar)^(-2)]^(-1/|s|)
/// for s < 0.
double core_width(double s, double eps, double t, double hbar = 1.0);

/// Weighted linear least squares y = a + b x; weights are 1/sigma^2 when
/// sigma is given, else 1.
struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept_stderr = 0.0;
  double chi2_reduced = 0.0;
  int points = 0;
};
LinearFit fit_linear(std::span<const double> x, std::span<const double> y,
                     std::span<const double> sigma = {});

/// Log-log power-law fit over a window in x; slope is the exponent.
LinearFit fit_loglog(std::span<const double> x, std::span<const double> y, double x_lo, double x_hi,
                     std::span<const double> sigma = {});

struct FitWindow {
  double t_lo;
  double t_hi;
};

struct DiffusionEstimate {
  double d = 0.0;
  double d_stderr = 0.0;
  double intercept = 0.0;
  double chi2_reduced = 0.0;
  bool diffusive = true;  // quality flag: false when negative beyond 2 sigma
                          // or the residuals reject a linear law
  FitWindow window{0.0, 0.0};
  int points = 0;
  // physics context for the scaling coordinates
  double s0 = 0.0, sigma = 0.0, eps = 0.0, fdot = 0.0, hbar = 1.0;
  double t_eps = 0.0;
  double x = 0.0;  // eps^(2/(2-s))
  double y = 0.0;  // D / eps^(6/(2-s))
};

/// Weighted least-squares fit of Delta E^2(t) = 2 D t + c over the window,
/// using inverse-variance weights when the curve carries standard errors.
/// Throws ValidationError with fewer than 5 samples in the window.
DiffusionEstimate fit_diffusion(const dynamics::SpreadingCurve& curve, const FitWindow& window,
                                double chi2_threshold = 10.0);

/// Wigner-time rescaling of a family of curves: returns (t/t_eps,
/// Delta E^2 t_eps^2 / hbar^2) series and the maximal relative spread between
/// curves over the common transient window.
struct RescaledCurve {
  std::vector<double> t_scaled;
  std::vector<double> var_scaled;
  dynamics::CurveParams params;
  double t_eps = 0.0;
};

struct CollapseResult {
  std::vector<RescaledCurve> curves;
  double max_relative_spread = 0.0;  // over the common transient window
  double window_lo = 0.0, window_hi = 0.0;
};

CollapseResult rescale_collapse(std::span<const dynamics::SpreadingCurve> curves);

}  // namespace espread::analysis
