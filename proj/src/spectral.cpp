#include "espread/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "espread/errors.hpp"
#include "espread/quadrature.hpp"

namespace espread::spectral {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

DrivingSpec::DrivingSpec(double epsilon_in, double sigma_in, double t_phi_in)
    : epsilon(epsilon_in), sigma(sigma_in), t_phi(t_phi_in) {
  if (!(epsilon >= 0.0)) throw ValidationError("DrivingSpec: epsilon must be >= 0");
  if (!(t_phi > 0.0)) throw ValidationError("DrivingSpec: t_phi must be positive");
}

double DrivingSpec::gamma() const { return std::isinf(t_phi) ? 0.0 : 1.0 / t_phi; }

double driving_spectrum(const DrivingSpec& spec, double omega) {
  const double g = spec.gamma();
  if (omega == 0.0) {
    if (spec.sigma > 0.0)
      throw SingularityError("driving_spectrum: omega = 0 is singular for sigma > 0");
    if (g == 0.0)
      throw SingularityError("driving_spectrum: delta peak at omega = 0 for t_phi = inf");
    return spec.epsilon * spec.epsilon / (kPi * g);
  }
  const double lorentz = (g / kPi) / (omega * omega + g * g);
  return spec.epsilon * spec.epsilon * std::pow(std::abs(omega), -spec.sigma) * lorentz;
}

double analytic_C(double s0, double omega, double omega0, double omega_cl) {
  if (!(s0 > 0.0 && s0 < 2.0)) throw ValidationError("analytic_C: s0 must be in (0, 2)");
  if (!(omega0 < omega_cl)) throw ValidationError("analytic_C: need omega0 < omega_cl");
  const double a = std::abs(omega);
  if (a <= omega0 || a >= omega_cl) return 0.0;
  return 2.0 * kPi * std::pow(a, s0 - 1.0);
}

SpectralSamples estimate_C(const Eigen::MatrixXd& v_eigenbasis, const Eigen::VectorXd& energies,
                           double bin_width, int n0_begin, int n0_end, double hbar) {
  const int n = static_cast<int>(energies.size());
  if (v_eigenbasis.rows() != n || v_eigenbasis.cols() != n)
    throw ValidationError("estimate_C: matrix/energy size mismatch");
  if (!(bin_width > 0.0)) throw ValidationError("estimate_C: bin_width must be positive");
  if (n0_begin < 0 || n0_end > n || n0_begin >= n0_end)
    throw ValidationError("estimate_C: empty n0 window");

  const double span = (energies[n - 1] - energies[0]) / hbar;
  const int n_bins = static_cast<int>(std::floor(span / bin_width)) + 1;

  SpectralSamples out;
  out.omega_bins.resize(n_bins);
  out.values.assign(n_bins, 0.0);
  out.counts.assign(n_bins, 0);
  for (int k = 0; k < n_bins; ++k) out.omega_bins[k] = k * bin_width;

  for (int n0 = n0_begin; n0 < n0_end; ++n0) {
    for (int m = 0; m < n; ++m) {
      if (m == n0) continue;
      const double omega = std::abs(energies[m] - energies[n0]) / hbar;
      const int k = static_cast<int>(std::lround(omega / bin_width));
      if (k >= n_bins) continue;
      const double v = v_eigenbasis(m, n0);
      out.values[k] += 2.0 * kPi * v * v;
      out.counts[k] += 1;
    }
  }

  const double n0_count = static_cast<double>(n0_end - n0_begin);
  for (int k = 0; k < n_bins; ++k) {
    // +/- omega land in the same |omega| bin; halving recovers the one-sided
    // density except at k = 0 where the bin already straddles the origin.
    const double fold = (k == 0) ? 1.0 : 2.0;
    out.values[k] /= n0_count * bin_width * fold;
  }
  return out;
}

SpectralSamples estimate_C(const Eigen::MatrixXd& v_eigenbasis, const Eigen::VectorXd& energies,
                           double bin_width, int edge_guard, double hbar) {
  const int n = static_cast<int>(energies.size());
  int lo = std::max(n / 4, edge_guard);
  int hi = std::min(n - n / 4, n - edge_guard);
  if (lo >= hi) throw ValidationError("estimate_C: edge guard leaves no n0 window");
  return estimate_C(v_eigenbasis, energies, bin_width, lo, hi, hbar);
}

void write_csv(const SpectralSamples& samples, std::ostream& os) {
  os << "omega,C_value,count\n";
  char line[96];
  for (std::size_t k = 0; k < samples.omega_bins.size(); ++k) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%ld\n", samples.omega_bins[k],
                  samples.values[k], samples.counts[k]);
    os << line;
  }
}

double kubo_diffusion(double s0, const DrivingSpec& spec, double omega0, double omega_cl) {
  if (!(s0 > 0.0 && s0 < 2.0)) throw ValidationError("kubo_diffusion: s0 must be in (0, 2)");
  if (!(omega0 > 0.0 && omega0 < omega_cl))
    throw ValidationError("kubo_diffusion: need 0 < omega0 < omega_cl");
  if (spec.epsilon == 0.0) return 0.0;

  const double g = spec.gamma();
  const double s = s0 - spec.sigma;
  if (g == 0.0)
    throw DivergentIntegralError(
        "kubo_diffusion: t_phi = inf collapses S to a delta function; use a finite t_phi");
  if (s <= -2.0)
    throw DivergentIntegralError("kubo_diffusion: integrand not integrable (s0 - sigma <= -2)");

  // Even integrand: D = Int_0^omega_cl omega^2 C(omega) S(omega) d omega.
  auto integrand = [&](double omega) {
    const double lorentz = (g / kPi) / (omega * omega + g * g);
    return 2.0 * kPi * std::pow(omega, s0 - 1.0) * spec.epsilon * spec.epsilon *
           std::pow(omega, 2.0 - spec.sigma) * lorentz;
  };

  // Breakpoints isolate the Lorentzian peak so the adaptive pass converges
  // quickly even when gamma << omega_cl.
  std::vector<double> pts{0.0};
  for (double p : {0.5 * g, 2.0 * g, 16.0 * g, omega0})
    if (p > pts.back() && p < omega_cl) pts.push_back(p);
  pts.push_back(omega_cl);

  return integrate_adaptive_segments(integrand, pts, 1e-10, 0.0).value;
}

}  // namespace espread::spectral
