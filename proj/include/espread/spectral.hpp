#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Core>

namespace espread::spectral {

/// Stationary driving source with power spectrum
///   S(omega) = eps^2 |omega|^(-sigma) * delta_gamma(omega),
/// delta_gamma a unit-mass Lorentzian of width gamma = 1/t_phi.
/// sigma = 0 describes a quasi-constant perturbation, sigma = 2 quasi-linear
/// DC driving. t_phi may be +infinity (gamma = 0).
struct DrivingSpec {
  double epsilon;
  double sigma;
  double t_phi;

  DrivingSpec(double epsilon_in, double sigma_in, double t_phi_in);
  double gamma() const;
};

double driving_spectrum(const DrivingSpec& spec, double omega);

/// Power-law spectral function 2*pi*|omega|^(s0-1) inside (omega0, omega_cl),
/// zero outside.
double analytic_C(double s0, double omega, double omega0, double omega_cl);

/// Binned estimate of C(omega) = sum_n |V_{n,n0}|^2 2*pi*delta(omega - omega_n)
/// averaged over a window of n0. Bins are one-sided in |omega| (centers at
/// k*bin_width); contributions from +/-omega fold together and are halved so
/// values estimate the even density C(omega) itself, directly comparable to
/// analytic_C. Empty bins keep count 0 and value 0.
struct SpectralSamples {
  std::vector<double> omega_bins;
  std::vector<double> values;
  std::vector<long> counts;
};

SpectralSamples estimate_C(const Eigen::MatrixXd& v_eigenbasis, const Eigen::VectorXd& energies,
                           double bin_width, int n0_begin, int n0_end, double hbar = 1.0);

/// Default averaging window: central 50% of levels, additionally excluding
/// `edge_guard` levels at each end of the spectrum.
SpectralSamples estimate_C(const Eigen::MatrixXd& v_eigenbasis, const Eigen::VectorXd& energies,
                           double bin_width = 1.0, int edge_guard = 0, double hbar = 1.0);

/// CSV with columns omega, C_value, count.
void write_csv(const SpectralSamples& samples, std::ostream& os);

/// Kubo diffusion coefficient D = 1/2 Int omega^2 C(omega) S(omega) d omega.
/// The power law of C extends through the origin (continuum limit) and is cut
/// off at omega_cl; with a finite-width Lorentzian in S the integrand is then
/// integrable whenever s0 - sigma > -2. omega0 only enters validation and the
/// divergence diagnostics, so the DC-driven Ohmic value pi*eps^2 is recovered
/// independently of the cutoffs.
double kubo_diffusion(double s0, const DrivingSpec& spec, double omega0, double omega_cl);

}  // namespace espread::spectral
