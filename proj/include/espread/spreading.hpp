#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "espread/ensemble.hpp"
#include "espread/propagate.hpp"

namespace espread::dynamics {

enum class RunMode { driven, frozen, quench };

std::string to_string(RunMode mode);

/// Identifies the physics behind a curve; everything needed to recompute the
/// Wigner time and the scaling coordinates.
struct CurveParams {
  RunMode mode = RunMode::driven;
  double s0 = 1.0;      // spectral exponent of the coupling bandprofile
  double sigma = 2.0;   // driving spectral exponent (2 = DC drive, 0 = quench)
  double fdot = 0.0;    // driving rate (driven/frozen)
  double eps = 0.0;     // RMS strength: sqrt(lambda)*fdot, or quench strength
  double lambda = 1.0;
  double hbar = 1.0;
  int dim = 0;
  int band = 0;
  std::uint64_t seed = 0;

  double s_effective() const { return s0 - sigma; }
};

/// Energy-spreading time series Delta E(t)^2. Single trajectories carry an
/// empty stderr; ensemble means fill it.
struct SpreadingCurve {
  std::vector<double> times;
  std::vector<double> variance;
  std::vector<double> std_error;    // standard error of the mean of variance
  std::vector<double> mean_energy;  // drift diagnostic
  int n_contributing = 1;
  CurveParams params;
};

struct RunOptions {
  double edge_guard_tol = 1e-6;
  PropagateOptions propagation;
};

/// Driven run: starts in the H(0) eigenstate nearest the spectrum center and
/// measures the spreading in the instantaneous eigenbasis of H(t) through the
/// operator-moment identity (see energy_moments).
SpreadingCurve run_driven(const ensemble::DrivenSystem& sys, std::span<const double> sample_times,
                          const RunOptions& options = {});

/// Frozen run: evolves under the t = 0 freeze of the adiabatic-basis
/// Hamiltonian, starting from the same central H(0) eigenstate, measured in
/// the H(0) eigenbasis. Worked directly in the adiabatic frame (unitarily
/// equivalent to the lattice-basis form).
SpreadingCurve run_frozen(const ensemble::DrivenSystem& sys, std::span<const double> sample_times,
                          const RunOptions& options = {});

/// Quench run: evolves under diag + eps*V from the basis state
/// `initial_index`, measured against the unperturbed diagonal energies.
/// Also records the survival probability |<psi0|psi(t)>|^2.
struct QuenchResult {
  SpreadingCurve curve;
  std::vector<double> survival;
};

QuenchResult run_quench(const Eigen::VectorXd& diag_energies, const ensemble::BandedMatrix& v,
                        double eps, int initial_index, std::span<const double> sample_times,
                        const RunOptions& options = {}, double hbar = 1.0);

/// Log-spaced time grid with t = 0 prepended.
std::vector<double> log_time_grid(double t_lo, double t_hi, int points);

/// Deterministic ordered reduction of per-realization curves into a mean
/// curve with standard errors. All curves must share times and physics.
SpreadingCurve mean_curve(std::span<const SpreadingCurve> curves);

}  // namespace espread::dynamics
