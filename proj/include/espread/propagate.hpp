#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "espread/ensemble.hpp"

namespace espread::dynamics {

struct WaveState {
  Eigen::VectorXcd amplitudes;
  double t = 0.0;
  double norm() const { return amplitudes.norm(); }
};

/// Minimal interface the stepper needs: the action of H(t) and scale hints
/// for step-size control.
class HamiltonianProvider {
 public:
  virtual ~HamiltonianProvider() = default;
  virtual int dim() const = 0;
  virtual void apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const = 0;
  /// Upper bound on the spectral span (lambda_max - lambda_min).
  virtual double spectral_span() const = 0;
  /// Fastest rate of explicit time dependence (0 for static H).
  virtual double drive_rate() const { return 0.0; }
};

/// H(t) of a DrivenSystem, applied through the banded fast path.
class DrivenHamiltonian final : public HamiltonianProvider {
 public:
  explicit DrivenHamiltonian(const ensemble::DrivenSystem& sys);
  int dim() const override { return sys_->dim(); }
  void apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
  double spectral_span() const override { return span_; }
  double drive_rate() const override;

 private:
  const ensemble::DrivenSystem* sys_;
  double span_;
};

/// Static dense Hermitian matrix.
class DenseHamiltonian final : public HamiltonianProvider {
 public:
  explicit DenseHamiltonian(Eigen::MatrixXcd h);
  int dim() const override { return static_cast<int>(h_.rows()); }
  void apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
  double spectral_span() const override { return span_; }

 private:
  Eigen::MatrixXcd h_;
  double span_;
};

/// Adapter for an arbitrary time -> Hermitian matrix map (test harness use;
/// rebuilds the matrix when t changes).
class FunctionHamiltonian final : public HamiltonianProvider {
 public:
  FunctionHamiltonian(std::function<Eigen::MatrixXcd(double)> h_of_t, int dim, double span,
                      double drive_rate = 0.0);
  int dim() const override { return dim_; }
  void apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const override;
  double spectral_span() const override { return span_; }
  double drive_rate() const override { return rate_; }

 private:
  std::function<Eigen::MatrixXcd(double)> h_of_t_;
  int dim_;
  double span_;
  double rate_;
  mutable Eigen::MatrixXcd cache_;
  mutable double cache_t_;
  mutable bool cached_ = false;
};

struct PropagateOptions {
  /// Relative error budget for the whole run; per-step Krylov tolerances are
  /// apportioned from it.
  double accuracy = 1e-9;
  int krylov_max = 48;
  double norm_tolerance = 1e-8;
  /// Multiplies the preferred step; set to 0.5 for step-halving checks.
  double dt_scale = 1.0;
  /// Phase budgets controlling the step: dt <= krylov_phase / span and
  /// dt <= drive_phase / drive_rate.
  double krylov_phase = 12.0;
  double drive_phase = 0.04;
};

/// Integrates i hbar dpsi/dt = H(t) psi with a midpoint-exponential (Magnus-2)
/// Lanczos stepper and returns the state at each sample time. Norm drift
/// beyond options.norm_tolerance raises IntegrationError.
std::vector<WaveState> propagate(const HamiltonianProvider& h, const WaveState& psi0,
                                 std::span<const double> sample_times,
                                 const PropagateOptions& options = {}, double hbar = 1.0);

/// Streaming variant: invokes `visit` at each sample time instead of storing
/// the states.
void propagate_visit(const HamiltonianProvider& h, const WaveState& psi0,
                     std::span<const double> sample_times, const PropagateOptions& options,
                     double hbar, const std::function<void(const WaveState&)>& visit);

}  // namespace espread::dynamics
