#include "espread/spreading.hpp"

#include <cmath>
#include <complex>

#include "espread/eig.hpp"
#include "espread/errors.hpp"
#include "espread/observables.hpp"

namespace espread::dynamics {

namespace {

using Complex = std::complex<double>;

int nearest_index(const Eigen::VectorXd& values, double target) {
  int best = 0;
  double dist = std::abs(values[0] - target);
  for (int i = 1; i < values.size(); ++i) {
    const double d = std::abs(values[i] - target);
    if (d < dist) {
      dist = d;
      best = i;
    }
  }
  return best;
}

void edge_guard(const Eigen::VectorXd& probabilities, int band, double tol, double t) {
  const int n = static_cast<int>(probabilities.size());
  const int guard = std::min(band, n / 2);
  double mass = 0.0;
  for (int i = 0; i < guard; ++i) mass += probabilities[i] + probabilities[n - 1 - i];
  if (mass > tol) throw EdgeGuardError(t, mass);
}

Eigen::VectorXd central_h0_eigenstate(const ensemble::DrivenSystem& sys) {
  try {
    return eig_banded_nearest(sys.diag, {{&sys.v1, 1.0}}, 0.0).vector;
  } catch (const NumericalError&) {
    // rare near-tie of the two levels straddling zero; full decomposition
    EigResult full = eig_banded(sys.diag, {{&sys.v1, 1.0}});
    return full.vectors.col(nearest_index(full.values, 0.0));
  }
}

CurveParams driven_params(const ensemble::DrivenSystem& sys, RunMode mode) {
  CurveParams p;
  p.mode = mode;
  p.s0 = sys.profile.s_lambda;
  p.sigma = 2.0;
  p.fdot = sys.fdot;
  p.eps = sys.epsilon();
  p.lambda = sys.profile.lambda;
  p.hbar = sys.hbar;
  p.dim = sys.dim();
  p.band = sys.profile.band_max;
  p.seed = sys.seed;
  return p;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::driven: return "driven";
    case RunMode::frozen: return "frozen";
    case RunMode::quench: return "quench";
  }
  return "unknown";
}

SpreadingCurve run_driven(const ensemble::DrivenSystem& sys, std::span<const double> sample_times,
                          const RunOptions& options) {
  DrivenHamiltonian provider(sys);
  WaveState psi;
  psi.amplitudes = central_h0_eigenstate(sys).cast<Complex>();
  psi.t = 0.0;

  SpreadingCurve curve;
  curve.params = driven_params(sys, RunMode::driven);
  curve.times.reserve(sample_times.size());

  propagate_visit(provider, psi, sample_times, options.propagation, sys.hbar,
                  [&](const WaveState& state) {
                    edge_guard(state.amplitudes.cwiseAbs2(), sys.profile.band_max,
                               options.edge_guard_tol, state.t);
                    const EnergyMoments m = energy_moments(provider, state.t, state.amplitudes);
                    curve.times.push_back(state.t);
                    curve.variance.push_back(m.variance);
                    curve.mean_energy.push_back(m.mean);
                  });
  return curve;
}

SpreadingCurve run_frozen(const ensemble::DrivenSystem& sys, std::span<const double> sample_times,
                          const RunOptions& options) {
  const ensemble::AdiabaticFrame frame = adiabatic_frame(sys);
  const Eigen::MatrixXd k = adiabatic_coupling(frame, sys.hbar);
  const int n = sys.dim();

  Eigen::MatrixXcd h_tilde(n, n);
  h_tilde.setZero();
  h_tilde.real().diagonal() = frame.energies;
  h_tilde.imag() = sys.fdot * k;
  EigResultC eig = eig_hermitian_dense(std::move(h_tilde));

  const int n0 = nearest_index(frame.energies, 0.0);
  const Eigen::VectorXcd overlaps = eig.vectors.row(n0).adjoint();

  SpreadingCurve curve;
  curve.params = driven_params(sys, RunMode::frozen);

  Eigen::VectorXcd phased(n), amp(n);
  for (double t : sample_times) {
    for (int j = 0; j < n; ++j)
      phased[j] = std::polar(1.0, -eig.values[j] * t / sys.hbar) * overlaps[j];
    amp.noalias() = eig.vectors * phased;
    Eigen::VectorXd prob = amp.cwiseAbs2();
    edge_guard(prob, sys.profile.band_max, options.edge_guard_tol, t);
    const double mean = prob.dot(frame.energies);
    const double second = prob.dot(frame.energies.cwiseAbs2());
    curve.times.push_back(t);
    curve.variance.push_back(second - mean * mean);
    curve.mean_energy.push_back(mean);
  }
  return curve;
}

QuenchResult run_quench(const Eigen::VectorXd& diag_energies, const ensemble::BandedMatrix& v,
                        double eps, int initial_index, std::span<const double> sample_times,
                        const RunOptions& options, double hbar) {
  const int n = static_cast<int>(diag_energies.size());
  if (initial_index < 0 || initial_index >= n)
    throw ValidationError("run_quench: initial index out of range");

  EigResult eig = eig_banded(diag_energies, {{&v, eps}});
  const Eigen::VectorXd overlaps = eig.vectors.row(initial_index).transpose();

  QuenchResult result;
  SpreadingCurve& curve = result.curve;
  curve.params.mode = RunMode::quench;
  curve.params.sigma = 0.0;
  curve.params.eps = eps;
  curve.params.hbar = hbar;
  curve.params.dim = n;
  curve.params.band = v.band();

  Eigen::VectorXcd phased(n), amp(n);
  for (double t : sample_times) {
    for (int j = 0; j < n; ++j)
      phased[j] = std::polar(1.0, -eig.values[j] * t / hbar) * overlaps[j];
    amp.noalias() = eig.vectors * phased;
    Eigen::VectorXd prob = amp.cwiseAbs2();
    edge_guard(prob, v.band(), options.edge_guard_tol, t);
    const double mean = prob.dot(diag_energies);
    const double second = prob.dot(diag_energies.cwiseAbs2());
    curve.times.push_back(t);
    curve.variance.push_back(second - mean * mean);
    curve.mean_energy.push_back(mean);
    result.survival.push_back(prob[initial_index]);
  }
  return result;
}

std::vector<double> log_time_grid(double t_lo, double t_hi, int points) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw ValidationError("log_time_grid: need 0 < t_lo < t_hi");
  if (points < 2) throw ValidationError("log_time_grid: need at least 2 points");
  std::vector<double> grid;
  grid.reserve(points + 1);
  grid.push_back(0.0);
  const double ratio = std::log(t_hi / t_lo) / (points - 1);
  for (int k = 0; k < points; ++k) grid.push_back(t_lo * std::exp(ratio * k));
  grid.back() = t_hi;
  return grid;
}

SpreadingCurve mean_curve(std::span<const SpreadingCurve> curves) {
  if (curves.empty()) throw ValidationError("mean_curve: no curves");
  const std::size_t n = curves[0].times.size();
  for (const auto& c : curves) {
    if (c.times != curves[0].times) throw ValidationError("mean_curve: time grids differ");
    if (c.params.mode != curves[0].params.mode || c.params.s0 != curves[0].params.s0 ||
        c.params.fdot != curves[0].params.fdot || c.params.eps != curves[0].params.eps)
      throw ValidationError("mean_curve: mixed physics parameters");
  }

  SpreadingCurve mean;
  mean.params = curves[0].params;
  mean.params.seed = 0;
  mean.n_contributing = static_cast<int>(curves.size());
  mean.times = curves[0].times;
  mean.variance.assign(n, 0.0);
  mean.std_error.assign(n, 0.0);
  mean.mean_energy.assign(n, 0.0);

  const double m = static_cast<double>(curves.size());
  for (const auto& c : curves) {
    for (std::size_t k = 0; k < n; ++k) {
      mean.variance[k] += c.variance[k] / m;
      mean.mean_energy[k] += c.mean_energy[k] / m;
    }
  }
  if (curves.size() > 1) {
    for (const auto& c : curves)
      for (std::size_t k = 0; k < n; ++k) {
        const double d = c.variance[k] - mean.variance[k];
        mean.std_error[k] += d * d;
      }
    for (std::size_t k = 0; k < n; ++k)
      mean.std_error[k] = std::sqrt(mean.std_error[k] / (m * (m - 1.0)));
  }
  return mean;
}

}  // namespace espread::dynamics
