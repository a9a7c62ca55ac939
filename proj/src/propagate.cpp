#include "espread/propagate.hpp"

#include <cmath>

#include "espread/eig.hpp"
#include "espread/errors.hpp"

namespace espread::dynamics {

namespace {

using Complex = std::complex<double>;

/// One Lanczos exp(-i dt H / hbar) application on a normalized vector.
/// Returns false when the Krylov budget is exhausted (caller shrinks dt).
class LanczosWorkspace {
 public:
  LanczosWorkspace(int dim, int m_max)
      : basis_(dim, m_max), alpha_(m_max), beta_(m_max), w_(dim), hv_(dim) {}

  bool step(const HamiltonianProvider& h, double t_mid, double dt, double hbar, double tol,
            Eigen::VectorXcd& psi) {
    const int m_max = static_cast<int>(alpha_.size());
    const double scale = psi.norm();
    basis_.col(0) = psi / scale;

    int m = 0;
    double next_beta = 0.0;
    bool breakdown = false;
    while (m < m_max) {
      h.apply(t_mid, basis_.col(m), hv_);
      w_ = hv_;
      if (m > 0) w_ -= beta_[m - 1] * basis_.col(m - 1);
      alpha_[m] = std::real(basis_.col(m).dot(w_));
      w_ -= alpha_[m] * basis_.col(m);
      // full reorthogonalization; cheap next to the matvec for m << dim
      for (int j = 0; j <= m; ++j) w_ -= basis_.col(j).dot(w_) * basis_.col(j);
      next_beta = w_.norm();
      ++m;

      if (next_beta < 1e-14 * std::max(1.0, std::abs(alpha_[m - 1]))) {
        breakdown = true;  // invariant subspace; exponential is exact
        break;
      }
      if (m == m_max) break;
      beta_[m - 1] = next_beta;
      basis_.col(m) = w_ / next_beta;

      if (m >= 4 && (m % 4 == 0)) {
        if (expm_error(m, dt, hbar, next_beta) < tol) break;
      }
    }

    const double err = breakdown ? 0.0 : expm_error(m, dt, hbar, next_beta);
    if (!breakdown && err > tol) return false;

    // psi <- scale * V_m expm(-i dt T_m / hbar) e_1 using the spectral
    // decomposition of the small tridiagonal block (u_ was filled by
    // expm_error / fill_u).
    fill_u(m, dt, hbar);
    psi.noalias() = basis_.leftCols(m) * (scale * u_.head(m));
    return true;
  }

 private:
  // |u_m| * beta * dt bounds the first neglected coupling out of the Krylov
  // space; standard a-posteriori estimate.
  double expm_error(int m, double dt, double hbar, double next_beta) {
    fill_u(m, dt, hbar);
    return next_beta * std::abs(u_[m - 1]) * dt / hbar;
  }

  void fill_u(int m, double dt, double hbar) {
    EigResult small = eig_tridiagonal(alpha_.head(m), beta_.head(std::max(m - 1, 0)));
    Eigen::VectorXcd phases(m);
    for (int k = 0; k < m; ++k)
      phases[k] = std::polar(1.0, -small.values[k] * dt / hbar) * small.vectors(0, k);
    u_.resize(m);
    u_.noalias() = small.vectors.cast<Complex>() * phases;
  }

  Eigen::MatrixXcd basis_;
  Eigen::VectorXd alpha_;
  Eigen::VectorXd beta_;
  Eigen::VectorXcd w_;
  Eigen::VectorXcd hv_;
  Eigen::VectorXcd u_;
};

}  // namespace

DrivenHamiltonian::DrivenHamiltonian(const ensemble::DrivenSystem& sys) : sys_(&sys) {
  span_ = (sys.diag.maxCoeff() - sys.diag.minCoeff()) + 2.0 * (sys.v1.gershgorin_bound() +
                                                               sys.v2.gershgorin_bound());
}

void DrivenHamiltonian::apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  y.resize(x.size());
  ensemble::apply_hamiltonian(*sys_, t, {x.data(), static_cast<std::size_t>(x.size())},
                              {y.data(), static_cast<std::size_t>(y.size())});
}

double DrivenHamiltonian::drive_rate() const { return std::abs(sys_->fdot); }

DenseHamiltonian::DenseHamiltonian(Eigen::MatrixXcd h) : h_(std::move(h)) {
  span_ = 2.0 * h_.cwiseAbs().rowwise().sum().maxCoeff();
}

void DenseHamiltonian::apply(double, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  y.noalias() = h_ * x;
}

FunctionHamiltonian::FunctionHamiltonian(std::function<Eigen::MatrixXcd(double)> h_of_t, int dim,
                                         double span, double drive_rate)
    : h_of_t_(std::move(h_of_t)), dim_(dim), span_(span), rate_(drive_rate) {}

void FunctionHamiltonian::apply(double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) const {
  if (!cached_ || cache_t_ != t) {
    cache_ = h_of_t_(t);
    cache_t_ = t;
    cached_ = true;
  }
  y.noalias() = cache_ * x;
}

void propagate_visit(const HamiltonianProvider& h, const WaveState& psi0,
                     std::span<const double> sample_times, const PropagateOptions& options,
                     double hbar, const std::function<void(const WaveState&)>& visit) {
  if (sample_times.empty()) return;
  for (std::size_t i = 0; i + 1 < sample_times.size(); ++i)
    if (!(sample_times[i] < sample_times[i + 1]))
      throw ValidationError("propagate: sample times must be strictly increasing");
  if (sample_times.front() < psi0.t)
    throw ValidationError("propagate: first sample time precedes the initial state");

  const double t_span = std::max(sample_times.back() - psi0.t, 1e-300);
  const double span = std::max(h.spectral_span(), 1e-300);
  double dt_pref = options.krylov_phase / span;
  if (h.drive_rate() > 0.0) dt_pref = std::min(dt_pref, options.drive_phase / h.drive_rate());
  dt_pref *= options.dt_scale;

  WaveState state = psi0;
  LanczosWorkspace work(h.dim(), options.krylov_max);

  for (double target : sample_times) {
    while (state.t < target) {
      double dt = std::min(dt_pref, target - state.t);
      const double t_old = state.t;
      bool ok = false;
      for (int halvings = 0; halvings < 40; ++halvings) {
        const double tol = options.accuracy * dt / t_span;
        if (work.step(h, t_old + 0.5 * dt, dt, hbar, tol, state.amplitudes)) {
          ok = true;
          break;
        }
        dt *= 0.5;
      }
      if (!ok) throw IntegrationError("propagate: step size underflow", state.t);
      state.t = t_old + dt;
    }
    state.t = target;
    if (std::abs(state.norm() - 1.0) > options.norm_tolerance)
      throw IntegrationError("propagate: norm drift beyond tolerance", state.t);
    visit(state);
  }
}

std::vector<WaveState> propagate(const HamiltonianProvider& h, const WaveState& psi0,
                                 std::span<const double> sample_times,
                                 const PropagateOptions& options, double hbar) {
  std::vector<WaveState> out;
  out.reserve(sample_times.size());
  propagate_visit(h, psi0, sample_times, options, hbar,
                  [&](const WaveState& s) { out.push_back(s); });
  return out;
}

}  // namespace espread::dynamics
