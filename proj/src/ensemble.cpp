#include "espread/ensemble.hpp"

#include <cmath>

#include "espread/eig.hpp"
#include "espread/errors.hpp"
#include "espread/rng.hpp"

namespace espread::ensemble {

double DrivenSystem::epsilon() const { return std::sqrt(profile.lambda) * std::abs(fdot); }

DrivenSystem make_driven_system(const BandProfile& profile, int dim, double fdot,
                                std::uint64_t seed, const SystemOptions& options) {
  if (profile.s_lambda >= 2.0)
    throw ValidationError("make_driven_system: s_lambda must be < 2 for a driven system");
  const std::uint64_t seed_v1 = derive_seed(seed, {1});
  const std::uint64_t seed_v2 = derive_seed(seed, {2});
  const std::uint64_t seed_jitter = derive_seed(seed, {3});

  DrivenSystem sys{Eigen::VectorXd(dim), sample_banded_matrix(profile, dim, seed_v1),
                   sample_banded_matrix(profile, dim, seed_v2), fdot,
                   options.hbar,        options.rho,
                   profile,             seed};

  const double omega0 = 1.0 / (options.hbar * options.rho);
  const int center = dim / 2;
  for (int i = 0; i < dim; ++i) sys.diag[i] = (i - center) * omega0;
  if (options.jitter_diag) {
    GaussianStream g(seed_jitter);
    for (int i = 0; i < dim; ++i) sys.diag[i] += (g.uniform() - 0.5) * omega0;
  }
  return sys;
}

Eigen::MatrixXd build_hamiltonian(const DrivenSystem& sys, double t) {
  const double f = sys.fdot * t;
  Eigen::MatrixXd h = std::cos(f) * sys.v1.dense() + std::sin(f) * sys.v2.dense();
  h.diagonal() += sys.diag;
  return h;
}

void apply_hamiltonian(const DrivenSystem& sys, double t, std::span<const std::complex<double>> x,
                       std::span<std::complex<double>> y) {
  const int n = sys.dim();
  const double f = sys.fdot * t;
  for (int i = 0; i < n; ++i) y[i] = sys.diag[i] * x[i];
  sys.v1.apply_add(x, y, std::cos(f));
  sys.v2.apply_add(x, y, std::sin(f));
}

AdiabaticFrame adiabatic_frame(const DrivenSystem& sys, double gap_min) {
  EigResult eig = eig_banded(sys.diag, {{&sys.v1, 1.0}});
  for (int n = 0; n + 1 < sys.dim(); ++n) {
    const double gap = eig.values[n + 1] - eig.values[n];
    if (gap < gap_min) throw DegeneracyError(n, n + 1, gap);
  }
  AdiabaticFrame frame;
  frame.v2_adiabatic.noalias() = eig.vectors.transpose() * (sys.v2.dense() * eig.vectors);
  frame.energies = std::move(eig.values);
  frame.basis = std::move(eig.vectors);
  return frame;
}

Eigen::MatrixXd adiabatic_coupling(const AdiabaticFrame& frame, double hbar) {
  const int n = static_cast<int>(frame.energies.size());
  Eigen::MatrixXd k(n, n);
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l)
      k(l, m) = (l == m) ? 0.0
                         : hbar * frame.v2_adiabatic(l, m) / (frame.energies[l] - frame.energies[m]);
  }
  return k;
}

FrozenSystem build_frozen_hamiltonian(const DrivenSystem& sys) {
  const AdiabaticFrame frame = adiabatic_frame(sys);
  const Eigen::MatrixXd k = adiabatic_coupling(frame, sys.hbar);

  // W = iK rotated back to the lattice basis stays purely imaginary
  // antisymmetric, so only one real congruence transform is needed.
  Eigen::MatrixXd k_lattice(sys.dim(), sys.dim());
  k_lattice.noalias() = frame.basis * (k * frame.basis.transpose());

  FrozenSystem frozen;
  frozen.h = Eigen::MatrixXcd(sys.dim(), sys.dim());
  Eigen::MatrixXd h0 = sys.v1.dense();
  h0.diagonal() += sys.diag;
  frozen.h.real() = h0;
  frozen.h.imag() = sys.fdot * k_lattice;
  return frozen;
}

}  // namespace espread::ensemble
