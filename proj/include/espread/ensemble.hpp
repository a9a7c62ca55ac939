#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Core>

#include "espread/banded_matrix.hpp"

namespace espread::ensemble {

/// Driven random-matrix model
///   H_ij(t) = E_i delta_ij + cos(f(t)) V1_ij + sin(f(t)) V2_ij,   f(t) = fdot*t,
/// with E_i a picket-fence spectrum at unit level spacing (omega0 = 1/(hbar*rho))
/// centered on zero, and V1, V2 independent banded realizations of `profile`.
struct DrivenSystem {
  Eigen::VectorXd diag;
  BandedMatrix v1;
  BandedMatrix v2;
  double fdot = 0.0;
  double hbar = 1.0;
  double rho = 1.0;
  BandProfile profile;
  std::uint64_t seed = 0;  // stream the realization was drawn from (metadata)

  int dim() const { return static_cast<int>(diag.size()); }
  double omega0() const { return 1.0 / (hbar * rho); }
  double omega_cl() const { return profile.band_max * omega0(); }
  /// RMS driving strength: eps^2 = lambda * fdot^2.
  double epsilon() const;
};

struct SystemOptions {
  bool jitter_diag = false;  // uniform jitter in [-1/2, 1/2) level spacings
  double hbar = 1.0;
  double rho = 1.0;
};

/// Builds a DrivenSystem from independent sub-streams of `seed` (V1, V2,
/// jitter). Deterministic in all arguments.
DrivenSystem make_driven_system(const BandProfile& profile, int dim, double fdot,
                                std::uint64_t seed, const SystemOptions& options = {});

/// Dense H(t); the banded fast path is apply_hamiltonian.
Eigen::MatrixXd build_hamiltonian(const DrivenSystem& sys, double t);

/// y = H(t) x without forming the matrix.
void apply_hamiltonian(const DrivenSystem& sys, double t, std::span<const std::complex<double>> x,
                       std::span<std::complex<double>> y);

/// Eigenframe of H(0) with the perturbation direction V2 = dH/df|_{f=0}
/// transformed into it.
struct AdiabaticFrame {
  Eigen::VectorXd energies;      // E_n ascending
  Eigen::MatrixXd basis;         // columns |n> in the lattice basis
  Eigen::MatrixXd v2_adiabatic;  // <n|V2|m>
};

/// Throws DegeneracyError if an adjacent gap of H(0) falls below `gap_min`.
AdiabaticFrame adiabatic_frame(const DrivenSystem& sys, double gap_min = 1e-10);

/// Real antisymmetric part K of the adiabatic coupling W = i K, with
/// K_nm = hbar * V_nm / (E_n - E_m) and zero diagonal.
Eigen::MatrixXd adiabatic_coupling(const AdiabaticFrame& frame, double hbar);

/// Frozen Hamiltonian in the lattice basis:
///   H_frozen = E_i delta_ij + V1 + fdot * W_ij(0),
/// the t = 0 freeze of the adiabatic-basis Hamiltonian. Complex Hermitian.
struct FrozenSystem {
  Eigen::MatrixXcd h;
  int dim() const { return static_cast<int>(h.rows()); }
};

FrozenSystem build_frozen_hamiltonian(const DrivenSystem& sys);

}  // namespace espread::ensemble
