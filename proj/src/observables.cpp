#include "espread/observables.hpp"

#include "espread/errors.hpp"

namespace espread::dynamics {

EnergyDistribution project_adiabatic(const WaveState& psi, const Eigen::MatrixXd& hamiltonian) {
  EigResult eig = eig_symmetric_dense(hamiltonian);
  EnergyDistribution dist;
  dist.t = psi.t;
  dist.energies = std::move(eig.values);
  dist.probabilities = (eig.vectors.transpose() * psi.amplitudes).cwiseAbs2();
  return dist;
}

EnergyDistribution project_adiabatic(const WaveState& psi, const Eigen::MatrixXcd& hamiltonian) {
  EigResultC eig = eig_hermitian_dense(hamiltonian);
  EnergyDistribution dist;
  dist.t = psi.t;
  dist.energies = std::move(eig.values);
  dist.probabilities = (eig.vectors.adjoint() * psi.amplitudes).cwiseAbs2();
  return dist;
}

double distribution_mean(const EnergyDistribution& dist) {
  return dist.probabilities.dot(dist.energies);
}

double spreading_variance(const EnergyDistribution& dist, double /*reference_energy*/) {
  const double mean = distribution_mean(dist);
  return dist.probabilities.dot((dist.energies.array() - mean).square().matrix());
}

namespace {

template <typename Matrix>
EnergyDistribution ldos_impl(const Eigen::MatrixXd& h0, const Matrix& h_perturbed, int n0) {
  if (n0 < 0 || n0 >= h0.rows()) throw ValidationError("ldos: n0 out of range");
  EigResult unperturbed = eig_symmetric_dense(h0);
  Eigen::VectorXd state = unperturbed.vectors.col(n0);

  EnergyDistribution dist;
  if constexpr (std::is_same_v<Matrix, Eigen::MatrixXd>) {
    EigResult perturbed = eig_symmetric_dense(h_perturbed);
    dist.energies = std::move(perturbed.values);
    dist.probabilities = (perturbed.vectors.transpose() * state).cwiseAbs2();
  } else {
    EigResultC perturbed = eig_hermitian_dense(h_perturbed);
    dist.energies = std::move(perturbed.values);
    dist.probabilities = (perturbed.vectors.adjoint() * state.cast<std::complex<double>>()).cwiseAbs2();
  }
  return dist;
}

}  // namespace

EnergyDistribution ldos(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h_perturbed, int n0) {
  return ldos_impl(h0, h_perturbed, n0);
}

EnergyDistribution ldos(const Eigen::MatrixXd& h0, const Eigen::MatrixXcd& h_perturbed, int n0) {
  return ldos_impl(h0, h_perturbed, n0);
}

EnergyMoments energy_moments(const HamiltonianProvider& h, double t, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd hpsi(psi.size());
  h.apply(t, psi, hpsi);
  const double mean = std::real(psi.dot(hpsi));
  const double second = hpsi.squaredNorm();
  return EnergyMoments{mean, second - mean * mean};
}

}  // namespace espread::dynamics
