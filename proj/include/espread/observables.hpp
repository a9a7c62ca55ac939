#pragma once

#include <Eigen/Core>

#include "espread/eig.hpp"
#include "espread/propagate.hpp"

namespace espread::dynamics {

/// Occupation probabilities over an energy eigenbasis at time t.
struct EnergyDistribution {
  Eigen::VectorXd energies;
  Eigen::VectorXd probabilities;
  double t = 0.0;
};

/// Projects psi onto the instantaneous eigenbasis of a Hermitian matrix:
/// P(n) = |<n|psi>|^2 with energies E_n.
EnergyDistribution project_adiabatic(const WaveState& psi, const Eigen::MatrixXd& hamiltonian);
EnergyDistribution project_adiabatic(const WaveState& psi, const Eigen::MatrixXcd& hamiltonian);

/// Central second moment sum P(n) (E_n - Ebar)^2. The reference energy is not
/// subtracted (the variance is about the distribution mean); callers record
/// mean - reference as a drift diagnostic.
double spreading_variance(const EnergyDistribution& dist, double reference_energy);

double distribution_mean(const EnergyDistribution& dist);

/// Local density of states: overlaps of the n0-th eigenstate of h0 with the
/// eigenstates of h_perturbed, placed at the perturbed energies.
EnergyDistribution ldos(const Eigen::MatrixXd& h0, const Eigen::MatrixXd& h_perturbed, int n0);
EnergyDistribution ldos(const Eigen::MatrixXd& h0, const Eigen::MatrixXcd& h_perturbed, int n0);

/// Mean and variance of H(t) in state psi, via a single operator application:
/// <H> = Re <psi|H psi>, <H^2> = ||H psi||^2. Identical to the second moment
/// of project_adiabatic over the eigenbasis of H(t), without diagonalizing.
struct EnergyMoments {
  double mean;
  double variance;
};
EnergyMoments energy_moments(const HamiltonianProvider& h, double t, const Eigen::VectorXcd& psi);

}  // namespace espread::dynamics
