#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace espread::ensemble {

/// Variance law of the off-diagonal couplings: for band_min <= |i-j| <= band_max
/// the matrix elements have variance lambda * |omega_ij|^(s_lambda - 1), where
/// omega_ij = |E_i - E_j| in level-spacing units. Zero outside the band and on
/// the diagonal. band_max sets the bandwidth omega_cl (in units of the level
/// spacing); band_min is the infrared edge (one level spacing).
struct BandProfile {
  double s_lambda;
  double lambda = 1.0;
  int band_min = 1;
  int band_max = 50;

  BandProfile(double s_lambda_in, double lambda_in = 1.0, int band_min_in = 1,
              int band_max_in = 50);

  /// Element variance at integer offset |i-j| (zero outside the band).
  double variance_at(int offset) const;
};

/// Real symmetric banded matrix with an exactly zero diagonal, stored by
/// offset diagonals: diagonal(d)[i] = M(i, i+d) for d = 1..band.
class BandedMatrix {
 public:
  BandedMatrix(int dim, int band);

  int dim() const { return dim_; }
  int band() const { return band_; }

  double at(int i, int j) const;

  std::span<double> diagonal(int offset);
  std::span<const double> diagonal(int offset) const;

  Eigen::MatrixXd dense() const;

  /// y += weight * M x (complex vectors).
  void apply_add(std::span<const std::complex<double>> x, std::span<std::complex<double>> y,
                 double weight = 1.0) const;

  /// Largest Gershgorin row sum; cheap spectral-norm bound.
  double gershgorin_bound() const;

  double max_abs() const;

 private:
  int dim_;
  int band_;
  std::vector<std::size_t> offsets_;  // start of each diagonal in data_
  std::vector<double> data_;
};

/// Draws a realization with independent Gaussian entries following `profile`,
/// symmetrized, zero diagonal. Deterministic in (profile, dim, seed).
BandedMatrix sample_banded_matrix(const BandProfile& profile, int dim, std::uint64_t seed);

}  // namespace espread::ensemble
