#include "espread/banded_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "espread/errors.hpp"
#include "espread/rng.hpp"

namespace espread::ensemble {

BandProfile::BandProfile(double s_lambda_in, double lambda_in, int band_min_in, int band_max_in)
    : s_lambda(s_lambda_in), lambda(lambda_in), band_min(band_min_in), band_max(band_max_in) {
  // s_lambda = 2 (linear variance growth) is allowed for sampler checks even
  // though the spreading theory needs s_lambda < 2.
  if (!(s_lambda > 0.0) || !(s_lambda <= 2.0))
    throw ValidationError("BandProfile: s_lambda must be in (0, 2]");
  if (!(lambda > 0.0)) throw ValidationError("BandProfile: lambda must be positive");
  if (band_min < 1 || band_min > band_max)
    throw ValidationError("BandProfile: need 1 <= band_min <= band_max");
}

double BandProfile::variance_at(int offset) const {
  const int d = std::abs(offset);
  if (d < band_min || d > band_max) return 0.0;
  return lambda * std::pow(static_cast<double>(d), s_lambda - 1.0);
}

BandedMatrix::BandedMatrix(int dim, int band) : dim_(dim), band_(band) {
  if (dim < 2) throw ValidationError("BandedMatrix: dim must be >= 2");
  if (band < 1 || band >= dim) throw ValidationError("BandedMatrix: need 1 <= band < dim");
  offsets_.resize(band + 1, 0);
  std::size_t total = 0;
  for (int d = 1; d <= band; ++d) {
    offsets_[d] = total;
    total += static_cast<std::size_t>(dim - d);
  }
  data_.assign(total, 0.0);
}

double BandedMatrix::at(int i, int j) const {
  const int d = std::abs(i - j);
  if (d == 0 || d > band_) return 0.0;
  const int row = std::min(i, j);
  return data_[offsets_[d] + static_cast<std::size_t>(row)];
}

std::span<double> BandedMatrix::diagonal(int offset) {
  return {data_.data() + offsets_[offset], static_cast<std::size_t>(dim_ - offset)};
}

std::span<const double> BandedMatrix::diagonal(int offset) const {
  return {data_.data() + offsets_[offset], static_cast<std::size_t>(dim_ - offset)};
}

Eigen::MatrixXd BandedMatrix::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int d = 1; d <= band_; ++d) {
    auto diag = diagonal(d);
    for (int i = 0; i + d < dim_; ++i) {
      m(i, i + d) = diag[i];
      m(i + d, i) = diag[i];
    }
  }
  return m;
}

void BandedMatrix::apply_add(std::span<const std::complex<double>> x,
                             std::span<std::complex<double>> y, double weight) const {
  for (int d = 1; d <= band_; ++d) {
    const double* v = data_.data() + offsets_[d];
    const int n = dim_ - d;
    for (int i = 0; i < n; ++i) {
      const double w = weight * v[i];
      y[i] += w * x[i + d];
      y[i + d] += w * x[i];
    }
  }
}

double BandedMatrix::gershgorin_bound() const {
  std::vector<double> row_sum(dim_, 0.0);
  for (int d = 1; d <= band_; ++d) {
    const double* v = data_.data() + offsets_[d];
    for (int i = 0; i + d < dim_; ++i) {
      const double a = std::abs(v[i]);
      row_sum[i] += a;
      row_sum[i + d] += a;
    }
  }
  return *std::max_element(row_sum.begin(), row_sum.end());
}

double BandedMatrix::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

BandedMatrix sample_banded_matrix(const BandProfile& profile, int dim, std::uint64_t seed) {
  if (dim <= 2 * profile.band_max)
    throw ConfigurationError("sample_banded_matrix: dim must exceed twice the bandwidth");
  BandedMatrix m(dim, profile.band_max);
  GaussianStream g(seed);
  for (int d = profile.band_min; d <= profile.band_max; ++d) {
    const double sigma = std::sqrt(profile.variance_at(d));
    auto diag = m.diagonal(d);
    for (double& v : diag) v = sigma * g.normal();
  }
  return m;
}

}  // namespace espread::ensemble
