#include "espread/eig.hpp"

#include <dlfcn.h>
#include <lapacke.h>

#include <cmath>
#include <complex>
#include <cstring>

#include "espread/errors.hpp"

namespace espread {

namespace {

int band_of(const BandedTerms& terms) {
  int kd = 0;
  for (const auto& [m, w] : terms) kd = std::max(kd, m->band());
  return std::max(kd, 1);
}

// Lower symmetric band storage, column-major: ab[(i-j) + j*ldab] = H(i,j).
std::vector<double> pack_band(const Eigen::VectorXd& diag, const BandedTerms& terms, int kd) {
  const int n = static_cast<int>(diag.size());
  const int ldab = kd + 1;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
  for (int j = 0; j < n; ++j) ab[static_cast<std::size_t>(j) * ldab] = diag[j];
  for (const auto& [m, w] : terms) {
    if (m->dim() != n) throw ValidationError("eig_banded: dimension mismatch");
    for (int d = 1; d <= m->band(); ++d) {
      auto v = m->diagonal(d);
      for (int j = 0; j + d < n; ++j)
        ab[static_cast<std::size_t>(j) * ldab + d] += w * v[j];
    }
  }
  return ab;
}

void check_info(int info, const char* routine) {
  if (info != 0)
    throw NumericalError(std::string(routine) + " failed with info = " + std::to_string(info));
}

}  // namespace

EigResult eig_banded(const Eigen::VectorXd& diag, const BandedTerms& terms) {
  const int n = static_cast<int>(diag.size());
  const int kd = std::min(band_of(terms), n - 1);
  auto ab = pack_band(diag, terms, kd);
  EigResult out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  int info = LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'V', 'L', n, kd, ab.data(), kd + 1,
                            out.values.data(), out.vectors.data(), n);
  check_info(info, "dsbevd");
  return out;
}

Eigen::VectorXd eigvals_banded(const Eigen::VectorXd& diag, const BandedTerms& terms) {
  const int n = static_cast<int>(diag.size());
  const int kd = std::min(band_of(terms), n - 1);
  auto ab = pack_band(diag, terms, kd);
  Eigen::VectorXd values(n);
  int info = LAPACKE_dsbevd(LAPACK_COL_MAJOR, 'N', 'L', n, kd, ab.data(), kd + 1, values.data(),
                            nullptr, n);
  check_info(info, "dsbevd");
  return values;
}

EigResult eig_symmetric_dense(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw ValidationError("eig_symmetric_dense: matrix must be square");
  EigResult out;
  out.values.resize(n);
  int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, out.values.data());
  check_info(info, "dsyevd");
  out.vectors = std::move(a);
  return out;
}

EigResultC eig_hermitian_dense(Eigen::MatrixXcd a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw ValidationError("eig_hermitian_dense: matrix must be square");
  EigResultC out;
  out.values.resize(n);
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                            reinterpret_cast<lapack_complex_double*>(a.data()), n,
                            out.values.data());
  check_info(info, "zheevd");
  out.vectors = std::move(a);
  return out;
}

EigResult eig_tridiagonal(const Eigen::VectorXd& diag, const Eigen::VectorXd& off) {
  const int n = static_cast<int>(diag.size());
  if (off.size() != n - 1) throw ValidationError("eig_tridiagonal: off-diagonal size mismatch");
  EigResult out;
  out.values = diag;
  out.vectors.resize(n, n);
  Eigen::VectorXd e = off;
  int info = LAPACKE_dstevd(LAPACK_COL_MAJOR, 'V', n, out.values.data(), e.data(),
                            out.vectors.data(), n);
  check_info(info, "dstevd");
  return out;
}

EigPair eig_banded_nearest(const Eigen::VectorXd& diag, const BandedTerms& terms, double target) {
  const int n = static_cast<int>(diag.size());
  const int kd = std::min(band_of(terms), n - 1);

  // General band storage for LU: ldab = 2*kl+ku+1 rows, row kl+ku+1-ish holds
  // the diagonal. kl = ku = kd here.
  const int ldab = 3 * kd + 1;
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n, 0.0);
  auto put = [&](int i, int j, double v) {
    ab[static_cast<std::size_t>(j) * ldab + (2 * kd + i - j)] += v;
  };
  for (int j = 0; j < n; ++j) put(j, j, diag[j] - target);
  for (const auto& [m, w] : terms) {
    if (m->dim() != n) throw ValidationError("eig_banded_nearest: dimension mismatch");
    for (int d = 1; d <= m->band(); ++d) {
      auto v = m->diagonal(d);
      for (int i = 0; i + d < n; ++i) {
        put(i, i + d, w * v[i]);
        put(i + d, i, w * v[i]);
      }
    }
  }

  std::vector<lapack_int> ipiv(n);
  int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kd, kd, ab.data(), ldab, ipiv.data());
  if (info > 0) {
    // target is (numerically) an eigenvalue; nudge and retry once
    return eig_banded_nearest(diag, terms, target + 1e-8);
  }
  check_info(info, "dgbtrf");

  // Inverse iteration from a deterministic start.
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double value = target;
  const int max_iters = 50;
  for (int it = 0; it < max_iters; ++it) {
    Eigen::VectorXd y = x;
    info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kd, kd, 1, ab.data(), ldab, ipiv.data(),
                          y.data(), n);
    check_info(info, "dgbtrs");
    y.normalize();

    // Rayleigh quotient and residual against the unshifted operator.
    Eigen::VectorXd hy = diag.cwiseProduct(y);
    for (const auto& [m, w] : terms) {
      for (int d = 1; d <= m->band(); ++d) {
        auto v = m->diagonal(d);
        for (int i = 0; i + d < n; ++i) {
          hy[i] += w * v[i] * y[i + d];
          hy[i + d] += w * v[i] * y[i];
        }
      }
    }
    value = y.dot(hy);
    const double resid = (hy - value * y).norm();
    x = y;
    if (resid < 1e-11 * std::max(1.0, std::abs(value))) return EigPair{value, std::move(x)};
  }
  throw NumericalError("eig_banded_nearest: inverse iteration did not converge");
}

void set_blas_threads(int n) {
  using SetThreadsFn = void (*)(int);
  if (void* sym = dlsym(RTLD_DEFAULT, "openblas_set_num_threads"))
    reinterpret_cast<SetThreadsFn>(sym)(n);
}

}  // namespace espread
