#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "espread/banded_matrix.hpp"

namespace espread {

struct EigResult {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

struct EigResultC {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

/// Weighted sum of banded terms plus a diagonal: H = diag + sum_k w_k * M_k.
using BandedTerms = std::vector<std::pair<const ensemble::BandedMatrix*, double>>;

/// Full eigendecomposition of a real symmetric banded Hamiltonian (dsbevd).
EigResult eig_banded(const Eigen::VectorXd& diag, const BandedTerms& terms);

/// Eigenvalues only (dsbevd, jobz='N').
Eigen::VectorXd eigvals_banded(const Eigen::VectorXd& diag, const BandedTerms& terms);

/// Full eigendecomposition of a real symmetric dense matrix (dsyevd).
EigResult eig_symmetric_dense(Eigen::MatrixXd a);

/// Full eigendecomposition of a complex Hermitian dense matrix (zheevd).
EigResultC eig_hermitian_dense(Eigen::MatrixXcd a);

/// Eigendecomposition of a symmetric tridiagonal matrix (dstevd); used by the
/// Lanczos stepper. `off` has size n-1.
EigResult eig_tridiagonal(const Eigen::VectorXd& diag, const Eigen::VectorXd& off);

/// Single eigenpair of a banded Hamiltonian nearest `target`, by shifted
/// inverse iteration on the banded LU factorization (dgbtrf/dgbtrs). Much
/// cheaper than a full decomposition for large N. Falls back on failure is
/// the caller's concern; throws NumericalError if it does not converge.
struct EigPair {
  double value;
  Eigen::VectorXd vector;
};
EigPair eig_banded_nearest(const Eigen::VectorXd& diag, const BandedTerms& terms, double target);

/// Caps the threads used by the underlying BLAS (no-op if unsupported).
/// Call before running our own worker pool to avoid oversubscription.
void set_blas_threads(int n);

}  // namespace espread
