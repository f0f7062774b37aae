#pragma once

#include <cstddef>
#include <vector>

#include "gcsi/complex_matrix.hpp"

namespace gcsi {

struct Tolerances {
  double eig_tol = 1e-12;   // Jacobi off-diagonal convergence, relative
  double psd_tol = 1e-9;    // slack for positivity / Loewner comparisons
  double rank_tol = 1e-9;   // singular values below rank_tol * sigma_max count as zero
  double ineq_tol = 1e-8;   // slack for inequality margins and class defects
};

struct HermEigen {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // unitary, columns match values
};

struct Svd {
  std::vector<double> singular_values;  // descending, length min(m, n)
  ComplexMatrix left;                   // m x min(m, n), orthonormal columns
  ComplexMatrix right;                  // n x min(m, n), orthonormal columns
};

struct RankNullspace {
  std::size_t rank = 0;
  ComplexMatrix null_basis;  // n x (n - rank), orthonormal columns, empty cols if full rank
  std::vector<double> singular_values;
};

struct PolarParts {
  ComplexMatrix partial_isometry;  // U, zero on the kernel of A
  ComplexMatrix positive;          // P = |A|
  std::size_t support_rank = 0;
};

struct LoewnerResult {
  bool holds = false;
  double min_eigenvalue = 0.0;
  ComplexMatrix witness;  // n x 1 unit vector attaining min eigenvalue, when !holds
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws std::invalid_argument when the input is not square or
/// not Hermitian to within 1e-8 relative.
HermEigen herm_eig(const ComplexMatrix& h, const Tolerances& tol = {});

/// Singular value decomposition by one-sided Jacobi rotations on the
/// columns of A, so zero singular values stay at working precision.
Svd svd(const ComplexMatrix& a, const Tolerances& tol = {});

/// Operator (spectral) norm, largest singular value.
double op_norm(const ComplexMatrix& a, const Tolerances& tol = {});

/// |A| = (A^*A)^{1/2}.
ComplexMatrix abs_op(const ComplexMatrix& a, const Tolerances& tol = {});

/// P^t for Hermitian PSD P and t > 0, via the spectral map. Eigenvalues
/// below eigensolver noise (1e-13 relative) map to zero so rank survives
/// t < 1; values in [-psd_tol, 0) clamp to zero; anything more negative is
/// a domain error.
ComplexMatrix frac_power(const ComplexMatrix& p, double t, const Tolerances& tol = {});

/// Loewner order test P <= Q via the minimum eigenvalue of Q - P.
LoewnerResult loewner_leq(const ComplexMatrix& p, const ComplexMatrix& q,
                          const Tolerances& tol = {});

/// Numerical rank (singular values above rank_tol * sigma_max) and an
/// orthonormal kernel basis from the right singular vectors.
RankNullspace rank_nullspace(const ComplexMatrix& a, const Tolerances& tol = {});

/// Polar decomposition A = U P with U a partial isometry vanishing on N(A).
PolarParts polar_decompose(const ComplexMatrix& a, const Tolerances& tol = {});

/// Inverse via the SVD; throws std::domain_error when A is square but
/// numerically singular (sigma_min <= rank_tol * sigma_max).
ComplexMatrix inverse(const ComplexMatrix& a, const Tolerances& tol = {});

/// Gram matrix A^*A computed without forming the adjoint.
ComplexMatrix gram(const ComplexMatrix& a);

/// Cross Gram matrix A^*B for same-row-count A, B.
ComplexMatrix cross_gram(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest eigenvalue of a Hermitian PSD matrix of side <= 2 in closed form,
/// general side via herm_eig.
double psd_max_eigenvalue(const ComplexMatrix& g, const Tolerances& tol = {});

}  // namespace gcsi
