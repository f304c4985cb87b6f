#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace darkcav {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

namespace numerics {

/// Largest absolute entry, 0 for an empty matrix.
double max_abs(const ComplexMatrix& a);

/// max |A - A^dagger| over all entries.
double hermitian_asymmetry(const ComplexMatrix& a);

struct EigDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns, unitary
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Eigenvalues come back ascending. Each eigenvector is phase-fixed so that its
/// first component of non-negligible magnitude is real and positive, and
/// eigenvectors of (numerically) degenerate eigenvalues are re-orthonormalized
/// with two passes of modified Gram-Schmidt.
///
/// Throws InvalidArgument if A is not square or if its max elementwise
/// asymmetry exceeds 1e-12 * max(1, |A|_max).
EigDecomposition eigh(const ComplexMatrix& a);

/// Eigenvalues only (same solver, same ordering).
RealVector eigvalsh(const ComplexMatrix& a);

struct RankNullspace {
  std::size_t rank = 0;
  ComplexMatrix null_basis;   // cols x (cols - rank), orthonormal columns
  RealVector singular_values; // descending
};

constexpr double kDefaultRankTol = 1e-10;

/// Numerical rank and kernel of B from its singular values.
///
/// rank = #{sigma_i > rel_tol * max(sigma_max, scale)}. With scale = 0 this is
/// the plain relative criterion; callers that know the magnitude of the
/// surrounding problem pass it as `scale` so that a block of pure roundoff is
/// reported as rank 0 instead of being judged against its own tiny sigma_max.
RankNullspace rank_and_nullspace(const ComplexMatrix& b,
                                 double rel_tol = kDefaultRankTol,
                                 double scale = 0.0);

/// Sine of the largest principal angle between span(a) and span(b), both given
/// with orthonormal columns. Returns 1 when the dimensions differ.
double subspace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// One classical fourth-order Runge-Kutta step of d(rho)/dt = deriv(rho).
/// `step_index` only feeds the diagnostic when a stage goes non-finite.
ComplexMatrix rk4_step(const LinearMap& deriv, const ComplexMatrix& rho,
                       double dt, std::size_t step_index = 0);

/// Fix the global phase so the first entry with |x| > tol * |v|_inf is real
/// and positive.
void normalize_phase(ComplexVector& v, double tol = 1e-8);

}  // namespace numerics
}  // namespace darkcav
