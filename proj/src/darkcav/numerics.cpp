#include "darkcav/numerics.hpp"

#include "darkcav/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace darkcav::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

void check_hermitian(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << "eigh: matrix is " << a.rows() << "x" << a.cols() << ", not square";
    throw InvalidArgument(os.str());
  }
  if (!a.allFinite()) throw InvalidArgument("eigh: matrix has non-finite entries");
  const double asym = hermitian_asymmetry(a);
  if (asym > 1e-12 * std::max(1.0, max_abs(a))) {
    std::ostringstream os;
    os << "eigh: matrix is not Hermitian (max |A - A^dagger| = " << asym << ")";
    throw InvalidArgument(os.str());
  }
}

// Rotates columns/rows p,q of m by the 2x2 unitary j: m <- j^dagger m j.
void rotate(ComplexMatrix& m, ComplexMatrix& v, Eigen::Index p, Eigen::Index q,
            const Complex j00, const Complex j01, const Complex j10,
            const Complex j11) {
  const Eigen::Index n = m.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex mkp = m(k, p);
    const Complex mkq = m(k, q);
    m(k, p) = mkp * j00 + mkq * j10;
    m(k, q) = mkp * j01 + mkq * j11;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex mpk = m(p, k);
    const Complex mqk = m(q, k);
    m(p, k) = std::conj(j00) * mpk + std::conj(j10) * mqk;
    m(q, k) = std::conj(j01) * mpk + std::conj(j11) * mqk;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * j00 + vkq * j10;
    v(k, q) = vkp * j01 + vkq * j11;
  }
  m(p, q) = 0.0;
  m(q, p) = 0.0;
  m(p, p) = m(p, p).real();
  m(q, q) = m(q, q).real();
}

void gram_schmidt_columns(ComplexMatrix& v, Eigen::Index first, Eigen::Index last) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = first; j < last; ++j) {
      for (Eigen::Index i = first; i < j; ++i) {
        const Complex proj = v.col(i).dot(v.col(j));
        v.col(j) -= proj * v.col(i);
      }
      v.col(j).normalize();
    }
  }
}

}  // namespace

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermitian_asymmetry(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void normalize_phase(ComplexVector& v, double tol) {
  if (v.size() == 0) return;
  const double vmax = v.cwiseAbs().maxCoeff();
  if (vmax == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > tol * vmax) {
      v *= std::conj(v(i)) / mag;
      v(i) = mag;
      return;
    }
  }
}

EigDecomposition eigh(const ComplexMatrix& a) {
  check_hermitian(a);
  const Eigen::Index n = a.rows();
  ComplexMatrix m = 0.5 * (a + a.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double norm = m.norm();
  if (n > 1 && norm > 0.0) {
    const double target = 4.0 * kEps * norm;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_norm(m) <= target) break;
      for (Eigen::Index p = 0; p < n - 1; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) {
          const Complex apq = m(p, q);
          const double r = std::abs(apq);
          if (r <= 1e-3 * kEps * norm) continue;
          const Complex phase = apq / r;
          const double theta = (m(q, q).real() - m(p, p).real()) / (2.0 * r);
          double t;
          if (std::abs(theta) > 1e150) {
            t = 0.5 / theta;
          } else {
            t = (theta >= 0.0 ? 1.0 : -1.0) /
                (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          rotate(m, v, p, q, c, s * phase, -s * std::conj(phase), c);
        }
      }
    }
    if (sweep == kMaxSweeps && off_diagonal_norm(m) > 1e-12 * norm) {
      throw NumericError("eigh: Jacobi iteration did not converge");
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return m(i, i).real() < m(j, j).real();
  });

  EigDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = m(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }

  // Re-orthonormalize inside clusters of (numerically) equal eigenvalues.
  const double scale =
      std::max(1.0, n > 0 ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0);
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k == n || out.eigenvalues(k) - out.eigenvalues(k - 1) > 1e-10 * scale) {
      if (k - start > 1) gram_schmidt_columns(out.eigenvectors, start, k);
      start = k;
    }
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    ComplexVector col = out.eigenvectors.col(k);
    normalize_phase(col);
    out.eigenvectors.col(k) = col;
  }
  return out;
}

RealVector eigvalsh(const ComplexMatrix& a) { return eigh(a).eigenvalues; }

RankNullspace rank_and_nullspace(const ComplexMatrix& b, double rel_tol,
                                 double scale) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw InvalidArgument("rank_and_nullspace: rel_tol must lie in (0, 1)");
  }
  RankNullspace out;
  const Eigen::Index cols = b.cols();
  if (b.rows() == 0 || cols == 0) {
    out.rank = 0;
    out.null_basis = ComplexMatrix::Identity(cols, cols);
    out.singular_values.resize(0);
    return out;
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(b, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double smax = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  const double threshold = rel_tol * std::max(smax, scale);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values(i) > threshold && out.singular_values(i) > 0.0) ++rank;
  }
  out.rank = rank;
  const Eigen::Index nullity = cols - static_cast<Eigen::Index>(rank);
  out.null_basis = svd.matrixV().rightCols(nullity);
  return out;
}

double subspace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols() || a.rows() != b.rows()) return 1.0;
  if (a.cols() == 0) return 0.0;
  const ComplexMatrix residual = b - a * (a.adjoint() * b);
  Eigen::JacobiSVD<ComplexMatrix> svd(residual);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return std::min(1.0, smax);
}

ComplexMatrix rk4_step(const LinearMap& deriv, const ComplexMatrix& rho,
                       double dt, std::size_t step_index) {
  if (!(dt > 0.0)) throw InvalidArgument("rk4_step: dt must be positive");
  auto checked = [&](ComplexMatrix k, int stage) {
    if (!k.allFinite()) {
      std::ostringstream os;
      os << "rk4_step: non-finite derivative at step " << step_index << " (stage "
         << stage << ")";
      throw NumericError(os.str());
    }
    return k;
  };
  const ComplexMatrix k1 = checked(deriv(rho), 1);
  const ComplexMatrix k2 = checked(deriv(rho + (0.5 * dt) * k1), 2);
  const ComplexMatrix k3 = checked(deriv(rho + (0.5 * dt) * k2), 3);
  const ComplexMatrix k4 = checked(deriv(rho + dt * k3), 4);
  ComplexMatrix next = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  if (!next.allFinite()) {
    std::ostringstream os;
    os << "rk4_step: non-finite state at step " << step_index;
    throw NumericError(os.str());
  }
  return next;
}

}  // namespace darkcav::numerics
