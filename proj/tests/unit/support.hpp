#pragma once

#include "darkcav/numerics.hpp"

#include <initializer_list>
#include <random>

namespace testing {

using darkcav::ComplexMatrix;
using darkcav::RealMatrix;

inline ComplexMatrix rows(std::initializer_list<std::initializer_list<double>> r) {
  ComplexMatrix m(static_cast<Eigen::Index>(r.size()),
                  static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : r) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = {u(rng), u(rng)};
  }
  return 0.5 * (a + a.adjoint());
}

inline double projector_distance(const ComplexMatrix& basis_a, const ComplexMatrix& basis_b) {
  const ComplexMatrix pa = basis_a * basis_a.adjoint();
  const ComplexMatrix pb = basis_b * basis_b.adjoint();
  return max_diff(pa, pb);
}

}  // namespace testing

#include "darkcav/hilbert.hpp"

#include <string>
#include <utility>
#include <vector>

namespace testing {

// Normalized vector in the coordinates of `basis` from (label, amplitude) pairs.
inline darkcav::ComplexVector state_vector(const darkcav::SubspaceBasis& basis,
                                           const std::vector<std::pair<std::string, double>>& terms) {
  darkcav::ComplexVector v = darkcav::ComplexVector::Zero(static_cast<Eigen::Index>(basis.dim()));
  for (const auto& [label, amp] : terms) {
    v(static_cast<Eigen::Index>(darkcav::index_of(basis, darkcav::parse_state(label, basis.n_atoms)))) += amp;
  }
  return v / v.norm();
}

}  // namespace testing
