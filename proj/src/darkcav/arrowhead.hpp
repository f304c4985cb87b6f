#pragma once

#include "darkcav/model.hpp"

namespace darkcav {

// Subspace Hamiltonian with its lower block diagonalized:
//   [ U        C S_l^dag ]
//   [ (..)^dag  diag(L~) ]
// U is left untouched.
struct ArrowheadForm {
  ComplexMatrix U;
  RealVector L_tilde;     // ascending
  ComplexMatrix C_tilde;  // n_upper x n_lower, = C S_l^dag
  ComplexMatrix S_l;      // rows = dressed lower states in bare lower coordinates
  bool has_lower = true;  // false when n > N

  std::size_t n_upper() const { return static_cast<std::size_t>(U.rows()); }
  std::size_t n_lower() const { return static_cast<std::size_t>(L_tilde.size()); }

  /// The full arrowhead matrix in the (upper, dressed lower) basis.
  ComplexMatrix matrix() const;
};

/// Diagonalizes the lower block numerically. The dressed states are ordered by
/// ascending eigenvalue with the eigensolver's phase convention. For n > N the
/// result has has_lower = false and an empty L~.
ArrowheadForm to_arrowhead(const SubspaceHamiltonian& h);

/// Analytic single-excitation collective basis. Row 1 is the symmetric state,
/// row s (s >= 2) is (-1,...,-1, s-1, 0,...)/sqrt(s(s-1)). Throws for N < 2.
RealMatrix collective_basis(std::size_t n_atoms);

struct CollectiveCouplings {
  RealVector G;           // G_1..G_N
  double lambda0 = 0.0;   // energy of the symmetric dressed state
  double lambda1 = 0.0;   // (N-1)-fold degenerate energy of the rest
};

/// Couplings of the collective dressed states to |1,g...g>, for the
/// single-excitation subspace with equal dipole strength v_dd.
CollectiveCouplings collective_couplings(const std::vector<double>& g, double delta_a,
                                         double v_dd);

}  // namespace darkcav
