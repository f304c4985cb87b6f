#pragma once

#include "darkcav/arrowhead.hpp"

#include <string>
#include <vector>

namespace darkcav {

struct DegenerateCluster {
  double eigenvalue = 0.0;             // mean of the members
  double width = 0.0;                  // max - min of the members
  std::vector<std::size_t> members;    // indices into L~ (or into the spectrum of H for the oracle)
  ComplexMatrix coupling;              // n_upper x d block seen by the rank test
  std::size_t rank = 0;
  std::size_t dark_dim = 0;            // d - rank
};

struct DarkStateReport {
  std::string method;                  // "arrowhead" or "oracle"
  std::size_t n_atoms = 0;
  unsigned excitation = 0;
  std::size_t n_upper = 0;
  std::size_t n_lower = 0;
  double tolerance = 0.0;              // cluster tol (arrowhead) / amp tol (oracle)
  std::vector<DegenerateCluster> clusters;
  std::vector<ComplexVector> dark_vectors;  // full subspace coordinates, orthonormal
  std::vector<double> eigenvalues;          // one per dark vector
  std::size_t total_dark = 0;
  std::size_t merged_clusters = 0;     // clusters wider than roundoff but within tol

  /// dim x total_dark matrix whose columns are the dark vectors.
  ComplexMatrix dark_basis() const;
  /// Orthogonal projector onto the dark subspace.
  ComplexMatrix projector() const;
};

/// 1e-8 * max(1, max(values) - min(values)).
double default_cluster_tol(const RealVector& values);

/// Groups sorted values whose consecutive gaps are <= tol.
std::vector<std::vector<std::size_t>> cluster_values(const RealVector& ascending, double tol);

/// Dark states read off the arrowhead form: for every cluster of equal dressed
/// lower energies, the kernel of its coupling columns. A singleton cluster
/// with a vanishing column is the rank-0 special case of the same rule.
/// cluster_tol <= 0 selects default_cluster_tol(L~).
DarkStateReport detect(const ArrowheadForm& form, const SubspaceBasis& basis,
                       double cluster_tol = 0.0);

struct OrthogonalizeResult {
  std::vector<ComplexVector> vectors;
  std::vector<std::size_t> dropped;   // input positions found linearly dependent
};

/// Modified Gram-Schmidt (with one re-orthogonalization pass). The first
/// vector keeps its direction. A vector whose residual norm falls below
/// tol * (its own norm) is dropped and reported.
OrthogonalizeResult orthogonalize(const std::vector<ComplexVector>& vectors,
                                  double tol = 1e-10);

/// Brute-force check of the arrowhead route: diagonalize all of H and keep the
/// combinations, inside each eigenvalue cluster, whose upper-state component
/// has norm <= amp_tol.
DarkStateReport oracle(const SubspaceHamiltonian& h, double amp_tol = 1e-8);

struct Agreement {
  bool count_agrees = false;
  double max_angle_sine = 1.0;   // sine of the largest principal angle
  bool agrees = false;
};

Agreement compare_reports(const DarkStateReport& a, const DarkStateReport& b,
                          double angle_tol = 1e-7);

/// Closed-form single-excitation states for equal dipole strength, expressed
/// in the dressed coordinates L(1)..L(N) of collective_basis():
///   gram_schmidt_darks: the N-2 orthonormal dark states
///     [sum_{j=2}^{l+1} G_j G_{l+2} L(j) - (G_2^2+...+G_{l+1}^2) L(l+2)] / norm
///   bright: sum_{s>=2} G_s L(s), normalized.
/// Throws InvalidArgument when a normalization vanishes.
std::vector<RealVector> collective_gram_schmidt_darks(const CollectiveCouplings& c);
RealVector collective_bright_state(const CollectiveCouplings& c);

}  // namespace darkcav
