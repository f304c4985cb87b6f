#pragma once

#include "darkcav/hilbert.hpp"
#include "darkcav/numerics.hpp"

#include <optional>
#include <vector>

namespace darkcav {

/// Cavity + N atom parameters in the frame rotating at the cavity frequency.
/// All energies and rates share one unit (the figures use g_1).
struct SystemParams {
  std::size_t n_atoms = 0;
  double delta_a = 0.0;      // omega_a - omega_c
  std::vector<double> g;     // atom-cavity couplings
  RealMatrix V;              // symmetric dipole-dipole matrix, zero diagonal
  double kappa = 0.0;        // cavity field decay rate
  std::optional<double> omega_a;
  std::optional<double> omega_c;

  /// Throws InvalidArgument on any violated invariant.
  void validate() const;

  /// Coupling for an equal-strength dipole matrix: V_jk = v for j != k.
  static RealMatrix uniform_dipole(std::size_t n_atoms, double v);

  /// Convenience constructor for the equal-V family used throughout the
  /// N = 2, 3, 4 analyses.
  static SystemParams uniform(std::vector<double> g, double v_dd, double delta_a = 0.0,
                              double kappa = 0.0);

  /// Sets omega_a / omega_c and derives delta_a from them.
  void set_frequencies(double omega_a_, double omega_c_);
};

struct BlockRange {
  std::size_t begin = 0;
  std::size_t size = 0;
};

struct SubspaceHamiltonian {
  SubspaceBasis basis;
  ComplexMatrix H;
  BlockRange upper;
  BlockRange lower;

  ComplexMatrix U() const;
  ComplexMatrix C() const;
  ComplexMatrix L() const;
};

/// Rotating-frame Hamiltonian restricted to `basis`. Matrix elements are
/// computed directly from pairs of basis states:
///   diagonal          Delta_a (2k - N) / 2, k excited atoms
///   hop j <-> j'      V_jj' between configurations differing by one moved
///                     excitation at equal photon number
///   absorb/emit       g_j sqrt(m) between |m, ..g_j..> and |m-1, ..e_j..>
SubspaceHamiltonian build_hamiltonian(const SystemParams& params,
                                      const SubspaceBasis& basis);

/// Lab-frame Hamiltonian (needs omega_a and omega_c). Differs from the
/// rotating-frame one by omega_c (n - N/2) on the diagonal.
SubspaceHamiltonian build_lab_hamiltonian(const SystemParams& params,
                                          const SubspaceBasis& basis);

/// True iff every state in `basis` carries exactly basis.excitation quanta.
bool excitation_operator_check(const SubspaceBasis& basis);

/// Block-diagonal Hamiltonian over a ladder of subspaces.
ComplexMatrix build_ladder_hamiltonian(const SystemParams& params,
                                       const LadderBasis& ladder);

}  // namespace darkcav
