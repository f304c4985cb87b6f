#pragma once

#include "darkcav/model.hpp"

#include <array>
#include <vector>

namespace darkcav {

using Position = std::array<double, 3>;

enum class WaistConvention {
  Printed,   // exp(-(x^2+y^2)/w0^2) * w0/w(z), w(z) = w0 sqrt(1 + z/zR)
  Gaussian,  // exp(-(x^2+y^2)/w(z)^2) * w0/w(z), w(z) = w0 sqrt(1 + (z/zR)^2)
};

/// Atoms in a standing-wave cavity. Lengths in units of w0, energies in units
/// of the reference coupling.
struct AtomGeometry {
  std::vector<Position> positions;
  double C3 = 1.0;
  double g0 = 1.0;
  double w0 = 1.0;
  double lambda = 1.0;
  WaistConvention convention = WaistConvention::Printed;

  double rayleigh_length() const;   // pi w0^2 / lambda
  double wavenumber() const;        // 2 pi / lambda
  void validate() const;
};

constexpr double kMinAtomSeparation = 1e-9;

/// V_jk = C3 / R_jk^3, zero diagonal. Throws for coincident atoms.
RealMatrix dipole_matrix(const AtomGeometry& geo);

/// g_j = g0 cos(k z) exp(-(x^2+y^2)/w^2) w0/w(z) in the selected convention.
/// Throws when 1 + z/zR <= 0 under the printed convention.
double cavity_coupling(const AtomGeometry& geo, std::size_t atom);

struct DiscriminantResult {
  double P = 0.0;
  double Q = 0.0;
  double Delta = 0.0;
  bool degenerate = false;
  bool equal_magnitudes = false;   // |V12| = |V13| = |V23| within relative 1e-10
  bool all_zero = false;           // V = 0: triple root, excluded physically
};

/// Depressed-cubic discriminant of the three-atom dipole matrix:
///   P = -(V12^2+V13^2+V23^2), Q = -2 V12 V13 V23, Delta = (P/3)^3 + (Q/2)^2,
/// degenerate when |Delta| <= 1e-10 * max(|P/3|^3, (Q/2)^2, 1).
DiscriminantResult cardano_discriminant(double v12, double v13, double v23);

SystemParams params_from_geometry(const AtomGeometry& geo, double delta_a, double kappa);

}  // namespace darkcav
