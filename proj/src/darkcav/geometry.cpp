#include "darkcav/geometry.hpp"

#include "darkcav/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace darkcav {

double AtomGeometry::rayleigh_length() const { return std::numbers::pi * w0 * w0 / lambda; }

double AtomGeometry::wavenumber() const { return 2.0 * std::numbers::pi / lambda; }

void AtomGeometry::validate() const {
  if (positions.empty() || positions.size() > kMaxAtoms) {
    throw InvalidArgument("geometry needs between 1 and " + std::to_string(kMaxAtoms) +
                          " atoms");
  }
  if (!(w0 > 0.0) || !std::isfinite(w0)) throw InvalidArgument("w0 must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidArgument("lambda must be positive");
  if (!std::isfinite(C3) || !std::isfinite(g0)) throw InvalidArgument("C3 and g0 must be finite");
  for (const auto& p : positions) {
    for (double x : p) {
      if (!std::isfinite(x)) throw InvalidArgument("atom positions must be finite");
    }
  }
}

RealMatrix dipole_matrix(const AtomGeometry& geo) {
  geo.validate();
  const auto n = static_cast<Eigen::Index>(geo.positions.size());
  RealMatrix v = RealMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const auto& a = geo.positions[static_cast<std::size_t>(j)];
      const auto& b = geo.positions[static_cast<std::size_t>(k)];
      const double r = std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
      if (r < kMinAtomSeparation) {
        std::ostringstream os;
        os << "atoms " << j + 1 << " and " << k + 1 << " coincide (R = " << r << ")";
        throw InvalidArgument(os.str());
      }
      v(j, k) = geo.C3 / (r * r * r);
      v(k, j) = v(j, k);
    }
  }
  return v;
}

double cavity_coupling(const AtomGeometry& geo, std::size_t atom) {
  geo.validate();
  if (atom >= geo.positions.size()) {
    throw InvalidArgument("atom index " + std::to_string(atom + 1) + " out of range");
  }
  const auto& [x, y, z] = geo.positions[atom];
  const double zr = geo.rayleigh_length();
  const double rho2 = x * x + y * y;
  double width2 = 0.0;
  double wz = 0.0;
  if (geo.convention == WaistConvention::Printed) {
    const double arg = 1.0 + z / zr;
    if (!(arg > 0.0)) {
      std::ostringstream os;
      os << "atom " << atom + 1 << ": 1 + z/zR = " << arg << " <= 0, mode width undefined";
      throw InvalidArgument(os.str());
    }
    wz = geo.w0 * std::sqrt(arg);
    width2 = geo.w0 * geo.w0;
  } else {
    wz = geo.w0 * std::sqrt(1.0 + (z / zr) * (z / zr));
    width2 = wz * wz;
  }
  return geo.g0 * std::cos(geo.wavenumber() * z) * std::exp(-rho2 / width2) * (geo.w0 / wz);
}

DiscriminantResult cardano_discriminant(double v12, double v13, double v23) {
  DiscriminantResult r;
  r.P = -(v12 * v12 + v13 * v13 + v23 * v23);
  r.Q = -2.0 * v12 * v13 * v23;
  const double p3 = r.P / 3.0;
  const double q2 = r.Q / 2.0;
  r.Delta = p3 * p3 * p3 + q2 * q2;
  const double a = std::abs(v12);
  const double b = std::abs(v13);
  const double c = std::abs(v23);
  const double hi = std::max({a, b, c});
  const double lo = std::min({a, b, c});
  r.all_zero = hi == 0.0;
  // Relative to |P/3|^3 so the test does not depend on the unit of V.
  const double scale = std::max(std::abs(p3 * p3 * p3), q2 * q2);
  r.degenerate = r.all_zero || std::abs(r.Delta) <= 1e-10 * scale;
  r.equal_magnitudes = hi - lo <= 1e-10 * hi;
  return r;
}

SystemParams params_from_geometry(const AtomGeometry& geo, double delta_a, double kappa) {
  SystemParams p;
  p.n_atoms = geo.positions.size();
  p.V = dipole_matrix(geo);
  for (std::size_t j = 0; j < p.n_atoms; ++j) p.g.push_back(cavity_coupling(geo, j));
  p.delta_a = delta_a;
  p.kappa = kappa;
  p.validate();
  return p;
}

}  // namespace darkcav
