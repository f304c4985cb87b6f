#include "darkcav/model.hpp"

#include "darkcav/error.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace darkcav {

void SystemParams::validate() const {
  if (n_atoms < 1 || n_atoms > kMaxAtoms) {
    throw InvalidArgument("n_atoms must lie in [1, " + std::to_string(kMaxAtoms) + "]");
  }
  if (g.size() != n_atoms) {
    std::ostringstream os;
    os << "g has " << g.size() << " entries for " << n_atoms << " atoms";
    throw InvalidArgument(os.str());
  }
  for (double gj : g) {
    if (!std::isfinite(gj)) throw InvalidArgument("g entries must be finite");
  }
  if (V.rows() != static_cast<Eigen::Index>(n_atoms) || V.cols() != V.rows()) {
    throw InvalidArgument("V must be an N x N matrix");
  }
  if (!V.allFinite()) throw InvalidArgument("V entries must be finite");
  for (Eigen::Index j = 0; j < V.rows(); ++j) {
    if (V(j, j) != 0.0) throw InvalidArgument("V must have a zero diagonal");
    for (Eigen::Index k = 0; k < j; ++k) {
      if (V(j, k) != V(k, j)) throw InvalidArgument("V must be symmetric");
    }
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("kappa must be finite and non-negative");
  }
  if (!std::isfinite(delta_a)) throw InvalidArgument("delta_a must be finite");
}

RealMatrix SystemParams::uniform_dipole(std::size_t n_atoms, double v) {
  const auto n = static_cast<Eigen::Index>(n_atoms);
  RealMatrix m = RealMatrix::Constant(n, n, v);
  m.diagonal().setZero();
  return m;
}

SystemParams SystemParams::uniform(std::vector<double> g, double v_dd, double delta_a,
                                   double kappa) {
  SystemParams p;
  p.n_atoms = g.size();
  p.g = std::move(g);
  p.V = uniform_dipole(p.n_atoms, v_dd);
  p.delta_a = delta_a;
  p.kappa = kappa;
  return p;
}

void SystemParams::set_frequencies(double omega_a_, double omega_c_) {
  omega_a = omega_a_;
  omega_c = omega_c_;
  delta_a = omega_a_ - omega_c_;
}

ComplexMatrix SubspaceHamiltonian::U() const {
  return H.block(upper.begin, upper.begin, upper.size, upper.size);
}
ComplexMatrix SubspaceHamiltonian::C() const {
  return H.block(upper.begin, lower.begin, upper.size, lower.size);
}
ComplexMatrix SubspaceHamiltonian::L() const {
  return H.block(lower.begin, lower.begin, lower.size, lower.size);
}

namespace {

// Off-diagonal element <a|H|b> (identical in both frames).
double coupling_element(const SystemParams& p, const BasisState& a, const BasisState& b) {
  if (a.photons == b.photons) {
    const std::uint16_t diff = a.excited ^ b.excited;
    if (std::popcount(diff) != 2 || a.atomic_excitations() != b.atomic_excitations()) {
      return 0.0;
    }
    const int j = std::countr_zero(diff);
    const int k = std::countr_zero(static_cast<std::uint16_t>(diff & (diff - 1)));
    return p.V(j, k);
  }
  // Make `hi` the state with one more photon.
  const BasisState& hi = a.photons > b.photons ? a : b;
  const BasisState& lo = a.photons > b.photons ? b : a;
  if (hi.photons != lo.photons + 1) return 0.0;
  if ((hi.excited & lo.excited) != hi.excited) return 0.0;
  const std::uint16_t diff = hi.excited ^ lo.excited;
  if (std::popcount(diff) != 1) return 0.0;
  const int j = std::countr_zero(diff);
  return p.g[static_cast<std::size_t>(j)] * std::sqrt(static_cast<double>(hi.photons));
}

SubspaceHamiltonian assemble(const SystemParams& params, const SubspaceBasis& basis,
                             bool lab_frame) {
  params.validate();
  if (params.n_atoms != basis.n_atoms) {
    std::ostringstream os;
    os << "parameters describe " << params.n_atoms << " atoms but the basis has "
       << basis.n_atoms;
    throw DimensionMismatch(os.str());
  }
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  const double n_atoms = static_cast<double>(basis.n_atoms);
  SubspaceHamiltonian out;
  out.basis = basis;
  out.H = ComplexMatrix::Zero(dim, dim);
  out.upper = {0, basis.n_upper};
  out.lower = {basis.n_upper, basis.n_lower};
  for (Eigen::Index i = 0; i < dim; ++i) {
    const BasisState& si = basis.states[static_cast<std::size_t>(i)];
    const double k = si.atomic_excitations();
    if (lab_frame) {
      out.H(i, i) = *params.omega_a * (2.0 * k - n_atoms) / 2.0 +
                    *params.omega_c * static_cast<double>(si.photons);
    } else {
      out.H(i, i) = params.delta_a * (2.0 * k - n_atoms) / 2.0;
    }
    for (Eigen::Index j = 0; j < i; ++j) {
      const double h = coupling_element(params, si, basis.states[static_cast<std::size_t>(j)]);
      out.H(i, j) = h;
      out.H(j, i) = h;
    }
  }
  return out;
}

}  // namespace

SubspaceHamiltonian build_hamiltonian(const SystemParams& params,
                                      const SubspaceBasis& basis) {
  return assemble(params, basis, false);
}

SubspaceHamiltonian build_lab_hamiltonian(const SystemParams& params,
                                          const SubspaceBasis& basis) {
  if (!params.omega_a || !params.omega_c) {
    throw InvalidArgument("lab-frame Hamiltonian needs omega_a and omega_c");
  }
  return assemble(params, basis, true);
}

bool excitation_operator_check(const SubspaceBasis& basis) {
  for (const auto& s : basis.states) {
    if (s.excitations() != basis.excitation) return false;
  }
  return true;
}

ComplexMatrix build_ladder_hamiltonian(const SystemParams& params,
                                       const LadderBasis& ladder) {
  const auto total = static_cast<Eigen::Index>(ladder.total);
  ComplexMatrix h = ComplexMatrix::Zero(total, total);
  for (std::size_t n = 0; n < ladder.spaces.size(); ++n) {
    const auto sub = build_hamiltonian(params, ladder.spaces[n]);
    const auto off = static_cast<Eigen::Index>(ladder.offsets[n]);
    h.block(off, off, sub.H.rows(), sub.H.cols()) = sub.H;
  }
  return h;
}

}  // namespace darkcav
