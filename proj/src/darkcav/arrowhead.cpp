#include "darkcav/arrowhead.hpp"

#include "darkcav/error.hpp"

#include <cmath>

namespace darkcav {

ComplexMatrix ArrowheadForm::matrix() const {
  const auto nu = static_cast<Eigen::Index>(n_upper());
  const auto nl = static_cast<Eigen::Index>(n_lower());
  ComplexMatrix m = ComplexMatrix::Zero(nu + nl, nu + nl);
  m.topLeftCorner(nu, nu) = U;
  m.topRightCorner(nu, nl) = C_tilde;
  m.bottomLeftCorner(nl, nu) = C_tilde.adjoint();
  for (Eigen::Index i = 0; i < nl; ++i) m(nu + i, nu + i) = L_tilde(i);
  return m;
}

ArrowheadForm to_arrowhead(const SubspaceHamiltonian& h) {
  ArrowheadForm form;
  form.U = h.U();
  if (h.lower.size == 0) {
    form.has_lower = false;
    form.L_tilde.resize(0);
    form.C_tilde.resize(static_cast<Eigen::Index>(h.upper.size), 0);
    form.S_l.resize(0, 0);
    return form;
  }
  const auto eig = numerics::eigh(h.L());
  form.L_tilde = eig.eigenvalues;
  form.S_l = eig.eigenvectors.adjoint();
  form.C_tilde = h.C() * eig.eigenvectors;
  return form;
}

RealMatrix collective_basis(std::size_t n_atoms) {
  if (n_atoms < 2) throw InvalidArgument("collective basis needs at least two atoms");
  const auto n = static_cast<Eigen::Index>(n_atoms);
  RealMatrix s = RealMatrix::Zero(n, n);
  s.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (Eigen::Index row = 1; row < n; ++row) {
    const double sz = static_cast<double>(row + 1);
    const double norm = std::sqrt(sz * (sz - 1.0));
    for (Eigen::Index col = 0; col < row; ++col) s(row, col) = -1.0 / norm;
    s(row, row) = (sz - 1.0) / norm;
  }
  return s;
}

CollectiveCouplings collective_couplings(const std::vector<double>& g, double delta_a,
                                         double v_dd) {
  const std::size_t n = g.size();
  if (n < 2) throw InvalidArgument("collective couplings need at least two atoms");
  CollectiveCouplings out;
  out.G.resize(static_cast<Eigen::Index>(n));
  double sum = 0.0;
  for (double gj : g) sum += gj;
  out.G(0) = sum / std::sqrt(static_cast<double>(n));
  // G_s = (-(g_1 + ... + g_{s-1}) + (s-1) g_s) / sqrt(s(s-1))
  double prefix = g[0];
  for (std::size_t s = 2; s <= n; ++s) {
    const double sd = static_cast<double>(s);
    out.G(static_cast<Eigen::Index>(s - 1)) =
        (-prefix + (sd - 1.0) * g[s - 1]) / std::sqrt(sd * (sd - 1.0));
    prefix += g[s - 1];
  }
  const double nd = static_cast<double>(n);
  out.lambda0 = -(nd - 2.0) * delta_a / 2.0 + (nd - 1.0) * v_dd;
  out.lambda1 = -(nd - 2.0) * delta_a / 2.0 - v_dd;
  return out;
}

}  // namespace darkcav
