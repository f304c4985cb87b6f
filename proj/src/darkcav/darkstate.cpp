#include "darkcav/darkstate.hpp"

#include "darkcav/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace darkcav {

ComplexMatrix DarkStateReport::dark_basis() const {
  const auto dim = static_cast<Eigen::Index>(n_upper + n_lower);
  ComplexMatrix b(dim, static_cast<Eigen::Index>(dark_vectors.size()));
  for (std::size_t i = 0; i < dark_vectors.size(); ++i) {
    b.col(static_cast<Eigen::Index>(i)) = dark_vectors[i];
  }
  return b;
}

ComplexMatrix DarkStateReport::projector() const {
  const ComplexMatrix b = dark_basis();
  return b * b.adjoint();
}

double default_cluster_tol(const RealVector& values) {
  if (values.size() == 0) return 1e-8;
  return 1e-8 * std::max(1.0, values.maxCoeff() - values.minCoeff());
}

std::vector<std::vector<std::size_t>> cluster_values(const RealVector& ascending,
                                                     double tol) {
  std::vector<std::vector<std::size_t>> out;
  for (Eigen::Index i = 0; i < ascending.size(); ++i) {
    if (out.empty() || ascending(i) - ascending(i - 1) > tol) out.emplace_back();
    out.back().push_back(static_cast<std::size_t>(i));
  }
  return out;
}

namespace {

void fill_cluster_stats(DegenerateCluster& c, const RealVector& values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (std::size_t m : c.members) {
    const double v = values(static_cast<Eigen::Index>(m));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  c.eigenvalue = sum / static_cast<double>(c.members.size());
  c.width = hi - lo;
}

// Dark vectors are listed by descending eigenvalue; inside a cluster the
// order of the kernel basis is kept.
void finalize(DarkStateReport& report,
              std::vector<std::pair<double, ComplexVector>>& found) {
  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  report.dark_vectors.clear();
  report.eigenvalues.clear();
  for (auto& [lambda, v] : found) {
    numerics::normalize_phase(v);
    report.eigenvalues.push_back(lambda);
    report.dark_vectors.push_back(v);
  }
  report.total_dark = report.dark_vectors.size();
}

double roundoff_width(double scale) {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
}

}  // namespace

DarkStateReport detect(const ArrowheadForm& form, const SubspaceBasis& basis,
                       double cluster_tol) {
  if (form.n_upper() != basis.n_upper || form.n_lower() != basis.n_lower) {
    throw DimensionMismatch("detect: arrowhead form does not match the basis split");
  }
  DarkStateReport report;
  report.method = "arrowhead";
  report.n_atoms = basis.n_atoms;
  report.excitation = basis.excitation;
  report.n_upper = basis.n_upper;
  report.n_lower = basis.n_lower;
  if (!form.has_lower || form.n_lower() == 0) {
    report.tolerance = cluster_tol > 0.0 ? cluster_tol : 1e-8;
    return report;
  }
  const double tol = cluster_tol > 0.0 ? cluster_tol : default_cluster_tol(form.L_tilde);
  report.tolerance = tol;

  // Rank threshold is measured against the size of the whole problem so that
  // a column of pure roundoff counts as zero.
  const double scale = std::max({numerics::max_abs(form.U), numerics::max_abs(form.C_tilde),
                                 form.L_tilde.cwiseAbs().maxCoeff()});
  const auto nu = static_cast<Eigen::Index>(form.n_upper());
  std::vector<std::pair<double, ComplexVector>> found;

  for (auto& members : cluster_values(form.L_tilde, tol)) {
    DegenerateCluster c;
    c.members = std::move(members);
    fill_cluster_stats(c, form.L_tilde);
    if (c.width > roundoff_width(scale)) ++report.merged_clusters;
    const auto d = static_cast<Eigen::Index>(c.members.size());
    c.coupling.resize(nu, d);
    ComplexMatrix dressed(static_cast<Eigen::Index>(form.n_lower()), d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const auto idx = static_cast<Eigen::Index>(c.members[static_cast<std::size_t>(k)]);
      c.coupling.col(k) = form.C_tilde.col(idx);
      // Column idx of S_l^dag is dressed state idx in bare lower coordinates.
      dressed.col(k) = form.S_l.row(idx).adjoint();
    }
    const auto rn = numerics::rank_and_nullspace(c.coupling, numerics::kDefaultRankTol, scale);
    c.rank = rn.rank;
    c.dark_dim = static_cast<std::size_t>(d) - rn.rank;
    if (c.dark_dim > 0) {
      const ComplexMatrix lower = dressed * rn.null_basis;
      std::vector<ComplexVector> vecs;
      for (Eigen::Index k = 0; k < lower.cols(); ++k) {
        ComplexVector full = ComplexVector::Zero(nu + lower.rows());
        full.tail(lower.rows()) = lower.col(k);
        vecs.push_back(std::move(full));
      }
      for (auto& v : orthogonalize(vecs).vectors) found.emplace_back(c.eigenvalue, std::move(v));
    }
    report.clusters.push_back(std::move(c));
  }
  finalize(report, found);
  return report;
}

OrthogonalizeResult orthogonalize(const std::vector<ComplexVector>& vectors, double tol) {
  OrthogonalizeResult out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    ComplexVector v = vectors[i];
    const double norm0 = v.norm();
    if (norm0 == 0.0) {
      out.dropped.push_back(i);
      continue;
    }
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out.vectors) v -= q.dot(v) * q;
    }
    const double norm = v.norm();
    if (norm <= tol * norm0) {
      out.dropped.push_back(i);
      continue;
    }
    out.vectors.push_back(v / norm);
  }
  return out;
}

DarkStateReport oracle(const SubspaceHamiltonian& h, double amp_tol) {
  if (!(amp_tol > 0.0 && amp_tol < 1.0)) {
    throw InvalidArgument("oracle: amp_tol must lie in (0, 1)");
  }
  DarkStateReport report;
  report.method = "oracle";
  report.n_atoms = h.basis.n_atoms;
  report.excitation = h.basis.excitation;
  report.n_upper = h.upper.size;
  report.n_lower = h.lower.size;
  report.tolerance = amp_tol;
  if (h.lower.size == 0) return report;

  const auto eig = numerics::eigh(h.H);
  const auto nu = static_cast<Eigen::Index>(h.upper.size);
  const double tol = default_cluster_tol(eig.eigenvalues);
  const double scale = numerics::max_abs(h.H);
  std::vector<std::pair<double, ComplexVector>> found;

  for (auto& members : cluster_values(eig.eigenvalues, tol)) {
    DegenerateCluster c;
    c.members = std::move(members);
    fill_cluster_stats(c, eig.eigenvalues);
    if (c.width > roundoff_width(scale)) ++report.merged_clusters;
    const auto d = static_cast<Eigen::Index>(c.members.size());
    ComplexMatrix q(eig.eigenvectors.rows(), d);
    for (Eigen::Index k = 0; k < d; ++k) {
      q.col(k) = eig.eigenvectors.col(
          static_cast<Eigen::Index>(c.members[static_cast<std::size_t>(k)]));
    }
    c.coupling = q.topRows(nu);
    // Singular values of the upper block are the upper-state norms of the
    // best-aligned combinations; they never exceed 1, so scale = 1 turns the
    // relative test into the absolute amp_tol test.
    const auto rn = numerics::rank_and_nullspace(c.coupling, amp_tol, 1.0);
    c.rank = rn.rank;
    c.dark_dim = static_cast<std::size_t>(d) - rn.rank;
    if (c.dark_dim > 0) {
      const ComplexMatrix combos = q * rn.null_basis;
      std::vector<ComplexVector> vecs;
      for (Eigen::Index k = 0; k < combos.cols(); ++k) vecs.emplace_back(combos.col(k));
      for (auto& v : orthogonalize(vecs).vectors) {
        const double lambda = v.dot(h.H * v).real();
        found.emplace_back(lambda, std::move(v));
      }
    }
    report.clusters.push_back(std::move(c));
  }
  finalize(report, found);
  return report;
}

Agreement compare_reports(const DarkStateReport& a, const DarkStateReport& b,
                          double angle_tol) {
  Agreement out;
  out.count_agrees = a.total_dark == b.total_dark;
  if (out.count_agrees && a.n_upper + a.n_lower == b.n_upper + b.n_lower) {
    out.max_angle_sine = numerics::subspace_distance(a.dark_basis(), b.dark_basis());
  }
  out.agrees = out.count_agrees && out.max_angle_sine <= angle_tol;
  return out;
}

std::vector<RealVector> collective_gram_schmidt_darks(const CollectiveCouplings& c) {
  const Eigen::Index n = c.G.size();
  std::vector<RealVector> out;
  // partial[m] = G_2^2 + ... + G_m^2 (1-based m).
  for (Eigen::Index l = 1; l + 2 <= n; ++l) {
    double head = 0.0;
    for (Eigen::Index j = 2; j <= l + 1; ++j) head += c.G(j - 1) * c.G(j - 1);
    const double next = c.G(l + 1);
    const double total = head + next * next;
    const double norm = std::sqrt(head * total);
    if (!(norm > 1e-14)) {
      throw InvalidArgument("collective dark state " + std::to_string(l) +
                            " is undefined: G_2..G_" + std::to_string(l + 2) + " vanish");
    }
    RealVector v = RealVector::Zero(n);
    for (Eigen::Index j = 2; j <= l + 1; ++j) v(j - 1) = c.G(j - 1) * next;
    v(l + 1) = -head;
    out.push_back(v / norm);
  }
  return out;
}

RealVector collective_bright_state(const CollectiveCouplings& c) {
  RealVector v = RealVector::Zero(c.G.size());
  v.tail(c.G.size() - 1) = c.G.tail(c.G.size() - 1);
  const double norm = v.norm();
  if (!(norm > 1e-14)) throw InvalidArgument("bright state undefined: G_2..G_N vanish");
  return v / norm;
}

}  // namespace darkcav
