#include "darkcav/report.hpp"

#include "darkcav/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace darkcav {

SubspaceAnalysis analyze_subspace(const SystemParams& params, unsigned n, double cluster_tol,
                                  double amp_tol) {
  SubspaceAnalysis s;
  s.h = build_hamiltonian(params, enumerate_subspace(params.n_atoms, n));
  s.form = to_arrowhead(s.h);
  s.detected = detect(s.form, s.h.basis, cluster_tol);
  s.brute = oracle(s.h, amp_tol);
  s.agreement = compare_reports(s.detected, s.brute);
  return s;
}

Analysis analyze(const Json& config) {
  Analysis a;
  a.params = system_from_config(config);
  if (config.contains("geometry")) {
    a.from_geometry = true;
    a.geometry = geometry_from_json(config["geometry"]);
  }
  const Json opts = config.contains("analyze") ? config["analyze"] : Json::object();
  const double cluster_tol = opts.value("cluster_tol", 0.0);
  const double amp_tol = opts.value("amp_tol", 1e-8);
  for (unsigned n : analyze_subspaces(config)) {
    a.subspaces.push_back(analyze_subspace(a.params, n, cluster_tol, amp_tol));
    a.agree = a.agree && a.subspaces.back().agreement.agrees;
  }
  return a;
}

namespace {

Json system_json(const SystemParams& p) {
  Json s;
  s["n_atoms"] = p.n_atoms;
  s["delta_a"] = p.delta_a;
  s["kappa"] = p.kappa;
  s["g"] = p.g;
  Json v = Json::array();
  for (Eigen::Index j = 0; j < p.V.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < p.V.cols(); ++k) row.push_back(p.V(j, k));
    v.push_back(row);
  }
  s["V"] = v;
  if (p.omega_a) s["omega_a"] = *p.omega_a;
  if (p.omega_c) s["omega_c"] = *p.omega_c;
  return s;
}

Json geometry_json(const AtomGeometry& g) {
  Json out;
  Json pos = Json::array();
  for (const auto& p : g.positions) pos.push_back({p[0], p[1], p[2]});
  out["positions"] = pos;
  out["C3"] = g.C3;
  out["g0"] = g.g0;
  out["w0"] = g.w0;
  out["lambda"] = g.lambda;
  out["convention"] = g.convention == WaistConvention::Printed ? "printed" : "gaussian";
  out["rayleigh_length"] = g.rayleigh_length();
  if (g.positions.size() == 3) {
    const RealMatrix v = dipole_matrix(g);
    const auto d = cardano_discriminant(v(0, 1), v(0, 2), v(1, 2));
    out["cardano"] = {{"P", d.P},
                      {"Q", d.Q},
                      {"Delta", d.Delta},
                      {"degenerate", d.degenerate},
                      {"equal_magnitudes", d.equal_magnitudes},
                      {"all_zero", d.all_zero}};
  }
  return out;
}

Json darks_json(const DarkStateReport& r, const SubspaceBasis& basis) {
  Json list = Json::array();
  for (std::size_t i = 0; i < r.dark_vectors.size(); ++i) {
    Json amps = Json::array();
    const auto& v = r.dark_vectors[i];
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (std::abs(v(k)) <= 1e-12) continue;
      amps.push_back({{"state", format_state(basis[static_cast<std::size_t>(k)], basis.n_atoms)},
                      {"re", v(k).real()},
                      {"im", v(k).imag()}});
    }
    list.push_back({{"eigenvalue", r.eigenvalues[i]}, {"amplitudes", amps}});
  }
  return list;
}

Json clusters_json(const DarkStateReport& r) {
  Json list = Json::array();
  for (const auto& c : r.clusters) {
    list.push_back({{"eigenvalue", c.eigenvalue},
                    {"width", c.width},
                    {"members", c.members},
                    {"rank", c.rank},
                    {"dark_dim", c.dark_dim}});
  }
  return list;
}

Json report_json(const DarkStateReport& r, const SubspaceBasis& basis) {
  return {{"method", r.method},
          {"tolerance", r.tolerance},
          {"total_dark", r.total_dark},
          {"merged_clusters", r.merged_clusters},
          {"clusters", clusters_json(r)},
          {"dark_states", darks_json(r, basis)}};
}

}  // namespace

Json analysis_to_json(const Analysis& a, const std::string& command) {
  Json out;
  out["schema"] = kSchema;
  out["units"] = kUnits;
  out["command"] = command;
  out["system"] = system_json(a.params);
  if (a.geometry) out["geometry"] = geometry_json(*a.geometry);
  Json subs = Json::array();
  std::size_t total = 0;
  for (const auto& s : a.subspaces) {
    Json j;
    j["n"] = s.h.basis.excitation;
    j["dim"] = s.h.basis.dim();
    j["n_upper"] = s.h.basis.n_upper;
    j["n_lower"] = s.h.basis.n_lower;
    Json labels = Json::array();
    for (const auto& st : s.h.basis.states) labels.push_back(format_state(st, s.h.basis.n_atoms));
    j["basis"] = labels;
    j["L_tilde"] = std::vector<double>(s.form.L_tilde.data(),
                                       s.form.L_tilde.data() + s.form.L_tilde.size());
    const Json det = report_json(s.detected, s.h.basis);
    for (const auto& [k, v] : det.items()) j[k] = v;
    j["oracle"] = {{"total_dark", s.brute.total_dark},
                   {"max_angle_sine", s.agreement.max_angle_sine},
                   {"agrees", s.agreement.agrees}};
    if (!s.agreement.agrees) j["oracle_report"] = report_json(s.brute, s.h.basis);
    total += s.detected.total_dark;
    subs.push_back(j);
  }
  out["subspaces"] = subs;
  out["total_dark"] = total;
  out["agree"] = a.agree;
  return out;
}

namespace {

void appendf(std::string& out, const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  out += buf;
}

}  // namespace

std::string analysis_summary(const Analysis& a) {
  std::string out;
  appendf(out, "N = %zu, delta_a = %g, kappa = %g (units of g1)\n", a.params.n_atoms,
          a.params.delta_a, a.params.kappa);
  out += "g =";
  for (double g : a.params.g) appendf(out, " %.6g", g);
  out += "\n";
  if (a.geometry && a.geometry->positions.size() == 3) {
    const RealMatrix v = dipole_matrix(*a.geometry);
    const auto d = cardano_discriminant(v(0, 1), v(0, 2), v(1, 2));
    appendf(out, "cardano: P = %.6g, Q = %.6g, Delta = %.6g, degenerate = %s, equal |V| = %s\n",
            d.P, d.Q, d.Delta, d.degenerate ? "yes" : "no", d.equal_magnitudes ? "yes" : "no");
  }
  for (const auto& s : a.subspaces) {
    const auto& b = s.h.basis;
    appendf(out, "\nsubspace n = %u: dim %zu (%zu upper, %zu lower)\n", b.excitation, b.dim(),
            b.n_upper, b.n_lower);
    if (!s.form.has_lower) out += "  no lower states, no dark states\n";
    if (!s.detected.clusters.empty()) {
      out += "  cluster  eigenvalue      size  rank  dark\n";
      for (std::size_t i = 0; i < s.detected.clusters.size(); ++i) {
        const auto& c = s.detected.clusters[i];
        appendf(out, "  %7zu  %+.9f  %4zu  %4zu  %4zu\n", i + 1, c.eigenvalue, c.members.size(),
                c.rank, c.dark_dim);
      }
    }
    appendf(out, "  dark states: %zu (oracle %zu, max sin angle %.2e, %s)\n",
            s.detected.total_dark, s.brute.total_dark, s.agreement.max_angle_sine,
            s.agreement.agrees ? "agree" : "DISAGREE");
    if (s.detected.merged_clusters > 0) {
      appendf(out, "  note: %zu near-degenerate cluster(s) merged within tolerance %.3g\n",
              s.detected.merged_clusters, s.detected.tolerance);
    }
    for (std::size_t i = 0; i < s.detected.dark_vectors.size(); ++i) {
      appendf(out, "  D%zu  E = %+.9f\n", i + 1, s.detected.eigenvalues[i]);
      const auto& v = s.detected.dark_vectors[i];
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) <= 1e-12) continue;
        const std::string label = format_state(b[static_cast<std::size_t>(k)], b.n_atoms);
        if (std::abs(v(k).imag()) <= 1e-12) {
          appendf(out, "      %-14s %+.9f\n", label.c_str(), v(k).real());
        } else {
          appendf(out, "      %-14s %+.9f %+.9fi\n", label.c_str(), v(k).real(), v(k).imag());
        }
      }
    }
  }
  appendf(out, "\nresult: %s\n", a.agree ? "detector and oracle agree" : "detector and oracle DISAGREE");
  return out;
}

double dark_flatness(const Trajectory& t) {
  double worst = 0.0;
  for (std::size_t w = 0; w < t.populations.size(); ++w) {
    if (t.roles[w] != "dark" || t.populations[w].empty()) continue;
    const double p0 = t.populations[w].front();
    for (double p : t.populations[w]) worst = std::max(worst, std::abs(p - p0));
  }
  return worst;
}

std::string trajectory_summary(const Trajectory& t) {
  std::string out;
  appendf(out, "steps: %zu, dt = %.6g, t_end = %.6g\n", t.times.empty() ? 0 : t.times.size() - 1,
          t.dt, t.times.empty() ? 0.0 : t.times.back());
  out += "\nstate                 role      P(0)          P(end)\n";
  for (std::size_t w = 0; w < t.names.size(); ++w) {
    const auto& p = t.populations[w];
    appendf(out, "%-20s  %-8s  %.10f  %.10f\n", t.names[w].c_str(), t.roles[w].c_str(),
            p.front(), p.back());
  }
  bool any_dark = std::find(t.roles.begin(), t.roles.end(), "dark") != t.roles.end();
  if (any_dark) appendf(out, "\ndark flatness: max |P(t) - P(0)| = %.3e\n", dark_flatness(t));
  appendf(out, "\ntrace drift        %.3e\n", t.trace_drift);
  appendf(out, "hermiticity error  %.3e\n", t.hermiticity_error);
  appendf(out, "min eigenvalue     %.3e\n", t.min_eigenvalue);
  appendf(out, "max <N> increase   %.3e\n", t.max_excitation_rise);
  appendf(out, "dt/2 difference    %.3e\n", t.convergence_error);
  if (t.clipped > 0) appendf(out, "clipped readings   %zu\n", t.clipped);
  return out;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace darkcav
