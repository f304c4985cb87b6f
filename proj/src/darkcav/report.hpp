#pragma once

#include "darkcav/config.hpp"
#include "darkcav/darkstate.hpp"

#include <string>
#include <vector>

namespace darkcav {

struct SubspaceAnalysis {
  SubspaceHamiltonian h;
  ArrowheadForm form;
  DarkStateReport detected;
  DarkStateReport brute;     // oracle
  Agreement agreement;
};

SubspaceAnalysis analyze_subspace(const SystemParams& params, unsigned n,
                                  double cluster_tol = 0.0, double amp_tol = 1e-8);

struct Analysis {
  SystemParams params;
  std::vector<SubspaceAnalysis> subspaces;
  bool agree = true;
  bool from_geometry = false;
  std::optional<AtomGeometry> geometry;
};

/// Runs detect and the oracle on every subspace listed in analyze.n.
Analysis analyze(const Json& config);

/// report.json content. The oracle report is included in full for any
/// subspace where the two methods disagree.
Json analysis_to_json(const Analysis& a, const std::string& command);

/// Plain-text table of clusters, ranks, counts and dark-state amplitudes.
std::string analysis_summary(const Analysis& a);

/// Steady-state populations, integrity figures and the flatness of every
/// watch entry with role "dark".
std::string trajectory_summary(const Trajectory& t);

/// Largest |P(t) - P(0)| over the entries with role "dark" (0 if none).
double dark_flatness(const Trajectory& t);

/// Dumps with two-space indentation and a trailing newline.
std::string dump_json(const Json& j);

}  // namespace darkcav
