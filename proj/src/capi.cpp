#include "darkcav/darkcav.h"

#include "darkcav/config.hpp"
#include "darkcav/error.hpp"
#include "darkcav/report.hpp"
#include "darkcav/scan.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace darkcav;

struct dc_system {
  SystemParams params;
};

struct dc_report {
  Analysis analysis;
  std::string command;
};

struct dc_trajectory {
  Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

dc_status fail(dc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

dc_status map_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidArgument: return fail(DC_ERR_INVALID_ARGUMENT, e.what());
    case ErrorCode::NotFound: return fail(DC_ERR_NOT_FOUND, e.what());
    case ErrorCode::Numeric: return fail(DC_ERR_NUMERIC, e.what());
    case ErrorCode::Mismatch: return fail(DC_ERR_DIMENSION, e.what());
    case ErrorCode::Io: return fail(DC_ERR_IO, e.what());
  }
  return fail(DC_ERR_INTERNAL, e.what());
}

template <class F>
dc_status guarded(F&& f) {
  try {
    f();
    return DC_OK;
  } catch (const Error& e) {
    return map_error(e);
  } catch (const nlohmann::json::exception& e) {
    return fail(DC_ERR_INVALID_ARGUMENT, std::string("config: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(DC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DC_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

#define DC_REQUIRE(cond, msg) \
  do {                        \
    if (!(cond)) return fail(DC_ERR_INVALID_ARGUMENT, msg); \
  } while (0)

}  // namespace

extern "C" {

const char* dc_version(void) { return "0.1.0"; }

const char* dc_last_error(void) { return g_last_error.c_str(); }

const char* dc_status_name(dc_status status) {
  switch (status) {
    case DC_OK: return "ok";
    case DC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DC_ERR_NOT_FOUND: return "not found";
    case DC_ERR_NUMERIC: return "numerical failure";
    case DC_ERR_DIMENSION: return "dimension mismatch";
    case DC_ERR_IO: return "i/o error";
    case DC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void dc_string_free(char* s) { std::free(s); }

dc_status dc_system_create(size_t n_atoms, const double* g, const double* v, double delta_a,
                           double kappa, dc_system** out) {
  DC_REQUIRE(out, "out is null");
  DC_REQUIRE(g || n_atoms == 0, "g is null");
  return guarded([&] {
    SystemParams p;
    p.n_atoms = n_atoms;
    p.g.assign(g, g + n_atoms);
    const auto n = static_cast<Eigen::Index>(n_atoms);
    p.V = RealMatrix::Zero(n, n);
    if (v) {
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) p.V(j, k) = v[j * n + k];
      }
    }
    p.delta_a = delta_a;
    p.kappa = kappa;
    p.validate();
    *out = new dc_system{std::move(p)};
  });
}

dc_status dc_system_from_config(const char* config_json, dc_system** out) {
  DC_REQUIRE(config_json && out, "null argument");
  return guarded([&] { *out = new dc_system{system_from_config(parse_config(config_json))}; });
}

void dc_system_destroy(dc_system* sys) { delete sys; }

dc_status dc_system_set_frequencies(dc_system* sys, double omega_a, double omega_c) {
  DC_REQUIRE(sys, "system is null");
  return guarded([&] { sys->params.set_frequencies(omega_a, omega_c); });
}

size_t dc_system_atoms(const dc_system* sys) { return sys ? sys->params.n_atoms : 0; }

dc_status dc_subspace_dims(const dc_system* sys, unsigned n, size_t* dim, size_t* n_upper,
                           size_t* n_lower) {
  DC_REQUIRE(sys, "system is null");
  return guarded([&] {
    const auto b = enumerate_subspace(sys->params.n_atoms, n);
    if (dim) *dim = b.dim();
    if (n_upper) *n_upper = b.n_upper;
    if (n_lower) *n_lower = b.n_lower;
  });
}

dc_status dc_basis_label(const dc_system* sys, unsigned n, size_t index, char** out) {
  DC_REQUIRE(sys && out, "null argument");
  return guarded([&] {
    const auto b = enumerate_subspace(sys->params.n_atoms, n);
    if (index >= b.dim()) throw NotFound("basis index out of range");
    *out = copy_string(format_state(b[index], b.n_atoms));
  });
}

dc_status dc_basis_index(const dc_system* sys, unsigned n, const char* label, size_t* out) {
  DC_REQUIRE(sys && label && out, "null argument");
  return guarded([&] {
    const auto b = enumerate_subspace(sys->params.n_atoms, n);
    *out = index_of(b, parse_state(label, b.n_atoms));
  });
}

dc_status dc_hamiltonian(const dc_system* sys, unsigned n, int lab_frame, double* out,
                         size_t capacity) {
  DC_REQUIRE(sys && out, "null argument");
  return guarded([&] {
    const auto b = enumerate_subspace(sys->params.n_atoms, n);
    const auto h = lab_frame ? build_lab_hamiltonian(sys->params, b) : build_hamiltonian(sys->params, b);
    const auto dim = static_cast<std::size_t>(h.H.rows());
    if (capacity < dim * dim) throw InvalidArgument("output buffer too small");
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        out[r * dim + c] = h.H(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)).real();
      }
    }
  });
}

dc_status dc_dark_count(const dc_system* sys, unsigned n, size_t* detected, size_t* oracle_count,
                        int* agree) {
  DC_REQUIRE(sys, "system is null");
  return guarded([&] {
    const auto s = analyze_subspace(sys->params, n);
    if (detected) *detected = s.detected.total_dark;
    if (oracle_count) *oracle_count = s.brute.total_dark;
    if (agree) *agree = s.agreement.agrees ? 1 : 0;
  });
}

dc_status dc_analyze(const char* config_json, const char* command, dc_report** out) {
  DC_REQUIRE(config_json && out, "null argument");
  return guarded([&] {
    auto* r = new dc_report{analyze(parse_config(config_json)), command ? command : "analyze"};
    *out = r;
  });
}

int dc_report_agree(const dc_report* report) { return report && report->analysis.agree ? 1 : 0; }

size_t dc_report_total_dark(const dc_report* report) {
  if (!report) return 0;
  std::size_t total = 0;
  for (const auto& s : report->analysis.subspaces) total += s.detected.total_dark;
  return total;
}

dc_status dc_report_json(const dc_report* report, char** out) {
  DC_REQUIRE(report && out, "null argument");
  return guarded([&] { *out = copy_string(dump_json(analysis_to_json(report->analysis, report->command))); });
}

dc_status dc_report_summary(const dc_report* report, char** out) {
  DC_REQUIRE(report && out, "null argument");
  return guarded([&] { *out = copy_string(analysis_summary(report->analysis)); });
}

void dc_report_destroy(dc_report* report) { delete report; }

dc_status dc_cardano(double v12, double v13, double v23, dc_discriminant* out) {
  DC_REQUIRE(out, "out is null");
  return guarded([&] {
    const auto d = cardano_discriminant(v12, v13, v23);
    *out = {d.P, d.Q, d.Delta, d.degenerate, d.equal_magnitudes, d.all_zero};
  });
}

dc_status dc_simulate(const char* config_json, dc_trajectory** out) {
  DC_REQUIRE(config_json && out, "null argument");
  return guarded([&] {
    const auto cfg = simulation_from_config(parse_config(config_json));
    *out = new dc_trajectory{simulate(cfg)};
  });
}

size_t dc_trajectory_samples(const dc_trajectory* t) { return t ? t->traj.times.size() : 0; }

size_t dc_trajectory_watch_count(const dc_trajectory* t) { return t ? t->traj.names.size() : 0; }

dc_status dc_trajectory_watch_name(const dc_trajectory* t, size_t watch, char** out) {
  DC_REQUIRE(t && out, "null argument");
  DC_REQUIRE(watch < t->traj.names.size(), "watch index out of range");
  return guarded([&] { *out = copy_string(t->traj.names[watch]); });
}

dc_status dc_trajectory_time(const dc_trajectory* t, size_t sample, double* out) {
  DC_REQUIRE(t && out, "null argument");
  DC_REQUIRE(sample < t->traj.times.size(), "sample index out of range");
  *out = t->traj.times[sample];
  return DC_OK;
}

dc_status dc_trajectory_population(const dc_trajectory* t, size_t watch, size_t sample,
                                   double* out) {
  DC_REQUIRE(t && out, "null argument");
  DC_REQUIRE(watch < t->traj.populations.size(), "watch index out of range");
  DC_REQUIRE(sample < t->traj.times.size(), "sample index out of range");
  *out = t->traj.populations[watch][sample];
  return DC_OK;
}

dc_status dc_trajectory_diagnostics(const dc_trajectory* t, dc_diagnostics* out) {
  DC_REQUIRE(t && out, "null argument");
  const Trajectory& tr = t->traj;
  *out = {tr.dt, tr.trace_drift, tr.hermiticity_error, tr.min_eigenvalue, tr.max_excitation_rise,
          tr.convergence_error, dark_flatness(tr), tr.clipped};
  return DC_OK;
}

dc_status dc_trajectory_csv(const dc_trajectory* t, char** out) {
  DC_REQUIRE(t && out, "null argument");
  return guarded([&] { *out = copy_string(t->traj.to_csv()); });
}

dc_status dc_trajectory_summary(const dc_trajectory* t, char** out) {
  DC_REQUIRE(t && out, "null argument");
  return guarded([&] { *out = copy_string(trajectory_summary(t->traj)); });
}

void dc_trajectory_destroy(dc_trajectory* t) { delete t; }

dc_status dc_scan(const char* config_json, uint64_t seed, char** csv_out) {
  DC_REQUIRE(config_json && csv_out, "null argument");
  return guarded([&] {
    *csv_out = copy_string(run_scan(scan_from_config(parse_config(config_json), seed)).to_csv());
  });
}

dc_status dc_config_check(const char* config_json) {
  DC_REQUIRE(config_json, "null argument");
  return guarded([&] { parse_config(config_json); });
}

dc_status dc_config_override(const char* config_json, const char* key, const char* value,
                             char** out_json) {
  DC_REQUIRE(config_json && key && value && out_json, "null argument");
  return guarded([&] {
    Json cfg = parse_config(config_json);
    apply_override(cfg, key, value);
    *out_json = copy_string(dump_json(cfg));
  });
}

const char* dc_override_keys(void) {
  static const std::string keys = [] {
    std::string s;
    for (const auto& k : override_keys()) s += (s.empty() ? "" : " ") + k;
    return s;
  }();
  return keys.c_str();
}

}  // extern "C"
