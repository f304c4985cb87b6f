#include "darkcav/config.hpp"

#include "darkcav/arrowhead.hpp"
#include "darkcav/darkstate.hpp"
#include "darkcav/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace darkcav {

namespace {

double number_or(const Json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) throw InvalidArgument(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::size_t parse_index(std::string_view digits) {
  std::size_t out = 0;
  const auto* end = digits.data() + digits.size();
  const auto res = std::from_chars(digits.data(), end, out);
  if (digits.empty() || res.ec != std::errc() || res.ptr != end || out == 0) {
    throw InvalidArgument("bad atom index '" + std::string(digits) + "'");
  }
  return out;
}

// "V12" -> (1,2); "V3_11" -> (3,11). Returns false if `key` is not of that form.
bool parse_pair_key(std::string_view key, std::size_t& j, std::size_t& k) {
  if (key.size() < 3 || key[0] != 'V' || key == "Vdd") return false;
  const std::string_view rest = key.substr(1);
  if (!std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '_'; })) {
    return false;
  }
  const auto us = rest.find('_');
  if (us == std::string_view::npos) {
    if (rest.size() != 2) throw InvalidArgument("ambiguous key '" + std::string(key) + "', use V<j>_<k>");
    j = parse_index(rest.substr(0, 1));
    k = parse_index(rest.substr(1, 1));
  } else {
    j = parse_index(rest.substr(0, us));
    k = parse_index(rest.substr(us + 1));
  }
  if (j == k) throw InvalidArgument("key '" + std::string(key) + "' names a diagonal entry");
  return true;
}

bool parse_g_key(std::string_view key, std::size_t& j) {
  if (key.size() < 2 || key[0] != 'g') return false;
  const std::string_view rest = key.substr(1);
  if (!std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return false;
  }
  j = parse_index(rest);
  return true;
}

Complex parse_amplitude(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InvalidArgument("amplitude must be a number or [re, im]");
}

ComplexVector embed_lower_single(const RealVector& bare, const LadderBasis& ladder) {
  if (ladder.spaces.size() < 2) {
    throw InvalidArgument("collective states need the single-excitation subspace (n0 >= 1)");
  }
  const SubspaceBasis& sub = ladder.spaces[1];
  ComplexVector out = ComplexVector::Zero(static_cast<Eigen::Index>(ladder.total));
  for (std::size_t j = 0; j < ladder.n_atoms; ++j) {
    BasisState s;
    s.excited = static_cast<std::uint16_t>(1u << j);
    out(static_cast<Eigen::Index>(ladder.offsets[1] + index_of(sub, s))) =
        bare(static_cast<Eigen::Index>(j));
  }
  return out;
}

CollectiveCouplings couplings_of(const SystemParams& p) {
  return collective_couplings(p.g, p.delta_a, 0.0);
}

void check_count(const Json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw InvalidArgument(std::string(what) + " must be a positive integer");
  }
}

Json& ensure_object(Json& parent, const char* key) {
  if (!parent.contains(key)) parent[key] = Json::object();
  if (!parent[key].is_object()) throw InvalidArgument(std::string("'") + key + "' must be an object");
  return parent[key];
}

}  // namespace

Json parse_config(std::string_view text) {
  Json cfg;
  try {
    cfg = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw InvalidArgument("config must be a JSON object");
  if (!cfg.contains("schema") || !cfg["schema"].is_string() ||
      cfg["schema"].get<std::string>() != kSchema) {
    throw InvalidArgument(std::string("config must declare \"schema\": \"") + kSchema + "\"");
  }
  if (cfg.contains("units") &&
      (!cfg["units"].is_string() || cfg["units"].get<std::string>() != kUnits)) {
    throw InvalidArgument(std::string("unsupported units, expected \"") + kUnits + "\"");
  }
  return cfg;
}

AtomGeometry geometry_from_json(const Json& geo) {
  if (!geo.is_object()) throw InvalidArgument("'geometry' must be an object");
  AtomGeometry out;
  const Json& pos = geo.at("positions");
  if (!pos.is_array()) throw InvalidArgument("'positions' must be an array");
  for (const auto& p : pos) {
    if (!p.is_array() || p.size() != 3) throw InvalidArgument("each position must be [x, y, z]");
    out.positions.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  out.C3 = number_or(geo, "C3", 1.0);
  out.g0 = number_or(geo, "g0", 1.0);
  out.w0 = number_or(geo, "w0", 1.0);
  out.lambda = number_or(geo, "lambda", 1.0);
  const std::string conv = geo.value("convention", std::string("printed"));
  if (conv == "printed") {
    out.convention = WaistConvention::Printed;
  } else if (conv == "gaussian") {
    out.convention = WaistConvention::Gaussian;
  } else {
    throw InvalidArgument("convention must be \"printed\" or \"gaussian\"");
  }
  out.validate();
  return out;
}

SystemParams system_from_config(const Json& config) {
  const Json empty = Json::object();
  const Json& s = config.contains("system") ? config.at("system") : empty;
  if (!s.is_object()) throw InvalidArgument("'system' must be an object");
  const double delta_a = number_or(s, "delta_a", 0.0);
  const double kappa = number_or(s, "kappa", 0.0);
  SystemParams p;
  if (config.contains("geometry")) {
    p = params_from_geometry(geometry_from_json(config.at("geometry")), delta_a, kappa);
  } else {
    if (!s.contains("g") || !s["g"].is_array()) throw InvalidArgument("system.g must be an array");
    for (const auto& gj : s["g"]) {
      if (!gj.is_number()) throw InvalidArgument("system.g entries must be numbers");
      p.g.push_back(gj.get<double>());
    }
    p.n_atoms = p.g.size();
    p.delta_a = delta_a;
    p.kappa = kappa;
    const Json v = s.contains("V") ? s.at("V") : Json(0.0);
    if (v.is_number()) {
      p.V = SystemParams::uniform_dipole(p.n_atoms, v.get<double>());
    } else if (v.is_array()) {
      const auto n = static_cast<Eigen::Index>(p.n_atoms);
      if (v.size() != p.n_atoms) throw InvalidArgument("system.V must be N x N");
      p.V.resize(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        const Json& row = v[static_cast<std::size_t>(j)];
        if (!row.is_array() || row.size() != p.n_atoms) throw InvalidArgument("system.V must be N x N");
        for (Eigen::Index k = 0; k < n; ++k) p.V(j, k) = row[static_cast<std::size_t>(k)].get<double>();
      }
    } else {
      throw InvalidArgument("system.V must be a number or a matrix");
    }
  }
  if (s.contains("n_atoms") && s["n_atoms"].get<std::size_t>() != p.n_atoms) {
    throw InvalidArgument("system.n_atoms disagrees with the coupling list");
  }
  if (s.contains("omega_a") || s.contains("omega_c")) {
    if (!s.contains("omega_a") || !s.contains("omega_c")) {
      throw InvalidArgument("omega_a and omega_c must be given together");
    }
    p.set_frequencies(number_or(s, "omega_a", 0.0), number_or(s, "omega_c", 0.0));
    if (s.contains("delta_a") && std::abs(p.delta_a - delta_a) > 1e-12 * std::max(1.0, std::abs(delta_a))) {
      throw InvalidArgument("delta_a disagrees with omega_a - omega_c");
    }
  }
  p.validate();
  return p;
}

std::vector<unsigned> analyze_subspaces(const Json& config) {
  std::vector<unsigned> out;
  const Json a = config.contains("analyze") ? config.at("analyze") : Json::object();
  if (!a.contains("n")) return {1};
  const Json& n = a.at("n");
  auto take = [&](const Json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw InvalidArgument("analyze.n must hold non-negative integers");
    }
    out.push_back(v.get<unsigned>());
  };
  if (n.is_array()) {
    for (const auto& v : n) take(v);
  } else {
    take(n);
  }
  return out;
}

ComplexVector resolve_state(const Json& spec, const SystemParams& params,
                            const LadderBasis& ladder) {
  const auto total = static_cast<Eigen::Index>(ladder.total);
  if (spec.is_string()) return resolve_state(Json{{"basis", spec}}, params, ladder);
  if (!spec.is_object() || spec.size() == 0) throw InvalidArgument("state spec must be a label or an object");

  if (spec.contains("basis")) {
    ComplexVector v = ComplexVector::Zero(total);
    const BasisState s = parse_state(spec["basis"].get<std::string>(), ladder.n_atoms);
    v(static_cast<Eigen::Index>(ladder.global_index(s))) = 1.0;
    return v;
  }
  if (spec.contains("amplitudes")) {
    const Json& amps = spec["amplitudes"];
    if (!amps.is_object() || amps.empty()) throw InvalidArgument("'amplitudes' must be a non-empty object");
    ComplexVector v = ComplexVector::Zero(total);
    for (const auto& [label, amp] : amps.items()) {
      const BasisState s = parse_state(label, ladder.n_atoms);
      v(static_cast<Eigen::Index>(ladder.global_index(s))) += parse_amplitude(amp);
    }
    const double norm = v.norm();
    if (!(norm > 1e-14)) throw InvalidArgument("state amplitudes have zero norm");
    return v / norm;
  }
  if (spec.contains("collective")) {
    check_count(spec["collective"], "collective");
    const auto s = spec["collective"].get<std::size_t>();
    if (s > ladder.n_atoms) throw InvalidArgument("collective index exceeds the atom count");
    const RealMatrix basis = collective_basis(ladder.n_atoms);
    return embed_lower_single(basis.row(static_cast<Eigen::Index>(s - 1)).transpose(), ladder);
  }
  if (spec.contains("bright")) {
    const RealMatrix basis = collective_basis(ladder.n_atoms);
    return embed_lower_single(basis.transpose() * collective_bright_state(couplings_of(params)), ladder);
  }
  if (spec.contains("gs_dark")) {
    check_count(spec["gs_dark"], "gs_dark");
    const auto l = spec["gs_dark"].get<std::size_t>();
    const auto darks = collective_gram_schmidt_darks(couplings_of(params));
    if (l > darks.size()) {
      throw InvalidArgument("gs_dark index " + std::to_string(l) + " exceeds N-2 = " +
                            std::to_string(darks.size()));
    }
    const RealMatrix basis = collective_basis(ladder.n_atoms);
    return embed_lower_single(basis.transpose() * darks[l - 1], ladder);
  }
  if (spec.contains("dark")) {
    check_count(spec["dark"], "dark");
    const auto k = spec["dark"].get<std::size_t>();
    const unsigned n = spec.value("n", 1u);
    if (n >= ladder.spaces.size()) throw InvalidArgument("dark state subspace lies above n0");
    const auto h = build_hamiltonian(params, ladder.spaces[n]);
    const auto report = detect(to_arrowhead(h), h.basis);
    if (k > report.total_dark) {
      throw NotFound("subspace n=" + std::to_string(n) + " has " +
                     std::to_string(report.total_dark) + " dark states");
    }
    ComplexVector v = ComplexVector::Zero(total);
    v.segment(static_cast<Eigen::Index>(ladder.offsets[n]), h.H.rows()) = report.dark_vectors[k - 1];
    return v;
  }
  throw InvalidArgument("unrecognized state spec: " + spec.dump());
}

SimulationConfig simulation_from_config(const Json& config) {
  if (!config.contains("simulate") || !config["simulate"].is_object()) {
    throw InvalidArgument("config has no 'simulate' section");
  }
  const Json& sim = config["simulate"];
  SimulationConfig cfg;
  cfg.params = system_from_config(config);
  if (sim.contains("n0")) {
    if (!sim["n0"].is_number_integer() || sim["n0"].get<long long>() < 0) {
      throw InvalidArgument("simulate.n0 must be a non-negative integer");
    }
    cfg.n0 = sim["n0"].get<unsigned>();
  }
  const LadderBasis ladder = ladder_spaces(cfg.params.n_atoms, cfg.n0);
  if (!sim.contains("initial")) throw InvalidArgument("simulate.initial is required");
  cfg.initial = resolve_state(sim["initial"], cfg.params, ladder);
  cfg.t_max = number_or(sim, "t_max", 30.0);
  cfg.dt = number_or(sim, "dt", 0.0);
  cfg.convergence_check = sim.value("convergence_check", true);

  std::set<std::string> names;
  auto add = [&](WatchState w) {
    if (w.name.empty() || w.name.find_first_of(",\"\n\r") != std::string::npos) {
      throw InvalidArgument("watch name '" + w.name + "' is empty or not CSV-safe");
    }
    if (!names.insert(w.name).second) throw InvalidArgument("duplicate watch name '" + w.name + "'");
    cfg.watch.push_back(std::move(w));
  };
  if (sim.contains("watch")) {
    for (const auto& w : sim["watch"]) {
      WatchState ws;
      ws.name = w.at("name").get<std::string>();
      ws.role = w.value("role", std::string());
      ws.psi = resolve_state(w.at("state"), cfg.params, ladder);
      add(std::move(ws));
    }
  }
  if (sim.value("watch_darks", false)) {
    for (unsigned n = 1; n <= cfg.n0; ++n) {
      const auto h = build_hamiltonian(cfg.params, ladder.spaces[n]);
      const auto report = detect(to_arrowhead(h), h.basis);
      for (std::size_t k = 0; k < report.total_dark; ++k) {
        WatchState ws;
        ws.name = "dark" + std::to_string(n) + "_" + std::to_string(k + 1);
        // Lower-subspace dark states are fed by cavity decay from above, so
        // only those of the top subspace are expected to stay flat.
        ws.role = n == cfg.n0 ? "dark" : "dark_fed";
        ws.psi = ComplexVector::Zero(static_cast<Eigen::Index>(ladder.total));
        ws.psi.segment(static_cast<Eigen::Index>(ladder.offsets[n]), h.H.rows()) =
            report.dark_vectors[k];
        add(std::move(ws));
      }
    }
  }
  return cfg;
}

const std::vector<std::string>& override_keys() {
  static const std::vector<std::string> keys = {
      "delta_a", "kappa", "omega_a", "omega_c", "g",  "g<j>",         "V",
      "Vdd",     "V<j><k>", "V<j>_<k>", "n",     "n0", "t_max",        "dt",
      "cluster_tol", "amp_tol", "oracle_every", "threads"};
  return keys;
}

void apply_override(Json& config, std::string_view key, std::string_view value) {
  Json v;
  try {
    v = Json::parse(value);
  } catch (const nlohmann::json::parse_error&) {
    throw InvalidArgument("value for '" + std::string(key) + "' is not valid JSON: " +
                          std::string(value));
  }
  auto require_number = [&] {
    if (!v.is_number()) throw InvalidArgument("'" + std::string(key) + "' expects a number");
  };
  Json& system = ensure_object(config, "system");
  std::size_t j = 0;
  std::size_t k = 0;
  if (key == "delta_a" || key == "kappa" || key == "omega_a" || key == "omega_c") {
    require_number();
    system[std::string(key)] = v;
  } else if (key == "g" || key == "V") {
    system[std::string(key)] = v;
  } else if (key == "Vdd") {
    require_number();
    system["V"] = v;
  } else if (parse_g_key(key, j)) {
    require_number();
    if (!system.contains("g") || !system["g"].is_array() || system["g"].size() < j) {
      throw InvalidArgument("override '" + std::string(key) + "' refers to a missing coupling");
    }
    system["g"][j - 1] = v;
  } else if (parse_pair_key(key, j, k)) {
    require_number();
    if (!system.contains("g") || !system["g"].is_array()) {
      throw InvalidArgument("override '" + std::string(key) + "' needs system.g");
    }
    const std::size_t n = system["g"].size();
    if (j > n || k > n) throw InvalidArgument("override '" + std::string(key) + "' exceeds N");
    if (!system.contains("V") || system["V"].is_number()) {
      const double vdd = system.contains("V") ? system["V"].get<double>() : 0.0;
      Json m = Json::array();
      for (std::size_t r = 0; r < n; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < n; ++c) row.push_back(r == c ? 0.0 : vdd);
        m.push_back(row);
      }
      system["V"] = m;
    }
    system["V"][j - 1][k - 1] = v;
    system["V"][k - 1][j - 1] = v;
  } else if (key == "n" || key == "cluster_tol" || key == "amp_tol") {
    ensure_object(config, "analyze")[std::string(key)] = v;
  } else if (key == "n0" || key == "t_max" || key == "dt") {
    ensure_object(config, "simulate")[std::string(key)] = v;
  } else if (key == "oracle_every" || key == "threads") {
    ensure_object(config, "scan")[std::string(key)] = v;
  } else {
    std::ostringstream os;
    os << "unknown override key '" << key << "'; known keys:";
    for (const auto& kk : override_keys()) os << ' ' << kk;
    throw InvalidArgument(os.str());
  }
}

void set_system_param(SystemParams& p, std::string_view key, double value) {
  std::size_t j = 0;
  std::size_t k = 0;
  if (key == "delta_a") {
    p.delta_a = value;
  } else if (key == "kappa") {
    p.kappa = value;
  } else if (key == "Vdd") {
    p.V = SystemParams::uniform_dipole(p.n_atoms, value);
  } else if (parse_g_key(key, j)) {
    if (j > p.n_atoms) throw InvalidArgument("parameter '" + std::string(key) + "' exceeds N");
    p.g[j - 1] = value;
  } else if (parse_pair_key(key, j, k)) {
    if (j > p.n_atoms || k > p.n_atoms) {
      throw InvalidArgument("parameter '" + std::string(key) + "' exceeds N");
    }
    p.V(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(k - 1)) = value;
    p.V(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(j - 1)) = value;
  } else {
    throw InvalidArgument("unknown scan parameter '" + std::string(key) + "'");
  }
}

}  // namespace darkcav
