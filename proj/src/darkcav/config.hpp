#pragma once

#include "darkcav/dynamics.hpp"
#include "darkcav/geometry.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace darkcav {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "darkcav/1";
constexpr const char* kUnits = "g1";

/// Parses a config document. Throws InvalidArgument on malformed JSON, a
/// schema other than kSchema or a unit other than kUnits.
Json parse_config(std::string_view text);

/// Builds SystemParams from the "system" object (and from "geometry" when
/// present). V may be a number (equal dipole strength) or an N x N matrix.
SystemParams system_from_config(const Json& config);

AtomGeometry geometry_from_json(const Json& geometry);

/// Excitation subspaces requested by "analyze.n" (number or array, default 1).
std::vector<unsigned> analyze_subspaces(const Json& config);

/// Resolves a state spec to ladder coordinates. Accepted forms:
///   "|0,e,g>"                         basis state
///   {"basis": "|0,e,g>"}
///   {"amplitudes": {"|0,e,g>": 1, "|0,g,e>": [-1, 0]}}   normalized on load
///   {"collective": s}                 row s of collective_basis, n = 1
///   {"bright": true}                  collective bright state, n = 1
///   {"gs_dark": l}                    l-th closed-form dark state, n = 1
///   {"dark": k, "n": n}               k-th detected dark state of subspace n
ComplexVector resolve_state(const Json& spec, const SystemParams& params,
                            const LadderBasis& ladder);

/// Reads the "simulate" section.
SimulationConfig simulation_from_config(const Json& config);

/// Keys accepted by apply_override.
const std::vector<std::string>& override_keys();

/// Applies --set key=value. `value` is parsed as JSON. Known keys:
/// delta_a, kappa, omega_a, omega_c, g, g<j>, V, Vdd, V<j><k> or V<j>_<k>,
/// n, n0, t_max, dt, cluster_tol, amp_tol, oracle_every, threads.
void apply_override(Json& config, std::string_view key, std::string_view value);

/// Sets one scalar system parameter by key (delta_a, kappa, g<j>, Vdd, V<j><k>).
void set_system_param(SystemParams& params, std::string_view key, double value);

}  // namespace darkcav
