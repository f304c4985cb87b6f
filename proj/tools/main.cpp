// darkcav command-line front end. Talks to the library only through the C API.
#include "darkcav/darkcav.h"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#ifndef DARKCAV_DEFAULT_PRESET_DIR
#define DARKCAV_DEFAULT_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitDisagree = 3;
constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuntimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string preset;
  std::string out = ".";
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  bool quiet = false;
};

// Owns a string handed out by the library.
struct LibString {
  char* p = nullptr;
  ~LibString() { dc_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

void check(dc_status s, const std::string& what) {
  if (s == DC_OK) return;
  std::string msg = what + ": " + dc_last_error();
  if (s == DC_ERR_INVALID_ARGUMENT || s == DC_ERR_NOT_FOUND) throw UsageError(msg);
  throw RuntimeError(msg);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RuntimeError("cannot write " + path.string());
  out << text;
  if (!out) throw RuntimeError("failed writing " + path.string());
}

fs::path preset_path(const std::string& name) {
  if (name.find('/') != std::string::npos || fs::path(name).extension() == ".json") return name;
  const char* env = std::getenv("DARKCAV_PRESET_DIR");
  const fs::path dir = env && *env ? fs::path(env) : fs::path(DARKCAV_DEFAULT_PRESET_DIR);
  return dir / (name + ".json");
}

std::string load_config(const Options& o) {
  if (o.config.empty() == o.preset.empty()) {
    throw UsageError("give exactly one of --config or --preset");
  }
  const fs::path path = o.config.empty() ? preset_path(o.preset) : fs::path(o.config);
  if (!fs::exists(path)) throw UsageError("config not found: " + path.string());
  std::string text = read_file(path);
  check(dc_config_check(text.c_str()), "malformed config " + path.string());
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got '" + kv + "'");
    LibString next;
    check(dc_config_override(text.c_str(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str(), &next.p),
          "--set " + kv);
    text = next.str();
  }
  return text;
}

fs::path prepare_out(const Options& o) {
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw RuntimeError("cannot create output directory " + o.out + ": " + ec.message());
  return o.out;
}

void emit(const Options& o, const std::string& text) {
  if (!o.quiet) std::cout << text;
}

int run_analysis(const Options& o, const char* command) {
  const std::string cfg = load_config(o);
  if (std::string(command) == "geometry" && cfg.find("\"geometry\"") == std::string::npos) {
    throw UsageError("the geometry command needs a \"geometry\" section");
  }
  dc_report* raw = nullptr;
  check(dc_analyze(cfg.c_str(), command, &raw), command);
  std::unique_ptr<dc_report, decltype(&dc_report_destroy)> report(raw, &dc_report_destroy);
  LibString json;
  LibString summary;
  check(dc_report_json(report.get(), &json.p), "report");
  check(dc_report_summary(report.get(), &summary.p), "summary");
  const fs::path out = prepare_out(o);
  write_file(out / "report.json", json.str());
  write_file(out / "summary.txt", summary.str());
  emit(o, summary.str());
  if (!dc_report_agree(report.get())) {
    std::cerr << "darkcav: detector and oracle disagree; both reports are in "
              << (out / "report.json").string() << "\n";
    return kExitDisagree;
  }
  return kExitOk;
}

int run_simulate(const Options& o) {
  const std::string cfg = load_config(o);
  dc_trajectory* raw = nullptr;
  check(dc_simulate(cfg.c_str(), &raw), "simulate");
  std::unique_ptr<dc_trajectory, decltype(&dc_trajectory_destroy)> traj(raw, &dc_trajectory_destroy);
  LibString csv;
  LibString summary;
  check(dc_trajectory_csv(traj.get(), &csv.p), "trajectory");
  check(dc_trajectory_summary(traj.get(), &summary.p), "summary");
  const fs::path out = prepare_out(o);
  write_file(out / "trajectory.csv", csv.str());
  write_file(out / "summary.txt", summary.str());
  emit(o, summary.str());
  return kExitOk;
}

int run_scan(const Options& o) {
  const std::string cfg = load_config(o);
  LibString csv;
  check(dc_scan(cfg.c_str(), o.seed, &csv.p), "scan");
  const std::string table = csv.str();
  std::size_t rows = 0;
  std::size_t checked = 0;
  std::size_t disagree = 0;
  std::istringstream lines(table);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    ++rows;
    const char last = line.empty() ? '\0' : line.back();
    if (last == '1' || last == '0') {
      if (line[line.size() - 2] != ',') continue;
      ++checked;
      if (last == '0') ++disagree;
    }
  }
  std::ostringstream summary;
  summary << "scan points: " << rows << "\noracle checks: " << checked
          << "\ndisagreements: " << disagree << "\nseed: " << o.seed << "\n";
  const fs::path out = prepare_out(o);
  write_file(out / "scan.csv", table);
  write_file(out / "summary.txt", summary.str());
  emit(o, summary.str());
  return disagree == 0 ? kExitOk : kExitDisagree;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON config file");
  sub->add_option("--preset", o.preset, "preset name (looked up in DARKCAV_PRESET_DIR) or path");
  sub->add_option("--out", o.out, "output directory")->capture_default_str();
  sub->add_option("--set", o.sets, "override key=value (repeatable)");
  sub->add_option("--seed", o.seed, "seed for randomized scan points")->capture_default_str();
  sub->add_flag("-q,--quiet", o.quiet, "do not print the summary");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"darkcav: dark states of cavity-coupled dipole-interacting atoms"};
  app.set_version_flag("--version", std::string(dc_version()));
  app.require_subcommand(1);
  Options o;
  auto* analyze = app.add_subcommand("analyze", "find dark states in excitation subspaces");
  auto* simulate = app.add_subcommand("simulate", "integrate the master equation");
  auto* geometry = app.add_subcommand("geometry", "analyze couplings derived from atom positions");
  auto* scan = app.add_subcommand("scan", "dark-state counts over a parameter grid");
  for (auto* sub : {analyze, simulate, geometry, scan}) add_common(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    if (analyze->parsed()) return run_analysis(o, "analyze");
    if (geometry->parsed()) return run_analysis(o, "geometry");
    if (simulate->parsed()) return run_simulate(o);
    if (scan->parsed()) return run_scan(o);
  } catch (const UsageError& e) {
    std::cerr << "darkcav: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "darkcav: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
