#include "darkcav/scan.hpp"

#include "darkcav/arrowhead.hpp"
#include "darkcav/darkstate.hpp"
#include "darkcav/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

namespace darkcav {

namespace {

void check_key(const std::string& key, const SystemParams& base) {
  if (key == "n") return;
  SystemParams probe = base;
  set_system_param(probe, key, 0.0);
}

unsigned as_subspace(double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 64.0) {
    throw InvalidArgument("scan value for n must be a non-negative integer");
  }
  return static_cast<unsigned>(v);
}

}  // namespace

ScanSpec scan_from_config(const Json& config, std::uint64_t seed) {
  if (!config.contains("scan") || !config["scan"].is_object()) {
    throw InvalidArgument("config has no 'scan' section");
  }
  const Json& s = config["scan"];
  ScanSpec spec;
  spec.base = system_from_config(config);
  spec.seed = seed;
  if (s.contains("n")) {
    spec.n = s["n"].get<unsigned>();
  } else {
    const auto ns = analyze_subspaces(config);
    spec.n = ns.front();
  }
  spec.oracle_every = s.value("oracle_every", std::size_t{1});
  spec.threads = s.value("threads", std::size_t{0});
  if (s.contains("axes")) {
    for (const auto& a : s["axes"]) {
      ScanAxis axis;
      axis.key = a.at("key").get<std::string>();
      check_key(axis.key, spec.base);
      if (a.contains("values")) {
        for (const auto& v : a["values"]) axis.values.push_back(v.get<double>());
      } else {
        const double from = a.at("from").get<double>();
        const double to = a.at("to").get<double>();
        const auto steps = a.at("steps").get<std::size_t>();
        for (std::size_t i = 0; i < steps; ++i) {
          const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
          // Endpoints are hit exactly.
          axis.values.push_back(i + 1 == steps && steps > 1 ? to : from + t * (to - from));
        }
      }
      spec.axes.push_back(std::move(axis));
    }
  }
  if (s.contains("random")) {
    const Json& r = s["random"];
    spec.random_count = r.value("count", std::size_t{0});
    if (r.contains("ranges")) {
      for (const auto& [key, range] : r["ranges"].items()) {
        check_key(key, spec.base);
        if (key == "n") throw InvalidArgument("n cannot be drawn at random");
        if (!range.is_array() || range.size() != 2) {
          throw InvalidArgument("random range for '" + key + "' must be [lo, hi]");
        }
        spec.random.push_back({key, range[0].get<double>(), range[1].get<double>()});
      }
    }
  }
  return spec;
}

ScanTable run_scan(const ScanSpec& spec) {
  ScanTable table;
  for (const auto& a : spec.axes) table.keys.push_back(a.key);
  for (const auto& r : spec.random) {
    if (std::find(table.keys.begin(), table.keys.end(), r.key) == table.keys.end()) {
      table.keys.push_back(r.key);
    }
  }

  // Grid points first, then random points; each point is a full value row.
  std::vector<std::vector<double>> points;
  std::size_t grid = spec.axes.empty() ? 0 : 1;
  for (const auto& a : spec.axes) grid *= a.values.size();
  for (std::size_t idx = 0; idx < grid; ++idx) {
    std::vector<double> row(table.keys.size(), std::nan(""));
    std::size_t rem = idx;
    for (std::size_t ax = spec.axes.size(); ax-- > 0;) {
      const auto& vals = spec.axes[ax].values;
      row[ax] = vals[rem % vals.size()];
      rem /= vals.size();
    }
    points.push_back(std::move(row));
  }
  if (spec.random_count > 0) {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (std::size_t i = 0; i < spec.random_count; ++i) {
      std::vector<double> row(table.keys.size(), std::nan(""));
      for (const auto& r : spec.random) {
        const auto col = static_cast<std::size_t>(
            std::find(table.keys.begin(), table.keys.end(), r.key) - table.keys.begin());
        row[col] = r.lo + (r.hi - r.lo) * unit(rng);
      }
      points.push_back(std::move(row));
    }
  }

  table.rows.resize(points.size());
  auto evaluate = [&](std::size_t i) {
    SystemParams p = spec.base;
    unsigned n = spec.n;
    ScanRow& row = table.rows[i];
    row.index = i;
    row.values = points[i];
    for (std::size_t c = 0; c < table.keys.size(); ++c) {
      if (std::isnan(points[i][c])) continue;  // axis not drawn for this point
      if (table.keys[c] == "n") {
        n = as_subspace(points[i][c]);
      } else {
        set_system_param(p, table.keys[c], points[i][c]);
      }
    }
    const auto h = build_hamiltonian(p, enumerate_subspace(p.n_atoms, n));
    const auto report = detect(to_arrowhead(h), h.basis);
    row.total_dark = report.total_dark;
    if (spec.oracle_every > 0 && i % spec.oracle_every == 0) {
      row.agree = compare_reports(report, oracle(h)).agrees;
    }
  };

  std::size_t workers = spec.threads > 0 ? spec.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, points.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      try {
        evaluate(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = points.size();
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

std::string ScanTable::to_csv() const {
  std::string out = "index";
  for (const auto& k : keys) out += "," + k;
  out += ",total_dark,oracle_agree\n";
  char buf[40];
  for (const auto& r : rows) {
    out += std::to_string(r.index);
    for (double v : r.values) {
      if (std::isnan(v)) {
        out += ',';
      } else {
        std::snprintf(buf, sizeof buf, ",%.17g", v);
        out += buf;
      }
    }
    out += "," + std::to_string(r.total_dark) + ",";
    if (r.agree) out += *r.agree ? "1" : "0";
    out += '\n';
  }
  return out;
}

}  // namespace darkcav
