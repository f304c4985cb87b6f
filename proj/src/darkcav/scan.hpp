#pragma once

#include "darkcav/config.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace darkcav {

struct ScanAxis {
  std::string key;              // delta_a, kappa, g<j>, Vdd, V<j><k>, n
  std::vector<double> values;
};

struct ScanRange {
  std::string key;
  double lo = 0.0;
  double hi = 0.0;
};

struct ScanSpec {
  SystemParams base;
  unsigned n = 1;
  std::vector<ScanAxis> axes;          // cartesian product, first axis slowest
  std::vector<ScanRange> random;       // uniform draws appended after the grid
  std::size_t random_count = 0;
  std::uint64_t seed = 0;
  std::size_t oracle_every = 1;        // 0 disables the oracle
  std::size_t threads = 0;             // 0 = hardware concurrency
};

struct ScanRow {
  std::size_t index = 0;
  std::vector<double> values;          // one per column key
  std::size_t total_dark = 0;
  std::optional<bool> agree;           // empty when the oracle was skipped
};

struct ScanTable {
  std::vector<std::string> keys;
  std::vector<ScanRow> rows;

  /// "index,<keys>,total_dark,oracle_agree" with %.17g numbers; the agreement
  /// column is 1, 0 or empty.
  std::string to_csv() const;
};

/// Reads the "scan" section. Axes are {"key", "from", "to", "steps"} or
/// {"key", "values"}; random draws come from {"random": {"count", "ranges"}}.
ScanSpec scan_from_config(const Json& config, std::uint64_t seed);

ScanTable run_scan(const ScanSpec& spec);

}  // namespace darkcav
