#pragma once

// Batch verification: named suites of checks over every module, a flat JSON
// configuration, and plot-ready sweeps.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace cuspforge {

/// Invalid configuration or arguments (CLI exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precedence: built-in defaults, then the config file, then explicit flags.
struct SuiteConfig {
  std::string suite = "all";
  int n = 3;
  /// 0 runs the field suite over d in {1, 2, 3, 7}.
  long d = 0;
  double A = 6;
  /// Unset means (A/6, 5A/6).
  std::optional<double> window_lo, window_hi;
  double l = 6.283185307179586;
  double t0 = 0;
  double eps = 1e-6;
  int samples = 1000;
  std::uint64_t seed = 7;
  int grid_points = 10000;
  int hbc_samples = 10000;
  int cayley_samples = 100;
  double psi_t_min = 0.01;
  double eta = 0.5;
  /// Smallest A whose (A/6, 5A/6) window passes positivity on the grid.
  double c0 = 5.230957031;

  std::pair<double, double> window() const;
  void validate() const;
  nlohmann::json to_json() const;
  /// Overlays the keys present in j; unknown keys are rejected.
  void merge_json(const nlohmann::json& j);
  /// FNV-1a of the canonical JSON dump, as 16 hex digits.
  std::string hash() const;
};

SuiteConfig load_config(const std::string& path);

struct CheckRecord {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Observed quantity and its bound; margin = how far inside the bound.
  std::optional<double> value, tolerance, margin;
  std::string witness;
  nlohmann::json details;
};

struct Report {
  std::string suite;
  bool passed = true;
  std::string config_hash;
  nlohmann::json config;
  std::vector<CheckRecord> checks;
  std::map<std::string, double> timings;

  nlohmann::json to_json(bool with_timings = true) const;
  const CheckRecord* find(const std::string& suite, const std::string& name) const;
};

const std::vector<std::string>& suite_names();

/// Throws UsageError for an unknown suite or invalid configuration.
Report run_suite(const SuiteConfig& cfg);

/// Axis in {t, A, l, n}; throws UsageError for an unknown axis or an empty range.
void sweep(const SuiteConfig& cfg, const std::string& axis, double from, double to, int steps,
           std::ostream& os);

}  // namespace cuspforge
