#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gricci/grid.hpp"

namespace gricci::scenario {

inline constexpr int kSchemaVersion = 1;

/// Malformed or inconsistent configuration. `where` is "line:column" for
/// syntax errors and a dotted field path for schema errors.
class ConfigError : public Error {
 public:
  ConfigError(std::string where, const std::string& message)
      : Error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Unknown report format or similar command-line misuse.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// c0 + Σ_m (cos[m-1] cos 2πmy + sin[m-1] sin 2πmy).
struct FieldSpec {
  double c0 = 0.0;
  std::vector<double> cos;
  std::vector<double> sin;

  PeriodicField sample(const GridSpec& grid) const;
  bool operator==(const FieldSpec&) const = default;
};

enum class Suite { monotonicity, blowdown, max_principle, lambda, harnack, uniqueness, steady_classify };

std::string_view to_string(Suite suite);
std::optional<Suite> suite_from_string(std::string_view name);
const std::vector<Suite>& all_suites();

enum class DtPolicy { cfl, fixed };

struct FlowSettings {
  double t_end = 1.0;
  double checkpoint_interval = 0.1;
  DtPolicy dt_policy = DtPolicy::cfl;
  double cfl = 0.0;  ///< 0 selects the scheme default
  double fixed_dt = 0.0;
  /// Forward-integrate f alongside g. Suites that need an evolving Haar
  /// system otherwise use the backward conjugate solve.
  bool coupled = false;
  bool operator==(const FlowSettings&) const = default;
};

struct Tolerances {
  double flat = 1e-10;               ///< residuals that vanish on the flat torus
  double monotonicity_residual = 1e-5;
  double monotonicity_slack = 1e-12;  ///< relative slack on F decreases
  double monotonicity_t_min = 0.0;    ///< residual window start
  double blowdown_grad_low = 0.475;
  double blowdown_grad_high = 0.525;
  double blowdown_h = 0.05;
  double blowdown_r_low = -1.1;
  double blowdown_r_high = -0.9;
  double max_principle_slack = 1e-6;
  double max_principle_fit_until = 1.0;
  double lambda_slack = 1e-8;
  double harnack_residual = 1e-4;
  double uniqueness_energy = 1e-12;
  double uniqueness_t_max = 1.0;
  double uniqueness_rate_stability = 0.1;  ///< relative change of the fitted growth rate
  double steady = 1e-8;
  bool operator==(const Tolerances&) const = default;
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  std::string name = "custom";
  int n_nodes = 64;
  Scheme scheme = Scheme::spectral;
  double lambda = 0.0;
  FieldSpec k_per;
  FieldSpec u;
  FieldSpec f;
  FlowSettings flow;
  std::vector<Suite> suites;
  Tolerances tolerances;
  /// "FlatTorus", "HyperbolicCuspNormalized" or "None"; empty accepts any.
  std::string expected_steady_kind;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  bool write_trajectory = true;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses JSON text; errors carry line:column or the offending field path.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);
/// Canonical JSON text; parse_config(dump_config(c)) == c.
std::string dump_config(const ScenarioConfig& config);
/// Checks ranges and cross-field constraints; throws ConfigError.
void validate(const ScenarioConfig& config);

struct PresetInfo {
  std::string name;
  std::string description;
};
const std::vector<PresetInfo>& preset_list();
/// Throws ConfigError for unknown names.
ScenarioConfig preset(std::string_view name);

enum class SuiteStatus { pass, fail, not_applicable };
std::string_view to_string(SuiteStatus status);

/// Worst sample of a suite; margin < 0 means the tolerance was exceeded.
struct Location {
  double t = 0.0;
  std::optional<double> y;
  double margin = 0.0;
};

struct SuiteResult {
  Suite suite = Suite::monotonicity;
  SuiteStatus status = SuiteStatus::pass;
  std::string message;
  std::map<std::string, double> metrics;
  std::optional<Location> worst;
  /// Named time series in column order; each has one value per entry of times.
  std::vector<double> times;
  std::vector<std::pair<std::string, std::vector<double>>> series;
};

struct RunStatistics {
  std::size_t checkpoints = 0;
  std::size_t steps = 0;
  double min_dt = 0.0;
  double max_dt = 0.0;
};

struct Timing {
  double flow_seconds = 0.0;
  double suites_seconds = 0.0;
  double total_seconds = 0.0;
};

struct RunReport {
  ScenarioConfig config;
  std::vector<SuiteResult> suites;
  RunStatistics statistics;
  Timing timing;  ///< wall clock; excluded from the JSON report
  std::string trajectory_csv;  ///< file name relative to out_dir, empty if not written
  bool all_passed() const;
};

struct RunOptions {
  bool write_files = true;
};

/// Runs the flow and the requested suites. Suite failures are recorded in the
/// report; invalid configs throw ConfigError.
RunReport run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

enum class ReportFormat { json, csv, human };
/// Throws UsageError for unknown names.
ReportFormat format_from_string(std::string_view name);
std::string emit_report(const RunReport& report, ReportFormat format);
std::string emit_report(const RunReport& report, std::string_view format);

/// Applies a multiplicative factor to every residual tolerance; bands such as
/// the blowdown interval widen symmetrically about their centre.
Tolerances scaled(const Tolerances& tol, double factor);

}  // namespace gricci::scenario
