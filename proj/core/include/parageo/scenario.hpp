#pragma once

// Scenario plumbing for the verifier CLI.  A config selects a model space, a
// hypersurface family with its parameters, a check list, and a sample grid;
// running it produces one row per check plus environment data, serialized as
// a JSON document and a markdown mirror.  Reports are deterministic for a
// fixed config in jet mode (byte-for-byte across runs).

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parageo/hyper_checks.hpp"

namespace parageo {

inline constexpr const char* kArtifactName = "parageo";
inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// CLI exit taxonomy
inline constexpr int kExitPass = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitConstructionError = 2;
inline constexpr int kExitCheckFailure = 3;

// config-file problems (syntax, unknown names, invalid values)
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// geometry could not be built or evaluated (bad parameters, retraction
// divergence); individual check failures are reported, never thrown
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
  std::string model;   // s2xs2 | h2xh2 | flat | geodesic-space
  std::string family;  // sigma-t | mab | tangential | null-plane

  double t = 0.0;                            // sigma-t
  std::array<double, 3> a{0.0, 0.0, 1.0};    // mab
  std::array<double, 3> b{0.0, 0.0, 1.0};
  std::string surface = "sphere";            // tangential: sphere | torus
  double radius = 0.785398163397448309616;   // sphere radius, default pi/4
  std::array<double, 4> normal{0.70710678118654752440, 0.0,
                               0.70710678118654752440, 0.0};  // null-plane

  std::vector<std::string> checks;  // empty = whole registry, in order
  std::array<int, 4> grid{4, 4, 4, 1};
  std::map<std::string, double> tolerances;
  std::string derivative_mode = "jet";  // jet | fd
  std::uint64_t seed = 0;

  std::string family_label() const;  // e.g. "sigma-t(t=0.5)"
};

// strict: unknown keys, unknown check names, bad grids, nonpositive
// tolerances, and model/family mismatches are all rejected at load
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

// process environment, read once at CLI startup:
//   PARAGEO_DEFAULT_TOL  tolerance for checks without an explicit entry
//   PARAGEO_FORCE_FD     any value except "" or "0" forces fd mode
struct EnvOverrides {
  std::optional<double> default_tol;
  bool force_fd = false;
};
EnvOverrides env_from_process();

// geometry built from a config; bundle keeps the concrete objects alive
struct BuiltScenario {
  std::shared_ptr<const void> bundle;
  const MetricField* g = nullptr;
  const EndoField* P = nullptr;
  const Immersion* F = nullptr;
  ReferenceData ref;
  double rbar = 0.0;
};
BuiltScenario build_scenario(const ScenarioConfig& cfg);

struct ScenarioReport {
  int schema_version = kReportSchemaVersion;
  std::string version = kArtifactVersion;
  std::string model, hypersurface;
  std::string derivative_mode;
  std::uint64_t seed = 0;
  std::array<int, 4> grid{};
  int samples = 0;
  std::vector<CheckResult> checks;
  bool overall = false;

  std::string to_json() const;
  std::string to_markdown() const;
};

ScenarioReport run_scenario(const ScenarioConfig& cfg,
                            const EnvOverrides& env = {});

// measured-vs-closed-form table for the sigma-t family; every quantity is
// gauge-normalized (overall normal sign, eigenvalue order) before comparison
struct SweepRow {
  double t = 0.0;
  double l1 = 0.0, l2 = 0.0, l3 = 0.0;  // measured principal curvatures
  double mean_h = 0.0;                  // |H|
  double scalar = 0.0;                  // induced scalar curvature
  double cos2theta = 0.0;
  double cmc_lhs = 0.0;  // -8 l1 l2 over the nontrivial pair
  double rbar = 0.0;
  double pred_l1 = 0.0, pred_l2 = 0.0, pred_l3 = 0.0, pred_h = 0.0;
  double d_lambda = 0.0, d_h = 0.0, d_cmc = 0.0;  // worst over the grid
};
struct SweepTable {
  std::string space;
  std::vector<SweepRow> rows;
  std::string to_json() const;
  std::string to_markdown() const;
};
SweepTable sweep_sigma_t(const std::string& space,
                         const std::vector<double>& ts,
                         const std::array<int, 4>& counts = {4, 4, 4, 1});

}  // namespace parageo
