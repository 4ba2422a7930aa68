#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "procyc/asymptotics.hpp"
#include "procyc/procyclicality.hpp"

namespace procyc::cli {

using nlohmann::json;

inline constexpr const char* kToolName = "prc";
inline constexpr const char* kVersion = "0.1.0";

// ---- configuration ---------------------------------------------------------

struct GridSpec {
  double start = 0.005;
  double stop = 0.995;
  double step = 0.005;
  std::vector<double> points() const;
};

struct CurvesConfig {
  GridSpec grid;
  std::vector<DistributionModel> dists;          // default: gaussian + t(3,4,5,10,40)
  std::vector<RiskMeasureSpec> risks;            // default: var, es_chen, es_avg 4/50, expectile
  std::vector<int> orders{1, 2};
  std::string route = "generic";                 // or "closed_form"
  std::string out = "curves.csv";
};

struct SimulateConfig {
  std::string model = "iid";                     // "iid" | "garch11"
  DistributionModel dist = DistributionModel::gaussian();
  std::size_t n = 1000;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0;
  std::optional<GarchParams> garch;
  bool allow_nonstationary = false;
  std::string out = "simulated.csv";
};

struct MeasureConfig {
  std::string input;
  std::size_t window = 252;
  std::size_t horizon = 0;                       // 0 -> window
  std::optional<std::size_t> stride;             // required, no hidden default
  int r = 1;
  RiskMeasureSpec risk = RiskMeasureSpec::var(0.95);
  std::vector<double> levels{0.95, 0.975, 0.99, 0.995};
  double ci_level = 0.95;
  bool prices = false;
  bool flip_sign = false;
  std::string out = "measure_report.json";
};

struct ResidualsConfig {
  MeasureConfig measure;                          // windowing/risk/levels shared
  std::optional<GarchParams> garch;
  bool fit = false;
  std::size_t burn_in = 252;
  std::vector<DistributionModel> candidates;      // default: gaussian + t(4..7)
  std::string out = "residuals_report.json";
};

struct ValidateCase {
  std::string type;                               // "iid_convergence" | "garch_decorrelation"
  DistributionModel dist = DistributionModel::gaussian();
  RiskMeasureSpec risk = RiskMeasureSpec::var(0.95);
  int r = 1;
  double p = 0.95;
  std::size_t window = 500;
  std::size_t reps = 20000;
  double tol = 0.03;
  // garch_decorrelation only:
  std::optional<GarchParams> garch;
  std::size_t window_small = 250;
  std::size_t window_large = 4000;
};

struct ValidateConfig {
  std::uint64_t seed = 20240901;
  std::vector<ValidateCase> cases;                // empty -> built-in default suite
  std::string out = "validate_report.json";
};

// JSON round-trips. Loading accepts either a bare config object or a manifest
// ({"tool","version","command","config"}); the manifest's command must match.
json to_json(const CurvesConfig&);
json to_json(const SimulateConfig&);
json to_json(const MeasureConfig&);
json to_json(const ResidualsConfig&);
json to_json(const ValidateConfig&);
CurvesConfig curves_from_json(const json&);
SimulateConfig simulate_from_json(const json&);
MeasureConfig measure_from_json(const json&);
ResidualsConfig residuals_from_json(const json&);
ValidateConfig validate_from_json(const json&);

/// Unwraps {"command": name, "config": {...}} manifests; returns the bare
/// config object. Throws input_error on a command mismatch.
json unwrap_config(const json& j, const std::string& command);

json load_config_file(const std::string& path, const std::string& command);

// ---- commands --------------------------------------------------------------
// Each writes its output file plus <out>.manifest.json and returns the process
// exit code. Informational notes (skipped rows etc.) go to `log`.

int run_curves(const CurvesConfig&, unsigned threads, std::ostream& log);
int run_simulate(const SimulateConfig&, std::ostream& log);
int run_measure(const MeasureConfig&, std::ostream& log);
int run_residuals(const ResidualsConfig&, std::ostream& log);
int run_validate(const ValidateConfig&, unsigned threads, std::ostream& log);

std::vector<RiskMeasureSpec> default_curve_risks();
std::vector<DistributionModel> default_curve_dists();
std::vector<DistributionModel> default_residual_candidates();

}  // namespace procyc::cli
