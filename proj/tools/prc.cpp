#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "procyc/parallel.hpp"

namespace cli = procyc::cli;

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool seed_set = false;
  bool out_set = false;
};

void add_common(CLI::App* cmd, GlobalArgs& g) {
  cmd->add_option("--config", g.config_path, "JSON config (a manifest also works)");
  cmd->add_option("--out", g.out, "output path");
  cmd->add_option("--seed", g.seed, "base seed for deterministic streams");
  cmd->add_option("--threads", g.threads, "worker threads (default: machine parallelism)");
}

unsigned pick_threads(const GlobalArgs& g) {
  return g.threads == 0 ? procyc::default_threads() : g.threads;
}

cli::json maybe_load(const GlobalArgs& g, const std::string& command) {
  if (g.config_path.empty()) return cli::json::object();
  return cli::load_config_file(g.config_path, command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pro-cyclicality of risk-measure estimators: asymptotic curves, simulation, "
               "measurement, and Monte Carlo validation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cli::kToolName) + " " + cli::kVersion);

  GlobalArgs g;

  auto* curves = app.add_subcommand("curves", "emit asymptotic pro-cyclicality curves as CSV");
  add_common(curves, g);
  std::string route;
  curves->add_option("--route", route, "generic | closed_form");

  auto* simulate = app.add_subcommand("simulate", "simulate iid or GARCH(1,1) series to CSV");
  add_common(simulate, g);
  std::string model;
  std::size_t sim_n = 0;
  simulate->add_option("--model", model, "iid | garch11");
  simulate->add_option("--n", sim_n, "series length");

  auto* measure = app.add_subcommand("measure", "measure pro-cyclicality on a date,value CSV");
  add_common(measure, g);
  std::string input;
  std::size_t window = 0, stride = 0;
  bool prices = false, flip = false;
  measure->add_option("--input", input, "input CSV (date,value with header)");
  measure->add_option("--window", window, "estimation window length");
  measure->add_option("--stride", stride, "anchor stride (required)");
  measure->add_flag("--prices", prices, "input column holds prices; use log-returns");
  measure->add_flag("--flip-sign", flip, "negate the series (returns vs losses convention)");

  auto* residuals =
      app.add_subcommand("residuals", "GARCH(1,1)-residual pro-cyclicality vs the iid bands");
  add_common(residuals, g);
  bool fit = false;
  residuals->add_option("--input", input, "input CSV (date,value with header)");
  residuals->add_option("--window", window, "estimation window length");
  residuals->add_option("--stride", stride, "anchor stride (required)");
  residuals->add_flag("--fit", fit, "fit GARCH(1,1) by QMLE instead of supplying parameters");
  residuals->add_flag("--prices", prices, "input column holds prices; use log-returns");
  residuals->add_flag("--flip-sign", flip, "negate the series");

  auto* validate =
      app.add_subcommand("validate", "Monte Carlo convergence table; exit 1 on any gap breach");
  add_common(validate, g);
  std::size_t reps = 0;
  validate->add_option("--reps", reps, "replications per case");

  CLI11_PARSE(app, argc, argv);

  try {
    if (curves->parsed()) {
      auto cfg = cli::curves_from_json(maybe_load(g, "curves"));
      if (!route.empty()) cfg.route = route;
      if (!g.out.empty()) cfg.out = g.out;
      return cli::run_curves(cfg, pick_threads(g), std::cerr);
    }
    if (simulate->parsed()) {
      auto cfg = cli::simulate_from_json(maybe_load(g, "simulate"));
      if (!model.empty()) cfg.model = model;
      if (sim_n > 0) cfg.n = sim_n;
      if (simulate->count("--seed") > 0) cfg.seed = g.seed;
      if (!g.out.empty()) cfg.out = g.out;
      return cli::run_simulate(cfg, std::cerr);
    }
    if (measure->parsed()) {
      auto cfg = cli::measure_from_json(maybe_load(g, "measure"));
      if (!input.empty()) cfg.input = input;
      if (window > 0) cfg.window = window;
      if (stride > 0) cfg.stride = stride;
      if (prices) cfg.prices = true;
      if (flip) cfg.flip_sign = true;
      if (!g.out.empty()) cfg.out = g.out;
      return cli::run_measure(cfg, std::cerr);
    }
    if (residuals->parsed()) {
      auto cfg = cli::residuals_from_json(maybe_load(g, "residuals"));
      if (!input.empty()) cfg.measure.input = input;
      if (window > 0) cfg.measure.window = window;
      if (stride > 0) cfg.measure.stride = stride;
      if (fit) cfg.fit = true;
      if (prices) cfg.measure.prices = true;
      if (flip) cfg.measure.flip_sign = true;
      if (!g.out.empty()) cfg.out = g.out;
      return cli::run_residuals(cfg, std::cerr);
    }
    if (validate->parsed()) {
      auto cfg = cli::validate_from_json(maybe_load(g, "validate"));
      if (validate->count("--seed") > 0) cfg.seed = g.seed;
      if (reps > 0)
        for (auto& k : cfg.cases) k.reps = reps;
      if (!g.out.empty()) cfg.out = g.out;
      return cli::run_validate(cfg, pick_threads(g), std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
