#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "cli/io.hpp"
#include "procyc/parallel.hpp"
#include "procyc/processes.hpp"

namespace procyc::cli {

namespace {

json dist_to_json(const DistributionModel& d) {
  json j{{"kind", d.label()}};
  if (d.kind() == DistKind::StudentT) j["nu"] = d.nu();
  return j;
}

DistributionModel dist_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") return DistributionModel::gaussian();
  if (kind == "student_t") return DistributionModel::student_t(j.at("nu").get<double>());
  throw input_error("config: unknown distribution kind '" + kind + "'");
}

json risk_to_json(const RiskMeasureSpec& r) {
  json j{{"kind", r.name()}, {"level", r.level}};
  if (r.kind == RiskKind::EsAvgK) j["k"] = r.k;
  if (r.kind == RiskKind::Expectile && r.dist) j["model"] = dist_to_json(*r.dist);
  return j;
}

RiskMeasureSpec risk_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const double level = j.value("level", 0.95);
  if (kind == "var") return RiskMeasureSpec::var(level);
  if (kind == "es_chen") return RiskMeasureSpec::es_chen(level);
  if (kind == "es_avg") return RiskMeasureSpec::es_avg(level, j.value("k", 4));
  if (kind == "expectile") {
    RiskMeasureSpec s{RiskKind::Expectile, level};
    if (j.contains("model")) s.dist = dist_from_json(j.at("model"));
    return s;
  }
  throw input_error("config: unknown risk kind '" + kind + "'");
}

json garch_to_json(const GarchParams& g) {
  return json{{"omega", g.omega}, {"alpha", g.alpha}, {"beta", g.beta}};
}

GarchParams garch_from_json(const json& j) {
  return GarchParams(j.at("omega").get<double>(), j.at("alpha").get<double>(),
                     j.at("beta").get<double>());
}

void write_manifest(const std::string& out_path, const std::string& command, const json& config) {
  json manifest{{"tool", kToolName}, {"version", kVersion}, {"command", command},
                {"config", config}};
  write_text_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string risk_column_name(const RiskMeasureSpec& r) {
  if (r.kind == RiskKind::EsAvgK) return "es_avg_" + std::to_string(r.k);
  return r.name();
}

json result_to_json(const ProcyclicalityResult& res) {
  json j{{"correlation", res.correlation},
         {"pair_count", res.pair_count},
         {"dropped_pairs", res.dropped_pairs},
         {"ci_level", res.level}};
  if (res.ci) j["ci"] = json::array({res.ci->first, res.ci->second});
  return j;
}

json error_to_json(const std::exception& e, const std::string& type) {
  return json{{"type", type}, {"message", e.what()}};
}

template <class Fn>
json guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const degenerate_correlation_error& e) {
    return json{{"error", error_to_json(e, "degenerate_correlation")}};
  } catch (const insufficient_data_error& e) {
    return json{{"error", error_to_json(e, "insufficient_data")}};
  } catch (const capability_error& e) {
    return json{{"error", error_to_json(e, "capability")}};
  } catch (const domain_error& e) {
    return json{{"error", error_to_json(e, "domain")}};
  } catch (const numeric_error& e) {
    return json{{"error", error_to_json(e, "numeric")}};
  }
}

}  // namespace

// ---- config serialization ---------------------------------------------------

std::vector<double> GridSpec::points() const {
  if (!(step > 0.0) || !(start > 0.0) || !(stop < 1.0) || start > stop)
    throw input_error("curves: grid must satisfy 0 < start <= stop < 1 with step > 0");
  std::vector<double> p;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
  p.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = start + static_cast<double>(i) * step;
    if (v >= 1.0) break;
    p.push_back(v);
  }
  return p;
}

std::vector<RiskMeasureSpec> default_curve_risks() {
  return {RiskMeasureSpec::var(0.95), RiskMeasureSpec::es_chen(0.95),
          RiskMeasureSpec::es_avg(0.95, 4), RiskMeasureSpec::es_avg(0.95, 50),
          {RiskKind::Expectile, 0.95}};
}

std::vector<DistributionModel> default_curve_dists() {
  std::vector<DistributionModel> d{DistributionModel::gaussian()};
  for (double nu : {3.0, 4.0, 5.0, 10.0, 40.0}) d.push_back(DistributionModel::student_t(nu));
  return d;
}

std::vector<DistributionModel> default_residual_candidates() {
  std::vector<DistributionModel> d{DistributionModel::gaussian()};
  for (double nu : {4.0, 5.0, 6.0, 7.0}) d.push_back(DistributionModel::student_t(nu));
  return d;
}

json to_json(const CurvesConfig& c) {
  json dists = json::array();
  for (const auto& d : c.dists) dists.push_back(dist_to_json(d));
  json risks = json::array();
  for (const auto& r : c.risks) risks.push_back(risk_to_json(r));
  return json{{"grid", {{"start", c.grid.start}, {"stop", c.grid.stop}, {"step", c.grid.step}}},
              {"dists", dists},
              {"risks", risks},
              {"orders", c.orders},
              {"route", c.route},
              {"out", c.out}};
}

CurvesConfig curves_from_json(const json& j) {
  CurvesConfig c;
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    c.grid = {g.value("start", 0.005), g.value("stop", 0.995), g.value("step", 0.005)};
  }
  if (j.contains("dists")) {
    c.dists.clear();
    for (const auto& d : j.at("dists")) c.dists.push_back(dist_from_json(d));
  } else {
    c.dists = default_curve_dists();
  }
  if (j.contains("risks")) {
    c.risks.clear();
    for (const auto& r : j.at("risks")) c.risks.push_back(risk_from_json(r));
  } else {
    c.risks = default_curve_risks();
  }
  if (j.contains("orders")) c.orders = j.at("orders").get<std::vector<int>>();
  c.route = j.value("route", std::string("generic"));
  if (c.route != "generic" && c.route != "closed_form")
    throw input_error("curves: route must be 'generic' or 'closed_form'");
  c.out = j.value("out", std::string("curves.csv"));
  return c;
}

json to_json(const SimulateConfig& c) {
  json j{{"model", c.model}, {"dist", dist_to_json(c.dist)}, {"n", c.n},
         {"burn_in", c.burn_in}, {"seed", c.seed},
         {"allow_nonstationary", c.allow_nonstationary}, {"out", c.out}};
  if (c.garch) j["garch"] = garch_to_json(*c.garch);
  return j;
}

SimulateConfig simulate_from_json(const json& j) {
  SimulateConfig c;
  c.model = j.value("model", std::string("iid"));
  if (c.model != "iid" && c.model != "garch11")
    throw input_error("simulate: model must be 'iid' or 'garch11'");
  if (j.contains("dist")) c.dist = dist_from_json(j.at("dist"));
  c.n = j.value("n", std::size_t{1000});
  c.burn_in = j.value("burn_in", std::size_t{0});
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("garch")) c.garch = garch_from_json(j.at("garch"));
  c.allow_nonstationary = j.value("allow_nonstationary", false);
  c.out = j.value("out", std::string("simulated.csv"));
  return c;
}

json to_json(const MeasureConfig& c) {
  json j{{"input", c.input},   {"window", c.window},     {"horizon", c.horizon},
         {"r", c.r},           {"risk", risk_to_json(c.risk)}, {"levels", c.levels},
         {"ci_level", c.ci_level}, {"prices", c.prices}, {"flip_sign", c.flip_sign},
         {"out", c.out}};
  if (c.stride) j["stride"] = *c.stride;
  return j;
}

MeasureConfig measure_from_json(const json& j) {
  MeasureConfig c;
  c.input = j.value("input", std::string());
  c.window = j.value("window", std::size_t{252});
  c.horizon = j.value("horizon", std::size_t{0});
  if (j.contains("stride")) c.stride = j.at("stride").get<std::size_t>();
  c.r = j.value("r", 1);
  if (j.contains("risk")) c.risk = risk_from_json(j.at("risk"));
  if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<double>>();
  c.ci_level = j.value("ci_level", 0.95);
  c.prices = j.value("prices", false);
  c.flip_sign = j.value("flip_sign", false);
  c.out = j.value("out", std::string("measure_report.json"));
  return c;
}

json to_json(const ResidualsConfig& c) {
  json j = to_json(c.measure);
  j.erase("out");
  j["fit"] = c.fit;
  j["burn_in"] = c.burn_in;
  if (c.garch) j["garch"] = garch_to_json(*c.garch);
  json cands = json::array();
  for (const auto& d : c.candidates) cands.push_back(dist_to_json(d));
  j["candidates"] = cands;
  j["out"] = c.out;
  return j;
}

ResidualsConfig residuals_from_json(const json& j) {
  ResidualsConfig c;
  c.measure = measure_from_json(j);
  c.measure.out.clear();
  c.fit = j.value("fit", false);
  c.burn_in = j.value("burn_in", std::size_t{252});
  if (j.contains("garch")) c.garch = garch_from_json(j.at("garch"));
  if (j.contains("candidates")) {
    for (const auto& d : j.at("candidates")) c.candidates.push_back(dist_from_json(d));
  } else {
    c.candidates = default_residual_candidates();
  }
  c.out = j.value("out", std::string("residuals_report.json"));
  return c;
}

json to_json(const ValidateConfig& c) {
  json cases = json::array();
  for (const auto& k : c.cases) {
    json jc{{"type", k.type}, {"dist", dist_to_json(k.dist)}, {"risk", risk_to_json(k.risk)},
            {"r", k.r},       {"p", k.p},                     {"window", k.window},
            {"reps", k.reps}, {"tol", k.tol}};
    if (k.garch) {
      jc["garch"] = garch_to_json(*k.garch);
      jc["window_small"] = k.window_small;
      jc["window_large"] = k.window_large;
    }
    cases.push_back(jc);
  }
  return json{{"seed", c.seed}, {"cases", cases}, {"out", c.out}};
}

ValidateConfig validate_from_json(const json& j) {
  ValidateConfig c;
  c.seed = j.value("seed", std::uint64_t{20240901});
  if (j.contains("cases")) {
    for (const auto& jc : j.at("cases")) {
      ValidateCase k;
      k.type = jc.at("type").get<std::string>();
      if (jc.contains("dist")) k.dist = dist_from_json(jc.at("dist"));
      if (jc.contains("risk")) k.risk = risk_from_json(jc.at("risk"));
      k.r = jc.value("r", 1);
      k.p = jc.value("p", 0.95);
      k.window = jc.value("window", std::size_t{500});
      k.reps = jc.value("reps", std::size_t{20000});
      k.tol = jc.value("tol", 0.03);
      if (jc.contains("garch")) k.garch = garch_from_json(jc.at("garch"));
      k.window_small = jc.value("window_small", std::size_t{250});
      k.window_large = jc.value("window_large", std::size_t{4000});
      c.cases.push_back(k);
    }
  }
  c.out = j.value("out", std::string("validate_report.json"));
  return c;
}

json unwrap_config(const json& j, const std::string& command) {
  if (j.contains("config") && j.contains("command")) {
    const auto cmd = j.at("command").get<std::string>();
    if (cmd != command)
      throw input_error("manifest is for command '" + cmd + "', not '" + command + "'");
    return j.at("config");
  }
  return j;
}

json load_config_file(const std::string& path, const std::string& command) {
  json j = json::parse(read_text_file(path));
  return unwrap_config(j, command);
}

// ---- curves ------------------------------------------------------------------

int run_curves(const CurvesConfig& cfg, unsigned threads, std::ostream& log) {
  const auto grid = cfg.grid.points();

  struct Row {
    double p;
    std::string risk;
    int r;
    std::string dist;
    std::string nu;
    double value;
  };
  struct Series {
    DistributionModel dist = DistributionModel::gaussian();
    RiskMeasureSpec risk;
    int r = 1;
  };

  std::vector<Series> series;
  for (const auto& dist : cfg.dists)
    for (int r : cfg.orders)
      for (const auto& risk : cfg.risks) series.push_back({dist, risk, r});

  std::vector<std::vector<Row>> rows(series.size());
  std::vector<std::string> notes(series.size());
  parallel_for(series.size(), threads, [&](std::size_t si) {
    const auto& s = series[si];
    const std::string nu =
        s.dist.kind() == DistKind::StudentT ? fmt(s.dist.nu()) : std::string();
    try {
      std::vector<Row> out;
      out.reserve(grid.size());
      for (double p : grid) {
        RiskMeasureSpec risk = s.risk.at_level(p);
        if (risk.kind == RiskKind::Expectile && !risk.dist) risk.dist = s.dist;
        double value = 0.0;
        if (cfg.route == "closed_form")
          value = asymptotics::closed_form_procyclicality({s.dist, risk, s.r});
        else
          value = asymptotics::asymptotic_procyclicality({s.dist, risk, s.r});
        out.push_back({p, risk_column_name(risk), s.r, s.dist.label(), nu, value});
      }
      rows[si] = std::move(out);
    } catch (const std::exception& e) {
      notes[si] = std::string("skipped ") + risk_column_name(s.risk) + " r=" +
                  std::to_string(s.r) + " dist=" + s.dist.label() +
                  (nu.empty() ? "" : " nu=" + nu) + ": " + e.what();
    }
  });

  std::ostringstream csv;
  csv << "p,risk,r,dist,nu,value\n";
  for (const auto& block : rows)
    for (const auto& row : block)
      csv << fmt(row.p) << ',' << row.risk << ',' << row.r << ',' << row.dist << ','
          << row.nu << ',' << fmt(row.value) << '\n';
  write_text_file(cfg.out, csv.str());
  write_manifest(cfg.out, "curves", to_json(cfg));
  for (const auto& n : notes)
    if (!n.empty()) log << n << '\n';
  log << "curves: wrote " << cfg.out << "\n";
  return 0;
}

// ---- simulate ------------------------------------------------------------------

int run_simulate(const SimulateConfig& cfg, std::ostream& log) {
  std::ostringstream csv;
  if (cfg.model == "garch11") {
    if (!cfg.garch) throw input_error("simulate: model 'garch11' needs garch parameters");
    SimulationPlan plan{cfg.n, cfg.burn_in, cfg.seed, 0, cfg.dist};
    const auto path = simulate_garch11(*cfg.garch, plan, cfg.allow_nonstationary);
    csv << "date,value,sigma\n";
    for (std::size_t i = 0; i < path.x.size(); ++i)
      csv << i << ',' << fmt(path.x[i]) << ',' << fmt(path.sigma[i]) << '\n';
  } else {
    SimulationPlan plan{cfg.n, cfg.burn_in, cfg.seed, 0, cfg.dist};
    const Sample s = simulate_iid(plan);
    csv << "date,value\n";
    for (std::size_t i = 0; i < s.size(); ++i) csv << i << ',' << fmt(s.values()[i]) << '\n';
  }
  write_text_file(cfg.out, csv.str());
  write_manifest(cfg.out, "simulate", to_json(cfg));
  log << "simulate: wrote " << cfg.n << " rows to " << cfg.out << "\n";
  return 0;
}

// ---- measure ------------------------------------------------------------------

namespace {

Sample load_measure_series(const MeasureConfig& cfg) {
  if (cfg.input.empty()) throw input_error("measure: no input CSV given");
  auto csv = read_series_csv(cfg.input);
  std::vector<double> values =
      cfg.prices ? log_returns(csv.values) : std::move(csv.values);
  if (cfg.flip_sign)
    for (double& v : values) v = -v;
  return Sample(std::move(values));
}

WindowingPlan plan_from(const MeasureConfig& cfg) {
  if (!cfg.stride)
    throw input_error("measure: stride is required (no hidden default for real-data runs)");
  return WindowingPlan(cfg.window, cfg.horizon == 0 ? cfg.window : cfg.horizon, *cfg.stride);
}

}  // namespace

int run_measure(const MeasureConfig& cfg, std::ostream& log) {
  const Sample series = load_measure_series(cfg);
  const WindowingPlan plan = plan_from(cfg);

  json levels = json::array();
  for (double p : cfg.levels) {
    json entry{{"p", p}};
    entry.update(guarded([&] {
      return result_to_json(measure(series, cfg.risk.at_level(p), cfg.r, plan, cfg.ci_level));
    }));
    levels.push_back(entry);
  }
  json report{{"command", "measure"},
              {"n_observations", series.size()},
              {"config", to_json(cfg)},
              {"levels", levels}};
  write_text_file(cfg.out, report.dump(2) + "\n");
  write_manifest(cfg.out, "measure", to_json(cfg));
  log << "measure: wrote " << cfg.out << "\n";
  return 0;
}

// ---- residuals ------------------------------------------------------------------

int run_residuals(const ResidualsConfig& cfg, std::ostream& log) {
  if (!cfg.garch && !cfg.fit)
    throw input_error("residuals: supply garch parameters or pass --fit");
  const Sample series = load_measure_series(cfg.measure);
  const WindowingPlan plan = plan_from(cfg.measure);
  ResidualOptions ropt;
  ropt.burn_in = cfg.burn_in;

  const auto result = residual_pipeline(series, cfg.garch, cfg.measure.risk, cfg.measure.r,
                                        plan, cfg.measure.levels, cfg.candidates, ropt,
                                        cfg.measure.ci_level);

  json levels = json::array();
  for (const auto& lc : result.levels) {
    json bands = json::array();
    for (const auto& b : lc.bands) {
      bands.push_back(json{{"model", dist_to_json(b.model)},
                           {"asymptotic", b.asymptotic},
                           {"band", json::array({b.lo, b.hi})},
                           {"residual_in_band", b.residual_in_band},
                           {"raw_in_band", b.raw_in_band}});
    }
    levels.push_back(json{{"p", lc.p},
                          {"raw", result_to_json(lc.raw)},
                          {"residual", result_to_json(lc.residual)},
                          {"bands", bands}});
  }
  json report{{"command", "residuals"},
              {"n_observations", series.size()},
              {"garch", garch_to_json(result.params)},
              {"fitted", result.fitted},
              {"config", to_json(cfg)},
              {"levels", levels}};
  if (result.fitted) {
    report["fit"] = json{{"converged", result.fit_details.converged},
                         {"at_stationarity_boundary", result.fit_details.at_stationarity_boundary},
                         {"log_likelihood", result.fit_details.log_likelihood},
                         {"iterations", result.fit_details.iterations}};
  }
  write_text_file(cfg.out, report.dump(2) + "\n");
  write_manifest(cfg.out, "residuals", to_json(cfg));
  log << "residuals: wrote " << cfg.out << "\n";
  return 0;
}

// ---- validate ------------------------------------------------------------------

namespace {

double pearson_cols(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0))
    throw degenerate_correlation_error("validate: constant Monte Carlo column");
  return sxy / std::sqrt(sxx * syy);
}

// The expectile estimator is a quantile at kappa^-1(p); resolve once so the
// replication loop stays cheap.
RiskMeasureSpec resolve_risk(const RiskMeasureSpec& proto, double p,
                             const DistributionModel& fallback) {
  RiskMeasureSpec risk = proto.at_level(p);
  if (risk.kind == RiskKind::Expectile) {
    const DistributionModel model = risk.dist ? *risk.dist : fallback;
    risk = RiskMeasureSpec::var(model.kappa_inverse(p));
  }
  return risk;
}

// Monte Carlo pro-cyclicality over fully independent disjoint-window pairs.
double mc_iid_procyclicality(const ValidateCase& k, std::uint64_t seed, unsigned threads) {
  const std::size_t n = k.window;
  const RiskMeasureSpec risk = resolve_risk(k.risk, k.p, k.dist);
  std::vector<double> logratio(k.reps), disp(k.reps);
  parallel_for(k.reps, threads, [&](std::size_t rep) {
    rng::Stream stream(seed, rep);
    std::vector<double> back(n), fwd(n);
    for (std::size_t i = 0; i < n; ++i) back[i] = stream.innovation_at(i, k.dist);
    for (std::size_t i = 0; i < n; ++i) fwd[i] = stream.innovation_at(n + i, k.dist);
    disp[rep] = estimators::abs_centred_moment(std::span<const double>(back), k.r);
    std::sort(back.begin(), back.end());
    std::sort(fwd.begin(), fwd.end());
    const double zb = estimators::sorted::evaluate(risk, back);
    const double zf = estimators::sorted::evaluate(risk, fwd);
    logratio[rep] = std::log(std::fabs(zf / zb));
  });
  return pearson_cols(logratio, disp);
}

// Correlation between the forward risk estimate and the backward dispersion
// across replications of a stationary GARCH(1,1).
double mc_garch_forward_backward(const ValidateCase& k, std::size_t n, std::uint64_t seed,
                                 unsigned threads) {
  std::vector<double> zfwd(k.reps), disp(k.reps);
  const GarchParams params = *k.garch;
  const RiskMeasureSpec risk = resolve_risk(k.risk, k.p, k.dist);
  parallel_for(k.reps, threads, [&](std::size_t rep) {
    SimulationPlan plan{2 * n, 250, seed, rep, k.dist};
    const auto path = simulate_garch11(params, plan);
    std::span<const double> back(path.x.data(), n);
    disp[rep] = estimators::abs_centred_moment(back, k.r);
    std::vector<double> fwd(path.x.begin() + static_cast<std::ptrdiff_t>(n), path.x.end());
    std::sort(fwd.begin(), fwd.end());
    zfwd[rep] = estimators::sorted::evaluate(risk, fwd);
  });
  return pearson_cols(zfwd, disp);
}

std::vector<ValidateCase> default_validate_cases() {
  std::vector<ValidateCase> cases;
  for (const char* kind : {"var", "es_chen"}) {
    for (int r : {1, 2}) {
      ValidateCase k;
      k.type = "iid_convergence";
      k.risk = std::string(kind) == "var" ? RiskMeasureSpec::var(0.95)
                                          : RiskMeasureSpec::es_chen(0.95);
      k.r = r;
      k.p = 0.95;
      k.window = 500;
      k.reps = 20000;
      k.tol = 0.03;
      cases.push_back(k);
    }
  }
  ValidateCase g;
  g.type = "garch_decorrelation";
  g.garch = GarchParams(0.1, 0.05, 0.85);
  g.risk = RiskMeasureSpec::var(0.95);
  g.r = 1;
  g.p = 0.95;
  g.reps = 10000;
  g.tol = 0.05;
  g.window_small = 250;
  g.window_large = 4000;
  cases.push_back(g);
  return cases;
}

}  // namespace

int run_validate(const ValidateConfig& cfg, unsigned threads, std::ostream& log) {
  ValidateConfig resolved = cfg;
  if (resolved.cases.empty()) resolved.cases = default_validate_cases();
  const auto& cases = resolved.cases;
  bool all_ok = true;
  json rows = json::array();

  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& k = cases[ci];
    if (k.reps == 0) throw input_error("validate: reps must be >= 1");
    const std::uint64_t case_seed = cfg.seed + 1000003 * ci;
    if (k.type == "iid_convergence") {
      const RiskMeasureSpec risk = k.risk.at_level(k.p);
      const double target =
          asymptotics::asymptotic_procyclicality({k.dist, risk, k.r});
      const double mc = mc_iid_procyclicality(k, case_seed, threads);
      const double gap = std::fabs(mc - target);
      const double se = (1.0 - mc * mc) / std::sqrt(static_cast<double>(k.reps));
      const bool ok = gap <= k.tol;
      all_ok = all_ok && ok;
      rows.push_back(json{{"case", "iid_convergence"},
                          {"dist", dist_to_json(k.dist)},
                          {"risk", risk_column_name(risk)},
                          {"r", k.r},
                          {"p", k.p},
                          {"window", k.window},
                          {"reps", k.reps},
                          {"mc", mc},
                          {"asymptotic", target},
                          {"gap", gap},
                          {"mc_se", se},
                          {"tol", k.tol},
                          {"pass", ok}});
      log << (ok ? "[ok]   " : "[FAIL] ") << "iid " << risk_column_name(risk) << " r=" << k.r
          << " p=" << k.p << ": mc=" << mc << " target=" << target << " gap=" << gap << "\n";
    } else if (k.type == "garch_decorrelation") {
      if (!k.garch) throw input_error("validate: garch_decorrelation needs garch parameters");
      const double c_small = mc_garch_forward_backward(k, k.window_small, case_seed, threads);
      const double c_large = mc_garch_forward_backward(k, k.window_large, case_seed + 1, threads);
      const bool ok = std::fabs(c_large) < k.tol && std::fabs(c_large) < std::fabs(c_small);
      all_ok = all_ok && ok;
      rows.push_back(json{{"case", "garch_decorrelation"},
                          {"garch", garch_to_json(*k.garch)},
                          {"risk", risk_column_name(k.risk)},
                          {"r", k.r},
                          {"p", k.p},
                          {"reps", k.reps},
                          {"windows", json::array({k.window_small, k.window_large})},
                          {"cor_small", c_small},
                          {"cor_large", c_large},
                          {"tol", k.tol},
                          {"pass", ok}});
      log << (ok ? "[ok]   " : "[FAIL] ") << "garch decorrelation: |cor|@" << k.window_small
          << "=" << std::fabs(c_small) << " |cor|@" << k.window_large << "="
          << std::fabs(c_large) << "\n";
    } else {
      throw input_error("validate: unknown case type '" + k.type + "'");
    }
  }

  json report{{"command", "validate"}, {"config", to_json(resolved)}, {"cases", rows},
              {"pass", all_ok}};
  write_text_file(cfg.out, report.dump(2) + "\n");
  write_manifest(cfg.out, "validate", to_json(resolved));
  log << "validate: " << (all_ok ? "all cases within tolerance" : "FAILURES present") << ", wrote "
      << cfg.out << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace procyc::cli
