#include "procyc/procyclicality.hpp"

#include <algorithm>
#include <cmath>

namespace procyc {

WindowingPlan::WindowingPlan(std::size_t window, std::size_t horizon, std::size_t stride)
    : window(window), horizon(horizon), stride(stride) {
  if (window < 1 || stride < 1) throw domain_error("WindowingPlan: window and stride must be >= 1");
  if (horizon < window)
    throw domain_error("WindowingPlan: horizon < window would overlap the forward and "
                       "backward estimation windows");
}

namespace {

double pearson(const std::vector<std::pair<double, double>>& pairs) {
  const double n = static_cast<double>(pairs.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pairs) {
    const double dx = x - mx;
    const double dy = y - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0))
    throw degenerate_correlation_error("pearson: log-ratio column is constant");
  if (!(syy > 0.0))
    throw degenerate_correlation_error("pearson: dispersion column is constant");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

ProcyclicalityResult measure(const Sample& series, const RiskMeasureSpec& risk, int r,
                             const WindowingPlan& plan, double ci_level) {
  const auto& x = series.values();
  const std::size_t n = plan.window;
  const std::size_t h = plan.horizon;
  if (x.size() < n + h + 1)
    throw insufficient_data_error("measure: need at least window + horizon + 1 observations");

  // The expectile estimator is the sample quantile at kappa^-1(p); resolve
  // the level once instead of re-running the bisection per window.
  RiskMeasureSpec spec = risk;
  if (spec.kind == RiskKind::Expectile) {
    if (!spec.dist) throw domain_error("measure: expectile spec needs a distribution model");
    spec = RiskMeasureSpec::var(spec.dist->kappa_inverse(spec.level));
  }

  std::vector<std::pair<double, double>> pairs;
  std::size_t dropped = 0;
  std::vector<double> back(n), fwd(n);
  for (std::size_t anchor = n - 1; anchor + h < x.size(); anchor += plan.stride) {
    std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(anchor - n + 1), n, back.begin());
    std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(anchor + h - n + 1), n, fwd.begin());
    const double disp = estimators::abs_centred_moment(std::span<const double>(back), r);
    std::sort(back.begin(), back.end());
    std::sort(fwd.begin(), fwd.end());
    const double zeta_back = estimators::sorted::evaluate(spec, back);
    const double zeta_fwd = estimators::sorted::evaluate(spec, fwd);
    if (zeta_back == 0.0 || zeta_fwd == 0.0) {
      ++dropped;
      continue;
    }
    pairs.emplace_back(std::log(std::fabs(zeta_fwd / zeta_back)), disp);
  }

  if (pairs.size() < 3)
    throw insufficient_data_error("measure: only " + std::to_string(pairs.size()) +
                                  " valid pairs (" + std::to_string(dropped) + " dropped)");

  ProcyclicalityResult res;
  res.correlation = pearson(pairs);
  res.pair_count = pairs.size();
  res.dropped_pairs = dropped;
  res.level = ci_level;
  if (pairs.size() >= 4 && std::fabs(res.correlation) < 1.0)
    res.ci = fisher_ci(res.correlation, pairs.size(), ci_level);
  return res;
}

std::pair<double, double> fisher_ci(double rho, std::size_t n_pairs, double level) {
  if (n_pairs < 4) throw input_error("fisher_ci: need at least 4 pairs");
  if (!(std::fabs(rho) < 1.0)) throw domain_error("fisher_ci: |rho| must be < 1");
  if (!(level > 0.0 && level < 1.0)) throw domain_error("fisher_ci: level must lie in (0,1)");
  const double z = std::atanh(rho);
  const double half = gaussian_raw::quantile(0.5 * (1.0 + level)) /
                      std::sqrt(static_cast<double>(n_pairs) - 3.0);
  return {std::tanh(z - half), std::tanh(z + half)};
}

std::pair<double, double> fisher_band_around(double rho_true, std::size_t n_pairs, double level) {
  return fisher_ci(rho_true, n_pairs, level);
}

ResidualPipelineResult residual_pipeline(const Sample& series,
                                         const std::optional<GarchParams>& params,
                                         const RiskMeasureSpec& risk_proto, int r,
                                         const WindowingPlan& plan,
                                         const std::vector<double>& levels,
                                         const std::vector<DistributionModel>& candidates,
                                         const ResidualOptions& ropt, double ci_level) {
  ResidualPipelineResult out;
  if (params) {
    out.params = *params;
    out.fitted = false;
  } else {
    out.fit_details = fit_garch11_qmle(series);
    out.params = out.fit_details.params;
    out.fitted = true;
  }
  const Sample residuals = extract_residuals(series, out.params, ropt);

  for (double p : levels) {
    LevelComparison cmp;
    cmp.p = p;
    const RiskMeasureSpec risk = risk_proto.at_level(p);
    cmp.raw = measure(series, risk, r, plan, ci_level);
    cmp.residual = measure(residuals, risk, r, plan, ci_level);
    for (const auto& model : candidates) {
      BandCheck band;
      band.model = model;
      RiskMeasureSpec spec_for_model = risk;
      if (spec_for_model.kind == RiskKind::Expectile) spec_for_model.dist = model;
      band.asymptotic = asymptotics::asymptotic_procyclicality({model, spec_for_model, r});
      const auto [lo, hi] = fisher_band_around(band.asymptotic, cmp.residual.pair_count, ci_level);
      band.lo = lo;
      band.hi = hi;
      band.residual_in_band = cmp.residual.correlation >= lo && cmp.residual.correlation <= hi;
      band.raw_in_band = cmp.raw.correlation >= lo && cmp.raw.correlation <= hi;
      cmp.bands.push_back(band);
    }
    out.levels.push_back(std::move(cmp));
  }
  return out;
}

}  // namespace procyc
