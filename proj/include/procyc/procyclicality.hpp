#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "procyc/asymptotics.hpp"
#include "procyc/estimators.hpp"
#include "procyc/processes.hpp"

namespace procyc {

/// Rolling-window layout for the look-forward ratio. horizon >= window keeps
/// the forward risk window disjoint from the backward windows.
struct WindowingPlan {
  std::size_t window;
  std::size_t horizon;
  std::size_t stride;

  WindowingPlan(std::size_t window, std::size_t horizon, std::size_t stride);
};

struct ProcyclicalityResult {
  double correlation = 0.0;
  std::size_t pair_count = 0;
  std::size_t dropped_pairs = 0;  // anchors with a zero risk estimate (log undefined)
  double level = 0.95;            // confidence level of the interval
  std::optional<std::pair<double, double>> ci;  // present when pair_count >= 4
};

/// Pearson correlation of (log|zeta_fwd / zeta_back|, m_hat_back) over all
/// anchors. Throws insufficient_data_error with fewer than 3 valid pairs and
/// degenerate_correlation_error when either column is constant.
ProcyclicalityResult measure(const Sample& series, const RiskMeasureSpec& risk, int r,
                             const WindowingPlan& plan, double ci_level = 0.95);

/// Fisher z interval: z = atanh(rho), half-width z_{(1+level)/2}/sqrt(n-3).
/// Requires n_pairs >= 4 and |rho| < 1.
std::pair<double, double> fisher_ci(double rho, std::size_t n_pairs, double level);

/// Fisher band centered at a *known* correlation: the interval a sample
/// correlation of n_pairs pairs should fall into with the stated probability.
std::pair<double, double> fisher_band_around(double rho_true, std::size_t n_pairs, double level);

struct BandCheck {
  DistributionModel model = DistributionModel::gaussian();
  double asymptotic = 0.0;  // iid pro-cyclicality under this innovation model
  double lo = 0.0;
  double hi = 0.0;
  bool residual_in_band = false;
  bool raw_in_band = false;
};

struct LevelComparison {
  double p = 0.0;
  ProcyclicalityResult raw;
  ProcyclicalityResult residual;
  std::vector<BandCheck> bands;
};

struct ResidualPipelineResult {
  GarchParams params{1.0, 0.0, 0.0};
  bool fitted = false;
  GarchFit fit_details{};                 // meaningful when fitted
  std::vector<LevelComparison> levels;
};

/// The §-mirror measurement: extract GARCH residuals (fitting first when no
/// parameters are supplied), measure pro-cyclicality on the raw series and on
/// the residual series at each level, and compare the residual value against
/// the iid asymptotic value's Fisher band for every candidate innovation
/// model.
ResidualPipelineResult residual_pipeline(const Sample& series,
                                         const std::optional<GarchParams>& params,
                                         const RiskMeasureSpec& risk_proto, int r,
                                         const WindowingPlan& plan,
                                         const std::vector<double>& levels,
                                         const std::vector<DistributionModel>& candidates,
                                         const ResidualOptions& ropt = {},
                                         double ci_level = 0.95);

}  // namespace procyc
