#pragma once

#include <array>
#include <functional>
#include <vector>

#include "procyc/distribution.hpp"
#include "procyc/estimators.hpp"

namespace procyc::asymptotics {

/// One (distribution, risk estimator, dispersion order) cell of the
/// asymptotic pro-cyclicality analysis.
struct ProcyclicalityQuery {
  DistributionModel dist = DistributionModel::gaussian();
  RiskMeasureSpec risk;
  int r = 1;
};

struct CovarianceMatrix2 {
  double g11 = 0.0;
  double g12 = 0.0;
  double g22 = 0.0;
  double correlation() const;
  bool valid() const { return g11 >= 0.0 && g22 >= 0.0 && g12 * g12 <= g11 * g22 * (1.0 + 1e-12); }
};

// --- Generic route (source of truth): Theorem-level covariance formulas
// evaluated by 1-D adaptive quadrature of truncated moments. Each returns the
// *unscaled* correlation in [-1,1] between the risk estimator and the r-th
// absolute centred sample moment.

double iid_correlation_var_dispersion(const DistributionModel& dist, double p, int r);
double iid_correlation_es_dispersion(const DistributionModel& dist, double p, int r);
double iid_correlation_avg_quantiles(const DistributionModel& dist, double p, int k, int r);

/// Dispatch over the four estimators (expectile = quantile route at
/// kappa^-1(p), averaging route for EsAvgK).
double iid_correlation(const DistributionModel& dist, const RiskMeasureSpec& risk, int r);

/// Theorem-1 map from the estimator correlation to the pro-cyclicality of the
/// log look-forward ratio: -|rho| / sqrt(2). Throws domain_error if |rho|
/// exceeds 1 beyond round-off.
double scale_to_procyclicality(double rho);

/// scale_to_procyclicality of the generic route; values lie in [-1/sqrt2, 0].
double asymptotic_procyclicality(const ProcyclicalityQuery& query);

// --- Verification route: the appendix table formulas, evaluated as printed
// (in plain-t coordinates for Student; correlations are scale invariant).
// Supports r in {1,2} and risk in {VaR, EsChen, Expectile}; anything else
// raises capability_error pointing callers at the generic ops.
double closed_form_procyclicality(const ProcyclicalityQuery& query);

/// Nested tail integral behind the ES table entries,
///   int_p^1 int_v^1 v (1-u) / (f(q(u)) f(q(v))) du dv,
/// evaluated after the substitution u = F(x), v = F(y) (which removes the
/// 1/f singularity at the upper limit) as
///   int_q^inf F(y) int_y^inf (1-F(x)) kernel(x,y) dx dy
/// by nested adaptive quadrature to relative tolerance 1e-7. The optional
/// kernel multiplies the substituted integrand (default 1). Coordinates are
/// the normalized model's.
double quadrature_double_es(const DistributionModel& dist, double p,
                            const std::function<double(double, double)>& inner_kernel = {});

/// Bartlett-kernel long-run covariance of a bivariate series; max_lag = 0
/// degenerates to the plain sample covariance. Used to check the GARCH
/// dependence-series structure empirically.
CovarianceMatrix2 longrun_covariance(const std::vector<std::array<double, 2>>& series,
                                     int max_lag);

}  // namespace procyc::asymptotics
