#pragma once

#include <cstdint>
#include <vector>

#include "procyc/distribution.hpp"
#include "procyc/estimators.hpp"

namespace procyc {

/// GARCH(1,1) parameters: sigma_t^2 = omega + alpha X_t^2 + beta sigma_{t-1}^2.
struct GarchParams {
  double omega;
  double alpha;
  double beta;

  GarchParams(double omega, double alpha, double beta);
  bool is_stationary() const { return alpha + beta < 1.0; }
  /// omega / (1 - alpha - beta); domain_error when not stationary.
  double stationary_variance() const;
};

struct SimulationPlan {
  std::size_t n = 0;                 // emitted length (after burn-in)
  std::size_t burn_in = 0;           // discarded prefix
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;          // replication index; derives the substream
  DistributionModel innovation = DistributionModel::gaussian();
};

/// n iid draws from the normalized innovation model; bitwise deterministic
/// given (seed, stream).
Sample simulate_iid(const SimulationPlan& plan);

/// x[i] = eps_i * sigma[i] with sigma[i+1]^2 = omega + alpha x[i]^2 + beta sigma[i]^2;
/// sigma[0]^2 starts at the stationary variance. The sigma path is the exact
/// volatility state used for each emitted x (debug hook for the residual
/// inversion identity).
struct GarchPath {
  std::vector<double> x;
  std::vector<double> sigma;
};

GarchPath simulate_garch11(const GarchParams& params, const SimulationPlan& plan,
                           bool allow_nonstationary = false);

enum class SigmaInit { BurnInVariance, StationaryVariance, Explicit };

struct ResidualOptions {
  std::size_t burn_in = 252;                       // one trading year
  SigmaInit init = SigmaInit::BurnInVariance;
  double explicit_sigma2 = 0.0;                    // used when init == Explicit
};

/// Runs the variance recursion forward and emits eps_hat_t = x[t] / sigma_hat[t]
/// for t >= burn_in. sigma_hat[0]^2 is the burn-in-window sample variance by
/// default (configurable); the recursion forgets the initialization at rate
/// beta^t, which is the point of the burn-in year.
Sample extract_residuals(const Sample& series, const GarchParams& params,
                         const ResidualOptions& opt = {});

struct GarchFit {
  GarchParams params = GarchParams(1.0, 0.0, 0.0);
  bool converged = false;
  bool at_stationarity_boundary = false;   // alpha + beta pinned near 1
  double log_likelihood = 0.0;
  int iterations = 0;
};

/// Gaussian quasi-maximum-likelihood fit by bounded Nelder-Mead from the
/// start (omega, alpha, beta) = (0.05 * var, 0.05, 0.90). Needs length >= 500.
GarchFit fit_garch11_qmle(const Sample& series);

}  // namespace procyc
