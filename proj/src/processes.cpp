#include "procyc/processes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "procyc/rng.hpp"

namespace procyc {

GarchParams::GarchParams(double omega, double alpha, double beta)
    : omega(omega), alpha(alpha), beta(beta) {
  if (!(omega > 0.0) || !(alpha >= 0.0) || !(beta >= 0.0))
    throw domain_error("GarchParams: need omega > 0, alpha >= 0, beta >= 0");
}

double GarchParams::stationary_variance() const {
  if (!is_stationary())
    throw domain_error("GarchParams: alpha + beta >= 1, no stationary variance");
  return omega / (1.0 - alpha - beta);
}

Sample simulate_iid(const SimulationPlan& plan) {
  if (plan.n < 1) throw input_error("simulate_iid: n must be >= 1");
  rng::Stream stream(plan.seed, plan.stream);
  std::vector<double> out(plan.n);
  for (std::size_t i = 0; i < plan.n; ++i)
    out[i] = stream.innovation_at(plan.burn_in + i, plan.innovation);
  return Sample(std::move(out));
}

GarchPath simulate_garch11(const GarchParams& params, const SimulationPlan& plan,
                           bool allow_nonstationary) {
  if (plan.n < 1) throw input_error("simulate_garch11: n must be >= 1");
  if (!params.is_stationary() && !allow_nonstationary)
    throw domain_error("simulate_garch11: alpha + beta >= 1; pass the override to force");
  rng::Stream stream(plan.seed, plan.stream);
  const double sigma2_start = params.is_stationary()
                                  ? params.stationary_variance()
                                  : params.omega / std::max(1e-12, 1.0 - 0.999);
  GarchPath path;
  path.x.resize(plan.n);
  path.sigma.resize(plan.n);
  double sigma2 = sigma2_start;
  const std::size_t total = plan.burn_in + plan.n;
  for (std::size_t t = 0; t < total; ++t) {
    const double sigma = std::sqrt(sigma2);
    const double x = stream.innovation_at(t, plan.innovation) * sigma;
    if (t >= plan.burn_in) {
      path.x[t - plan.burn_in] = x;
      path.sigma[t - plan.burn_in] = sigma;
    }
    sigma2 = params.omega + params.alpha * x * x + params.beta * sigma2;
  }
  return path;
}

Sample extract_residuals(const Sample& series, const GarchParams& params,
                         const ResidualOptions& opt) {
  const auto& x = series.values();
  if (x.size() < opt.burn_in + 2)
    throw input_error("extract_residuals: series length must exceed burn_in + 1");

  double sigma2 = 0.0;
  switch (opt.init) {
    case SigmaInit::BurnInVariance: {
      const std::size_t w = std::max<std::size_t>(opt.burn_in, 2);
      sigma2 = estimators::abs_centred_moment(std::span<const double>(x.data(), std::min(w, x.size())), 2);
      if (!(sigma2 > 0.0)) throw input_error("extract_residuals: burn-in window has zero variance");
      break;
    }
    case SigmaInit::StationaryVariance:
      sigma2 = params.stationary_variance();
      break;
    case SigmaInit::Explicit:
      if (!(opt.explicit_sigma2 > 0.0))
        throw domain_error("extract_residuals: explicit sigma^2 must be positive");
      sigma2 = opt.explicit_sigma2;
      break;
  }

  // sigma_hat[t]^2 = omega + alpha x[t-1]^2 + beta sigma_hat[t-1]^2, t >= 1,
  // with sigma_hat[0]^2 = sigma2. Residuals past the burn-in: x[t]/sigma_hat[t].
  std::vector<double> eps;
  eps.reserve(x.size() - opt.burn_in);
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (t > 0) sigma2 = params.omega + params.alpha * x[t - 1] * x[t - 1] + params.beta * sigma2;
    if (t >= opt.burn_in) eps.push_back(x[t] / std::sqrt(sigma2));
  }
  return Sample(std::move(eps));
}

namespace {

// Negative Gaussian quasi-log-likelihood (up to the constant). sigma^2
// recursion initialized at the full-sample variance; x[0] is not scored.
double garch_nll(const std::vector<double>& x, double omega, double alpha, double beta,
                 double sample_var) {
  double sigma2 = sample_var;
  double nll = 0.0;
  for (std::size_t t = 1; t < x.size(); ++t) {
    sigma2 = omega + alpha * x[t - 1] * x[t - 1] + beta * sigma2;
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) return std::numeric_limits<double>::infinity();
    nll += std::log(sigma2) + x[t] * x[t] / sigma2;
  }
  return 0.5 * nll;
}

struct SimplexResult {
  std::array<double, 3> x;
  double f = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Nelder-Mead on R^3 with an infinite-penalty feasible region.
SimplexResult nelder_mead(const std::function<double(const std::array<double, 3>&)>& f,
                          std::array<double, 3> start, std::array<double, 3> step,
                          double ftol, int max_iter) {
  constexpr int n = 3;
  std::array<std::array<double, 3>, 4> pts;
  std::array<double, 4> vals;
  pts[0] = start;
  for (int i = 0; i < n; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step[i];
  }
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  auto order = [&] {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::array<std::array<double, 3>, 4> p2;
    std::array<double, 4> v2;
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts = p2;
    vals = v2;
  };

  int it = 0;
  for (; it < max_iter; ++it) {
    order();
    if (std::fabs(vals[n] - vals[0]) <= ftol * (std::fabs(vals[0]) + ftol)) break;

    std::array<double, 3> centroid{0, 0, 0};
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < 3; ++d) centroid[d] += pts[i][d] / n;

    auto at = [&](double coef) {
      std::array<double, 3> p;
      for (int d = 0; d < 3; ++d) p[d] = centroid[d] + coef * (pts[n][d] - centroid[d]);
      return p;
    };

    const auto refl = at(-1.0);
    const double frefl = f(refl);
    if (frefl < vals[0]) {
      const auto exp_ = at(-2.0);
      const double fexp = f(exp_);
      if (fexp < frefl) {
        pts[n] = exp_;
        vals[n] = fexp;
      } else {
        pts[n] = refl;
        vals[n] = frefl;
      }
    } else if (frefl < vals[n - 1]) {
      pts[n] = refl;
      vals[n] = frefl;
    } else {
      const auto contr = at(frefl < vals[n] ? -0.5 : 0.5);
      const double fcontr = f(contr);
      if (fcontr < std::min(frefl, vals[n])) {
        pts[n] = contr;
        vals[n] = fcontr;
      } else {
        for (int i = 1; i <= n; ++i) {
          for (int d = 0; d < 3; ++d) pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  return {pts[0], vals[0], it < max_iter, it};
}

}  // namespace

GarchFit fit_garch11_qmle(const Sample& series) {
  const auto& x = series.values();
  if (x.size() < 500) throw input_error("fit_garch11_qmle: need at least 500 observations");
  const double var = estimators::abs_centred_moment(series, 2);
  if (!(var > 0.0)) throw input_error("fit_garch11_qmle: series has zero variance");

  auto objective = [&](const std::array<double, 3>& p) {
    const double omega = p[0], alpha = p[1], beta = p[2];
    if (!(omega > 1e-12 * var) || alpha < 0.0 || beta < 0.0 || alpha + beta > 0.99999)
      return std::numeric_limits<double>::infinity();
    return garch_nll(x, omega, alpha, beta, var);
  };

  const std::array<double, 3> start{0.05 * var, 0.05, 0.90};
  const std::array<double, 3> step{0.05 * var, 0.05, 0.05};
  auto res = nelder_mead(objective, start, step, 1e-12, 4000);
  // One restart from the found optimum tightens the simplex.
  auto res2 = nelder_mead(objective, res.x, {0.2 * res.x[0] + 1e-8 * var, 0.02, 0.02}, 1e-13, 4000);
  if (res2.f <= res.f) res = res2;

  GarchFit fit{GarchParams(std::max(res.x[0], 1e-300), std::max(res.x[1], 0.0),
                           std::max(res.x[2], 0.0)),
               res.converged, res.x[1] + res.x[2] > 0.995, -res.f,
               res.iterations};
  return fit;
}

}  // namespace procyc
