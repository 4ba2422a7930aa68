#include "procyc/asymptotics.hpp"

#include <cmath>

#include "procyc/quadrature.hpp"

namespace procyc::asymptotics {

namespace {

const quad::Options kTol1d{1e-12, 1e-10, 4000, true};

void require_moments(const DistributionModel& dist, int r) {
  if (r < 1) throw domain_error("dispersion order r must be a positive integer");
  if (dist.kind() == DistKind::StudentT && !(dist.nu() > 2.0 * r))
    throw domain_error("Student-t(nu=" + std::to_string(dist.nu()) +
                       "): dispersion order r=" + std::to_string(r) +
                       " needs nu > " + std::to_string(2 * r));
}

double ipow_abs(double x, int r) {
  const double a = std::fabs(x);
  if (r == 1) return a;
  if (r == 2) return a * a;
  return std::pow(a, r);
}

// x^{r-1} sgn(x)^r; equals |x|^{r-1} sgn(x) for even r-1... spelled out:
// for r odd it is x^{r-1} sgn(x), for r even it is x^{r-1}.
double sign_weight(double x, int r) {
  double v = 1.0;
  for (int i = 0; i < r - 1; ++i) v *= x;
  if (r % 2 == 1) v *= (x > 0.0) - (x < 0.0);
  return v;
}

// Everything the dispersion influence term g(X) = |X|^r - r k_r X needs,
// computed by quadrature against the normalized density.
struct DispersionMoments {
  double mr;    // E|X|^r
  double kr;    // E[X^{r-1} sgn(X)^r]
  double varg;  // Var(|X|^r - r k_r X)
};

DispersionMoments dispersion_moments(const DistributionModel& dist, int r) {
  auto f = [&dist](double x) { return dist.pdf(x); };
  const double mr =
      quad::integrate_real_line([&](double x) { return ipow_abs(x, r) * f(x); }, kTol1d).value;
  const double m2r =
      quad::integrate_real_line([&](double x) { return ipow_abs(x, 2 * r) * f(x); }, kTol1d).value;
  const double kr =
      quad::integrate_real_line([&](double x) { return sign_weight(x, r) * f(x); }, kTol1d).value;
  const double cross =
      quad::integrate_real_line([&](double x) { return ipow_abs(x, r) * x * f(x); }, kTol1d).value;
  // E[g^2] - (E g)^2 with E g = mr, E X = 0, E X^2 = 1.
  const double varg = m2r - 2.0 * r * kr * cross + r * r * kr * kr - mr * mr;
  return {mr, kr, varg};
}

// int_q^inf integrand(x) f(x) dx with a split at 0 for the |x| kink.
template <class G>
double upper_integral(const DistributionModel& dist, double q, G&& integrand) {
  auto h = [&](double x) { return integrand(x) * dist.pdf(x); };
  if (q < 0.0) {
    const auto left = quad::integrate(h, q, 0.0, kTol1d);
    const auto right = quad::integrate_right_tail(h, 0.0, kTol1d);
    return left.value + right.value;
  }
  return quad::integrate_right_tail(h, q, kTol1d).value;
}

}  // namespace

double CovarianceMatrix2::correlation() const {
  if (!(g11 > 0.0) || !(g22 > 0.0))
    throw degenerate_correlation_error("CovarianceMatrix2: zero variance entry");
  return g12 / std::sqrt(g11 * g22);
}

double iid_correlation_var_dispersion(const DistributionModel& dist, double p, int r) {
  require_moments(dist, r);
  const double q = dist.quantile(p);
  const auto dm = dispersion_moments(dist, r);
  const double abs_tail = upper_integral(dist, q, [r](double x) { return ipow_abs(x, r); });
  const double x_tail = upper_integral(dist, q, [](double x) { return x; });
  const double cov_ind = abs_tail - dm.mr * (1.0 - p);     // Cov(|X|^r, 1(X>q))
  const double num = cov_ind - r * dm.kr * x_tail;         // minus r k_r Cov(X, 1(X>q))
  return num / std::sqrt(p * (1.0 - p) * dm.varg);
}

double iid_correlation_es_dispersion(const DistributionModel& dist, double p, int r) {
  require_moments(dist, r);
  const double q = dist.quantile(p);
  const auto dm = dispersion_moments(dist, r);
  // h(X) = (X - q) 1(X >= q); the 1/(1-p) scale cancels in the correlation.
  const double eh = upper_integral(dist, q, [q](double x) { return x - q; });
  const double eh2 = upper_integral(dist, q, [q](double x) { return (x - q) * (x - q); });
  const double varh = eh2 - eh * eh;
  const int rr = r;
  const double kr = dm.kr;
  const double ehg = upper_integral(
      dist, q, [q, rr, kr](double x) { return (x - q) * (ipow_abs(x, rr) - rr * kr * x); });
  const double cov = ehg - eh * dm.mr;
  return cov / std::sqrt(varh * dm.varg);
}

double iid_correlation_avg_quantiles(const DistributionModel& dist, double p, int k, int r) {
  require_moments(dist, r);
  if (k < 1) throw domain_error("iid_correlation_avg_quantiles: k must be >= 1");
  const auto dm = dispersion_moments(dist, r);
  std::vector<double> levels(k), qs(k), fs(k), cov_level(k);
  for (int i = 0; i < k; ++i) {
    levels[i] = p + static_cast<double>(i) * (1.0 - p) / static_cast<double>(k);
    qs[i] = dist.quantile(levels[i]);
    fs[i] = dist.pdf(qs[i]);
    const double abs_tail = upper_integral(dist, qs[i], [r](double x) { return ipow_abs(x, r); });
    const double x_tail = upper_integral(dist, qs[i], [](double x) { return x; });
    cov_level[i] = abs_tail - dm.mr * (1.0 - levels[i]) - r * dm.kr * x_tail;
  }
  // Influence of the k-quantile average: (1/k) sum 1(X > q_i)/f(q_i).
  double num = 0.0;
  for (int i = 0; i < k; ++i) num += cov_level[i] / fs[i];
  num /= k;
  double var_avg = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double cij = std::min(1.0 - levels[i], 1.0 - levels[j]) -
                         (1.0 - levels[i]) * (1.0 - levels[j]);
      var_avg += cij / (fs[i] * fs[j]);
    }
  }
  var_avg /= static_cast<double>(k) * static_cast<double>(k);
  return num / std::sqrt(var_avg * dm.varg);
}

double iid_correlation(const DistributionModel& dist, const RiskMeasureSpec& risk, int r) {
  switch (risk.kind) {
    case RiskKind::VaR:
      return iid_correlation_var_dispersion(dist, risk.level, r);
    case RiskKind::EsChen:
      return iid_correlation_es_dispersion(dist, risk.level, r);
    case RiskKind::EsAvgK:
      return iid_correlation_avg_quantiles(dist, risk.level, risk.k, r);
    case RiskKind::Expectile: {
      const DistributionModel& kappa_model = risk.dist ? *risk.dist : dist;
      return iid_correlation_var_dispersion(dist, kappa_model.kappa_inverse(risk.level), r);
    }
  }
  throw domain_error("iid_correlation: unknown risk kind");
}

double scale_to_procyclicality(double rho) {
  const double mag = std::fabs(rho);
  if (mag > 1.0 + 1e-12)
    throw domain_error("scale_to_procyclicality: |rho| = " + std::to_string(mag) + " exceeds 1");
  return -std::min(mag, 1.0) / std::sqrt(2.0);
}

double asymptotic_procyclicality(const ProcyclicalityQuery& query) {
  return scale_to_procyclicality(iid_correlation(query.dist, query.risk, query.r));
}

double quadrature_double_es(const DistributionModel& dist, double p,
                            const std::function<double(double, double)>& inner_kernel) {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("quadrature_double_es: p must lie in (0,1)");
  const double q = dist.quantile(p);
  quad::Options outer_tol{1e-13, 1e-7, 4000, true};
  quad::Options inner_tol{1e-14, 1e-9, 4000, true};
  auto outer = [&](double y) {
    auto inner = [&](double x) {
      const double w = 1.0 - dist.cdf(x);
      return inner_kernel ? w * inner_kernel(x, y) : w;
    };
    return dist.cdf(y) * quad::integrate_right_tail(inner, y, inner_tol).value;
  };
  const auto res = quad::integrate_right_tail(outer, q, outer_tol);
  return res.value;
}

namespace closed_form {

// Table entries, Gaussian column. Magnitudes of the unscaled correlations;
// the -1/sqrt(2) prefactor is applied by the caller.
double gaussian_var(double p, int r) {
  const double z = gaussian_raw::quantile(p);
  const double phi = gaussian_raw::pdf(z);
  if (r == 2) return phi * std::fabs(z) / std::sqrt(2.0 * p * (1.0 - p));
  const double mean_abs = std::sqrt(2.0 / M_PI);
  const double tabs = DistributionModel::gaussian().upper_abs_moment(z);
  return std::fabs(tabs - (1.0 - p) * mean_abs) /
         std::sqrt(p * (1.0 - p) * (1.0 - 2.0 / M_PI));
}

double gaussian_es(double p, int r) {
  const double big_i = quadrature_double_es(DistributionModel::gaussian(), p);
  if (r == 2) {
    quad::Options tol{1e-11, 1e-8, 4000, true};
    const double num =
        quad::integrate([](double u) { return gaussian_raw::quantile(u); }, p, 1.0, tol).value;
    return std::fabs(num) / (2.0 * std::sqrt(big_i));
  }
  const double q = gaussian_raw::quantile(p);
  const double mean_abs = std::sqrt(2.0 / M_PI);
  const auto model = DistributionModel::gaussian();
  auto integrand = [&](double x) {
    return model.upper_abs_moment(x) - (1.0 - gaussian_raw::cdf(x)) * mean_abs;
  };
  double num;
  quad::Options tol{1e-12, 1e-9, 4000, true};
  if (q < 0.0)
    num = quad::integrate(integrand, q, 0.0, tol).value +
          quad::integrate_right_tail(integrand, 0.0, tol).value;
  else
    num = quad::integrate_right_tail(integrand, q, tol).value;
  return std::fabs(num) / (2.0 * std::sqrt((0.5 - 1.0 / M_PI) * big_i));
}

// Student column, evaluated in plain-t coordinates as printed. The double
// integral is computed on the normalized model and mapped back through the
// exact scaling I_raw = I_norm / s^2, s = sqrt((nu-2)/nu).
double student_var(const DistributionModel& dist, double p, int r) {
  const double nu = dist.nu();
  const double a = student_raw::quantile(p, nu);
  const double f = student_raw::pdf(a, nu);
  if (r == 2) {
    return f * std::fabs(a) * (1.0 + a * a / nu) /
           std::sqrt((nu - 1.0) / (nu - 4.0) * 2.0 * p * (1.0 - p));
  }
  const double mean_abs = student_raw::mean_abs(nu);
  const double var_abs = nu / (nu - 2.0) - mean_abs * mean_abs;
  const double tabs = student_raw::upper_abs_moment(a, nu);
  return std::fabs(tabs - (1.0 - p) * mean_abs) / std::sqrt(p * (1.0 - p) * var_abs);
}

double student_es(const DistributionModel& dist, double p, int r) {
  const double nu = dist.nu();
  const double s2 = (nu - 2.0) / nu;
  const double big_i = quadrature_double_es(dist, p) / s2;
  if (r == 2) {
    quad::Options tol{1e-11, 1e-8, 4000, true};
    const double num = quad::integrate(
                           [nu](double u) {
                             const double qu = student_raw::quantile(u, nu);
                             return qu * (1.0 + qu * qu / nu);
                           },
                           p, 1.0, tol)
                           .value;
    return std::fabs(num) / (2.0 * std::sqrt((nu - 1.0) / (nu - 4.0) * big_i));
  }
  const double a = student_raw::quantile(p, nu);
  const double mean_abs = student_raw::mean_abs(nu);
  const double var_abs = nu / (nu - 2.0) - mean_abs * mean_abs;
  auto integrand = [nu, mean_abs](double x) {
    return student_raw::upper_abs_moment(x, nu) -
           (1.0 - student_raw::cdf(x, nu)) * mean_abs;
  };
  double num;
  quad::Options tol{1e-12, 1e-9, 4000, true};
  if (a < 0.0)
    num = quad::integrate(integrand, a, 0.0, tol).value +
          quad::integrate_right_tail(integrand, 0.0, tol).value;
  else
    num = quad::integrate_right_tail(integrand, a, tol).value;
  return std::fabs(num) / (std::sqrt(2.0 * big_i) * std::sqrt(var_abs));
}

}  // namespace closed_form

double closed_form_procyclicality(const ProcyclicalityQuery& query) {
  const int r = query.r;
  if (r != 1 && r != 2)
    throw capability_error("closed_form_procyclicality: tables cover r in {1,2}; "
                           "use the generic quadrature ops for r=" + std::to_string(r));
  RiskKind kind = query.risk.kind;
  if (kind == RiskKind::EsAvgK)
    throw capability_error("closed_form_procyclicality: no table entry for the k-quantile "
                           "average; use iid_correlation_avg_quantiles + scaling");
  require_moments(query.dist, r);

  double level = query.risk.level;
  if (!(level > 0.0 && level < 1.0))
    throw domain_error("closed_form_procyclicality: level must lie in (0,1)");
  if (kind == RiskKind::Expectile) {
    const DistributionModel& kappa_model =
        query.risk.dist ? *query.risk.dist : query.dist;
    level = kappa_model.kappa_inverse(level);
    kind = RiskKind::VaR;  // expectile rows are the VaR rows at kappa^-1(p)
  }

  double mag = 0.0;
  if (query.dist.kind() == DistKind::Gaussian) {
    mag = (kind == RiskKind::VaR) ? closed_form::gaussian_var(level, r)
                                  : closed_form::gaussian_es(level, r);
  } else {
    mag = (kind == RiskKind::VaR) ? closed_form::student_var(query.dist, level, r)
                                  : closed_form::student_es(query.dist, level, r);
  }
  return scale_to_procyclicality(mag);
}

CovarianceMatrix2 longrun_covariance(const std::vector<std::array<double, 2>>& series,
                                     int max_lag) {
  if (max_lag < 0) throw domain_error("longrun_covariance: max_lag must be >= 0");
  const std::size_t n = series.size();
  if (n < static_cast<std::size_t>(max_lag) + 2)
    throw input_error("longrun_covariance: need at least max_lag + 2 observations");

  double ma = 0.0, mb = 0.0;
  for (const auto& u : series) {
    ma += u[0];
    mb += u[1];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);

  auto lag_cov = [&](int lag) {
    std::array<double, 4> c{0, 0, 0, 0};  // aa, ab, ba, bb at this lag
    for (std::size_t t = lag; t < n; ++t) {
      const double a0 = series[t][0] - ma;
      const double b0 = series[t][1] - mb;
      const double a1 = series[t - lag][0] - ma;
      const double b1 = series[t - lag][1] - mb;
      c[0] += a0 * a1;
      c[1] += a0 * b1;
      c[2] += b0 * a1;
      c[3] += b0 * b1;
    }
    for (double& v : c) v /= static_cast<double>(n);
    return c;
  };

  auto c0 = lag_cov(0);
  CovarianceMatrix2 g{c0[0], 0.5 * (c0[1] + c0[2]), c0[3]};
  for (int lag = 1; lag <= max_lag; ++lag) {
    const double w = 1.0 - static_cast<double>(lag) / (max_lag + 1.0);
    auto cl = lag_cov(lag);
    g.g11 += w * 2.0 * cl[0];
    g.g12 += w * (cl[1] + cl[2]);
    g.g22 += w * 2.0 * cl[3];
  }
  return g;
}

}  // namespace procyc::asymptotics
