#include "procyc/distribution.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>

namespace procyc {

namespace {

const boost::math::normal_distribution<double> kNormal(0.0, 1.0);

// sqrt((nu-2)/nu): the factor taking a plain t_nu variate to unit variance.
double norm_scale(double nu) { return std::sqrt((nu - 2.0) / nu); }

void check_level(double p, const char* who) {
  if (!(p > 0.0 && p < 1.0))
    throw domain_error(std::string(who) + ": level must lie in (0,1), got " + std::to_string(p));
}

}  // namespace

DistributionModel DistributionModel::student_t(double nu) {
  if (!(nu > 2.0))
    throw domain_error("DistributionModel: Student-t requires nu > 2 for unit variance, got " +
                       std::to_string(nu));
  return DistributionModel(DistKind::StudentT, nu);
}

double DistributionModel::pdf(double x) const {
  if (kind_ == DistKind::Gaussian) return gaussian_raw::pdf(x);
  const double s = norm_scale(nu_);
  return student_raw::pdf(x / s, nu_) / s;
}

double DistributionModel::cdf(double x) const {
  if (kind_ == DistKind::Gaussian) return gaussian_raw::cdf(x);
  return student_raw::cdf(x / norm_scale(nu_), nu_);
}

double DistributionModel::quantile(double p) const {
  check_level(p, "quantile");
  if (kind_ == DistKind::Gaussian) return gaussian_raw::quantile(p);
  return norm_scale(nu_) * student_raw::quantile(p, nu_);
}

double DistributionModel::truncated_first_moment(double q) const {
  if (kind_ == DistKind::Gaussian) return -gaussian_raw::pdf(q);
  // integral of x f(x) over (-inf, q] for the normalized model; derived from
  // the t identity int_{-inf}^a y f_t(y) dy = -(nu/(nu-1)) f_t(a)(1+a^2/nu)
  // by the change of variables x = sqrt((nu-2)/nu) y.
  const double nu = nu_;
  return -((nu - 2.0) / (nu - 1.0)) * pdf(q) * (1.0 + q * q / (nu - 2.0));
}

double DistributionModel::upper_abs_moment(double q) const {
  if (q >= 0.0) return upper_first_moment(q);
  // E[|X| 1(X>q)] = E|X| + int_{-inf}^q x dF for q < 0 (|x| = -x there).
  return mean_abs() + truncated_first_moment(q);
}

double DistributionModel::mean_abs() const {
  if (kind_ == DistKind::Gaussian) return std::sqrt(2.0 / M_PI);
  return norm_scale(nu_) * student_raw::mean_abs(nu_);
}

double DistributionModel::kappa(double p) const {
  check_level(p, "kappa");
  const double q = quantile(p);
  const double t = truncated_first_moment(q);
  // Eq. with E[X] = 0: kappa(p) = (p q - T) / (-2T - (1-2p) q).
  return (p * q - t) / (-2.0 * t - (1.0 - 2.0 * p) * q);
}

double DistributionModel::kappa_inverse(double p) const {
  check_level(p, "kappa_inverse");
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  if (p <= kappa(lo)) return lo;
  if (p >= kappa(hi)) return hi;
  double mid = 0.5;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double km = kappa(mid);
    if (std::fabs(km - p) <= 1e-12) return mid;
    (km < p ? lo : hi) = mid;
    if (hi - lo <= 1e-16 * std::max(1.0, std::fabs(mid))) return 0.5 * (lo + hi);
  }
  throw numeric_error("kappa_inverse: bisection did not converge", mid, hi - lo);
}

std::string DistributionModel::label() const {
  return kind_ == DistKind::Gaussian ? "gaussian" : "student_t";
}

namespace gaussian_raw {
double pdf(double x) { return boost::math::pdf(kNormal, x); }
double cdf(double x) { return boost::math::cdf(kNormal, x); }
double quantile(double p) { return boost::math::quantile(kNormal, p); }
}  // namespace gaussian_raw

namespace student_raw {

double pdf(double x, double nu) {
  return boost::math::pdf(boost::math::students_t_distribution<double>(nu), x);
}

double cdf(double x, double nu) {
  return boost::math::cdf(boost::math::students_t_distribution<double>(nu), x);
}

double quantile(double p, double nu) {
  return boost::math::quantile(boost::math::students_t_distribution<double>(nu), p);
}

double mean_abs(double nu) {
  return std::sqrt(nu) * std::exp(std::lgamma(0.5 * (nu - 1.0)) - std::lgamma(0.5 * nu)) /
         std::sqrt(M_PI);
}

double upper_first_moment(double q, double nu) {
  if (!(nu > 1.0)) throw domain_error("student upper_first_moment: needs nu > 1");
  return (nu / (nu - 1.0)) * pdf(q, nu) * (1.0 + q * q / nu);
}

double upper_abs_moment(double q, double nu) {
  if (q >= 0.0) return upper_first_moment(q, nu);
  // |y| = -y on (-inf, q] for q < 0, and the lower tail integral of y dF
  // equals -upper_first_moment(q) because the mean is zero.
  return mean_abs(nu) - upper_first_moment(q, nu);
}

}  // namespace student_raw

}  // namespace procyc
