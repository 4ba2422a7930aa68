#pragma once

#include <optional>
#include <string>

#include "procyc/errors.hpp"

namespace procyc {

enum class DistKind { Gaussian, StudentT };

/// Analytic distribution layer for the two iid models: the standard normal
/// and the Student-t(nu) rescaled by sqrt((nu-2)/nu). Both have mean 0 and
/// variance 1; every public surface speaks in that normalized coordinate.
class DistributionModel {
 public:
  static DistributionModel gaussian() { return DistributionModel(DistKind::Gaussian, 0.0); }

  /// Variance-normalized Student-t. Requires nu > 2 (finite variance).
  static DistributionModel student_t(double nu);

  DistKind kind() const { return kind_; }
  double nu() const { return nu_; }

  double pdf(double x) const;
  double cdf(double x) const;

  /// Inverse cdf; throws domain_error for p outside (0,1).
  double quantile(double p) const;

  /// Lower truncated first moment: integral of x dF(x) over (-inf, q].
  /// Gaussian: -pdf(q). Normalized Student: -((nu-2)/(nu-1)) pdf(q) (1 + q^2/(nu-2)).
  double truncated_first_moment(double q) const;

  /// Upper truncated moment E[X 1(X > q)] = -truncated_first_moment(q)
  /// (the models have mean 0).
  double upper_first_moment(double q) const { return -truncated_first_moment(q); }

  /// Upper truncated absolute moment E[|X| 1(X > q)], piecewise around 0.
  double upper_abs_moment(double q) const;

  /// E[|X|], closed form.
  double mean_abs() const;

  /// Quantile-to-expectile level map: the strictly increasing bijection kappa
  /// with e_kappa(p) = q(p). kappa(0.5) = 0.5 for these symmetric models.
  double kappa(double p) const;

  /// Inverse of kappa by monotone bisection on (1e-12, 1-1e-12); throws
  /// numeric_error if the iteration cap is hit before |kappa(a) - p| <= 1e-12.
  double kappa_inverse(double p) const;

  /// "gaussian" or "student_t".
  std::string label() const;

  bool operator==(const DistributionModel& o) const { return kind_ == o.kind_ && nu_ == o.nu_; }

 private:
  DistributionModel(DistKind kind, double nu) : kind_(kind), nu_(nu) {}
  DistKind kind_;
  double nu_;
};

namespace student_raw {
// Plain (unnormalized) Student-t helpers used by the closed-form table layer,
// which is written in the paper's t-coordinates. Correlations are scale
// invariant, so the table values agree with the normalized model.
double pdf(double x, double nu);
double cdf(double x, double nu);
double quantile(double p, double nu);
double mean_abs(double nu);               // sqrt(nu) Gamma((nu-1)/2) / (sqrt(pi) Gamma(nu/2))
double upper_first_moment(double q, double nu);   // (nu/(nu-1)) f(q) (1 + q^2/nu)
double upper_abs_moment(double q, double nu);     // piecewise around 0
}  // namespace student_raw

namespace gaussian_raw {
double pdf(double x);
double cdf(double x);
double quantile(double p);
}  // namespace gaussian_raw

}  // namespace procyc
