#pragma once

#include <optional>
#include <span>
#include <vector>

#include "procyc/distribution.hpp"
#include "procyc/errors.hpp"

namespace procyc {

/// An immutable sample of finite reals; construction rejects NaN/inf and
/// empty input. Estimators never mutate it (sorting uses a scratch copy).
class Sample {
 public:
  explicit Sample(std::vector<double> values);
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }
  std::size_t size() const { return values_.size(); }

 private:
  std::vector<double> values_;
};

enum class RiskKind { VaR, EsChen, EsAvgK, Expectile };

/// Which estimator zeta_{n,i}(p) to evaluate and at what level.
struct RiskMeasureSpec {
  RiskKind kind = RiskKind::VaR;
  double level = 0.95;                       // p in (0,1)
  int k = 1;                                 // EsAvgK only, k >= 1
  std::optional<DistributionModel> dist;     // Expectile only: model for kappa^-1

  static RiskMeasureSpec var(double p) { return {RiskKind::VaR, p}; }
  static RiskMeasureSpec es_chen(double p) { return {RiskKind::EsChen, p}; }
  static RiskMeasureSpec es_avg(double p, int k) { return {RiskKind::EsAvgK, p, k}; }
  static RiskMeasureSpec expectile(double p, DistributionModel d) {
    return {RiskKind::Expectile, p, 1, d};
  }
  RiskMeasureSpec at_level(double p) const {
    RiskMeasureSpec s = *this;
    s.level = p;
    return s;
  }
  const char* name() const;
};

namespace estimators {

/// Nearest integer [x] with half-integers resolved to even
/// (std::nearbyint under the default rounding mode).
double nearest_integer(double x);

/// Empirical quantile X_(ceil(np)); no interpolation.
double sample_quantile(const Sample& s, double p);

/// (1/n) sum |X_i - mean|^r. r = 1 is the sample MAD, r = 2 the biased
/// sample variance. r must be >= 1.
double abs_centred_moment(const Sample& s, int r);

/// Threshold-averaging ES: (1/(n - [np] + 1)) sum L_i 1(L_i >= q_n(p)).
/// The divisor follows the printed formula verbatim; with ties, or when np
/// is a half-integer, it can differ from the number of indicated terms.
double es_chen(const Sample& s, double p);

/// Quantile-averaging ES over the grid p_i = p + (i-1)(1-p)/k, i = 1..k
/// (reproduces the k = 4 grid 0.25 p (5-i) + 0.25 (i-1) exactly).
double es_avg_quantiles(const Sample& s, double p, int k);

/// Expectile via the quantile bijection: sample_quantile at kappa^-1(p).
double expectile_estimate(const Sample& s, double p, const DistributionModel& dist);

/// Dispatch over RiskMeasureSpec.
double evaluate(const RiskMeasureSpec& spec, const Sample& s);

// Order-statistic fast paths on data already sorted ascending; used by the
// rolling-window and Monte Carlo loops, which sort each window once.
namespace sorted {
double sample_quantile(std::span<const double> ascending, double p);
double es_chen(std::span<const double> ascending, double p);
double es_avg_quantiles(std::span<const double> ascending, double p, int k);
double evaluate(const RiskMeasureSpec& spec, std::span<const double> ascending);
}  // namespace sorted

/// Mean and r-th absolute centred moment of a raw span (no Sample validation).
double abs_centred_moment(std::span<const double> values, int r);

}  // namespace estimators
}  // namespace procyc
