#include "procyc/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace procyc {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw input_error("Sample: empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw input_error("Sample: non-finite value at index " + std::to_string(i));
  }
}

const char* RiskMeasureSpec::name() const {
  switch (kind) {
    case RiskKind::VaR: return "var";
    case RiskKind::EsChen: return "es_chen";
    case RiskKind::EsAvgK: return "es_avg";
    case RiskKind::Expectile: return "expectile";
  }
  return "?";
}

namespace estimators {

namespace {

void check_level(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("estimator level must lie in (0,1), got " + std::to_string(p));
}

std::vector<double> sorted_copy(const Sample& s) {
  std::vector<double> v(s.values());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

double nearest_integer(double x) { return std::nearbyint(x); }

namespace sorted {

double sample_quantile(std::span<const double> asc, double p) {
  check_level(p);
  const std::size_t n = asc.size();
  if (n == 0) throw input_error("sample_quantile: empty sample");
  // X_(ceil(np)), 1-based; ceil(np) is in [1, n] for p in (0,1).
  auto idx = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * p));
  if (idx < 1) idx = 1;
  if (idx > n) idx = n;
  return asc[idx - 1];
}

double es_chen(std::span<const double> asc, double p) {
  check_level(p);
  const std::size_t n = asc.size();
  if (n == 0) throw input_error("es_chen: empty sample");
  const double q = sample_quantile(asc, p);
  const double divisor =
      static_cast<double>(n) - nearest_integer(static_cast<double>(n) * p) + 1.0;
  // All L_i >= q contribute; on sorted data these are a suffix starting at
  // the first element >= q (ties with q are kept).
  auto first = std::lower_bound(asc.begin(), asc.end(), q);
  double sum = 0.0;
  for (auto it = first; it != asc.end(); ++it) sum += *it;
  return sum / divisor;
}

double es_avg_quantiles(std::span<const double> asc, double p, int k) {
  check_level(p);
  if (k < 1) throw domain_error("es_avg_quantiles: k must be >= 1");
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double pi = p + static_cast<double>(i) * (1.0 - p) / static_cast<double>(k);
    sum += sample_quantile(asc, pi);
  }
  return sum / static_cast<double>(k);
}

double evaluate(const RiskMeasureSpec& spec, std::span<const double> asc) {
  switch (spec.kind) {
    case RiskKind::VaR:
      return sample_quantile(asc, spec.level);
    case RiskKind::EsChen:
      return es_chen(asc, spec.level);
    case RiskKind::EsAvgK:
      return es_avg_quantiles(asc, spec.level, spec.k);
    case RiskKind::Expectile: {
      if (!spec.dist) throw domain_error("expectile spec needs a distribution model");
      return sample_quantile(asc, spec.dist->kappa_inverse(spec.level));
    }
  }
  throw domain_error("evaluate: unknown risk kind");
}

}  // namespace sorted

double sample_quantile(const Sample& s, double p) {
  return sorted::sample_quantile(sorted_copy(s), p);
}

double abs_centred_moment(std::span<const double> v, int r) {
  if (r < 1) throw domain_error("abs_centred_moment: r must be a positive integer");
  if (v.empty()) throw input_error("abs_centred_moment: empty sample");
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double acc = 0.0;
  if (r == 1) {
    for (double x : v) acc += std::fabs(x - mean);
  } else if (r == 2) {
    for (double x : v) acc += (x - mean) * (x - mean);
  } else {
    for (double x : v) acc += std::pow(std::fabs(x - mean), r);
  }
  return acc / n;
}

double abs_centred_moment(const Sample& s, int r) { return abs_centred_moment(s.span(), r); }

double es_chen(const Sample& s, double p) { return sorted::es_chen(sorted_copy(s), p); }

double es_avg_quantiles(const Sample& s, double p, int k) {
  return sorted::es_avg_quantiles(sorted_copy(s), p, k);
}

double expectile_estimate(const Sample& s, double p, const DistributionModel& dist) {
  return sample_quantile(s, dist.kappa_inverse(p));
}

double evaluate(const RiskMeasureSpec& spec, const Sample& s) {
  return sorted::evaluate(spec, sorted_copy(s));
}

}  // namespace estimators
}  // namespace procyc
