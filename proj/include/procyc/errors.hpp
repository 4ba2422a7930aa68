#pragma once

#include <stdexcept>
#include <string>

namespace procyc {

// Malformed or unusable input data (empty sample, NaN entries, series too short).
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

class insufficient_data_error : public input_error {
 public:
  explicit insufficient_data_error(const std::string& what) : input_error(what) {}
};

// Parameter outside the mathematical domain of an operation
// (p outside (0,1), violated moment condition, non-stationary GARCH).
class domain_error : public std::domain_error {
 public:
  explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Requested a (risk, r, dist) combination with no closed-form table entry.
// Callers should fall back to the generic quadrature route.
class capability_error : public std::domain_error {
 public:
  explicit capability_error(const std::string& what) : std::domain_error(what) {}
};

// Iterative numeric procedure failed to reach its tolerance. Carries the
// best available estimate and the achieved error bound.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate(estimate), error_bound(error_bound) {}
  double estimate;
  double error_bound;
};

// A correlation could not be formed because one column is constant.
class degenerate_correlation_error : public std::runtime_error {
 public:
  explicit degenerate_correlation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace procyc
