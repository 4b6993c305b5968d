#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bmom {

// Base class for every failure this library reports. Catch this at the
// boundary; catch the subtypes when the failure mode matters.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// An argument outside its mathematical domain (non-positive scale,
// probability outside (0,1), non-finite input, bad index).
class domain_error : public error {
 public:
  using error::error;
};

// Fewer observations than the requested analysis needs.
class insufficient_data_error : public error {
 public:
  using error::error;
};

// Mismatched dimensions between related inputs.
class dimension_error : public error {
 public:
  using error::error;
};

// The data admit no spread, so no scale can be inferred. Point estimates
// were already computed and ride along on the exception.
class zero_variance_error : public error {
 public:
  zero_variance_error(const std::string& what, std::vector<double> beta,
                      std::vector<double> res)
      : error(what), beta_hat(std::move(beta)), residuals(std::move(res)) {}

  std::vector<double> beta_hat;
  std::vector<double> residuals;
};

// Design matrix numerically rank deficient. Lists the columns the pivoting
// pushed past the detected rank.
class ill_posed_design_error : public error {
 public:
  ill_posed_design_error(const std::string& what, std::vector<std::string> cols)
      : error(what), offending_columns(std::move(cols)) {}

  std::vector<std::string> offending_columns;
};

// A quantity that must be strictly positive came out non-positive.
class positivity_error : public error {
 public:
  using error::error;
};

// A moment that does not exist at the given degrees of freedom.
class moment_undefined_error : public error {
 public:
  using error::error;
};

// A numeric routine failed to converge or lost accuracy.
class numeric_error : public error {
 public:
  using error::error;
};

// Malformed input data (CSV parsing, ragged rows, unknown columns).
class data_error : public error {
 public:
  using error::error;
};

}  // namespace bmom
