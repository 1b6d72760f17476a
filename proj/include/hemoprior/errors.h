#ifndef HEMOPRIOR_ERRORS_H_
#define HEMOPRIOR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace hemoprior {

// Bad input: malformed files, contract violations, inconsistent shapes.
// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A statistic that is mathematically undefined for the given data
// (no positives, zero variance, ...). The CLI maps this to exit code 2.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace hemoprior

#endif  // HEMOPRIOR_ERRORS_H_
