#pragma once

#include <stdexcept>
#include <string>

namespace sparseuot {

// Bad user-supplied data: dimension mismatches, malformed files, invalid
// parameter ranges. CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical breakdown: non-finite eigenvalues, factorization failure.
// CLI maps this to exit code 2.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A plan entry counts as non-sparse iff its value exceeds this threshold.
inline constexpr double kSupportTol = 1e-12;

}  // namespace sparseuot
