#pragma once
#include <stdexcept>
#include <string>

namespace convspec {

// Runtime numerical failure: solver non-convergence, degenerate spectrum,
// decoupled sector, loss of positivity under a square root.  Parameter and
// usage problems throw std::invalid_argument instead.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace convspec
