#pragma once

#include <stdexcept>
#include <string>

namespace specgap {

// Numerical failure (non-convergence, insufficient data). CLI exit code 1.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration file or parameter set. CLI exit code 2.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specgap
