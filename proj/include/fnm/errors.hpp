#pragma once

#include <stdexcept>
#include <string>

namespace fnm {

// Thrown when a computation produces or detects a non-finite / numerically
// unusable value (as opposed to a caller contract violation, which is
// std::invalid_argument).
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for operations that are well-posed but outside the implemented
// feature set (e.g. variable-coefficient manufactured right-hand sides).
class UnsupportedError : public std::runtime_error {
public:
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fnm
