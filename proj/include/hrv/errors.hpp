#pragma once

#include <stdexcept>
#include <string>

namespace hrv {

// Malformed input: bad dimensions, parameters outside their domain,
// schema violations. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine was asked to do something its preconditions rule out
// (gradient inside K, stencil crossing the boundary, divergent integral).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// The hypotheses of the theorem an operation relies on do not hold.
// The CLI maps this to exit code 3.
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

void require(bool cond, const std::string& msg);

}  // namespace hrv
