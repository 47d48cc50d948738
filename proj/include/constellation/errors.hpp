#pragma once

#include <stdexcept>

namespace constellation {

// Resource/capacity exceeded; the CLI maps this to exit code 3.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A truncated product cannot reach the requested tolerance.
class ToleranceNotMet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A ratio of distribution factors is undefined because a count is zero.
class UndefinedRatio : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace constellation
