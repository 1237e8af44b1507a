#pragma once

#include <stdexcept>
#include <string>

namespace capcodes {

// Thrown when an exhaustive computation runs out of its node / size budget.
// The caller gets no partial answer: a result is either exact or absent.
class budget_exhausted : public std::runtime_error {
 public:
  explicit budget_exhausted(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when two independent computations of the same quantity disagree,
// or an internal self-check fails.  Indicates a bug, not bad input.
class invariant_violation : public std::logic_error {
 public:
  explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

// Thrown when an iterative numerical routine fails to converge or a
// feasibility solve breaks down.  Never silently mapped to a boolean answer.
class numerical_failure : public std::runtime_error {
 public:
  explicit numerical_failure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace capcodes
