#pragma once

#include <stdexcept>
#include <string>

namespace jsr {

// Invalid user input (bad file, bad dimensions, out-of-range index).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical routine failed to converge or produced an unusable result.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration would exceed its configured work budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called on an object in an unusable state
// (e.g. a conitope norm without a valid interior point).
class StateError : public std::runtime_error {
 public:
  explicit StateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jsr
