#pragma once

#include <stdexcept>
#include <string>

namespace hbp {

// Bad user input: malformed files, out-of-domain values, instance too large
// for a desk-scale oracle. Maps to CLI exit code 2.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant (a theorem precondition or postcondition
// failed at runtime). Always a bug, never a user error.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// An enumeration budget ran out before any feasible result appeared.
// Maps to CLI exit code 3.
struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

inline void internal_check(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

inline void input_check(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

}  // namespace hbp
