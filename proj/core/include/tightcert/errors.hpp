#pragma once

#include <stdexcept>
#include <string>

namespace tightcert {

// Caller-supplied data violates a documented precondition or is malformed.
// The CLI maps this to exit code 1.
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An internal invariant or cross-check failed.  Never expected on valid
// input; indicates a defect.  The CLI maps this to exit code 2.
struct check_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw input_error(msg);
}

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw check_error(msg);
}

}  // namespace tightcert
