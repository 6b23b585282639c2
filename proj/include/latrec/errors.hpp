#pragma once

#include <stdexcept>
#include <string>

namespace latrec {

// Bad caller input: out-of-range ids, malformed files, violated preconditions.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// An exhaustive search refused to run because a size guard was exceeded.
// The result is undecided, not wrong.
struct GuardError : std::runtime_error {
  explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace latrec
