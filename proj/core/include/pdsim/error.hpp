#pragma once

#include <stdexcept>
#include <string>

namespace pdsim {

// Raised when an input structure breaks an ordering or closure invariant
// that the caller was responsible for (e.g. a face listed after its coface).
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// Raised when two independent computations of the same quantity disagree
// beyond rounding, which indicates a bug rather than bad input.
class InternalConsistencyError : public std::runtime_error {
 public:
  explicit InternalConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pdsim
