#pragma once

#include <stdexcept>

namespace pdsim::cli {

// Bad arguments or unreadable/malformed input files. Exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed inputs that cannot be combined, e.g. diagrams of different
// dimensions. Exit code 3.
struct SemanticError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pdsim::cli
