#pragma once

#include <stdexcept>
#include <string>

namespace qvc {

/// Thrown when a quantum state violates its normalization contract.
struct invalid_state_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown on malformed input files; the message names the offending row/column.
struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qvc
