#pragma once

#include <stdexcept>
#include <string>

namespace ducci {

/// Invalid parameters: bad modulus, tuple length mismatch, K > N, and so on.
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or orbit walk would exceed its configured state cap.
struct cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A statement's hypothesis does not hold for the requested parameters.
struct hypothesis_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A tuple was looked up in a graph that does not contain it.
struct membership_error : std::out_of_range {
  using std::out_of_range::out_of_range;
};

}  // namespace ducci
