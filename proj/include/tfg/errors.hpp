#ifndef TFG_ERRORS_HPP
#define TFG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfg {

// Base class for all workbench errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The field parameter d is unusable (not square-free, a perfect square)
// or two values from different fields were mixed.
struct bad_field : error {
  using error::error;
};

// A number literal or raw quadruple that does not denote a value (r = 0,
// unparseable text).
struct malformed_number : error {
  using error::error;
};

// Text parse failure; carries the character position of the offending token.
struct parse_error : malformed_number {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : malformed_number(msg + " at position " + std::to_string(pos)),
        position(pos) {}
};

// A documented operation precondition does not hold for the given inputs.
struct precondition_error : error {
  using error::error;
};

// A configured cap (iteration steps, element count) was exceeded.
struct resource_error : error {
  using error::error;
};

// An internal invariant failed. This is a bug signal, never a user error.
struct internal_error : error {
  using error::error;
};

}  // namespace tfg

#endif
