#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resconj {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed arguments that violate a precondition (mismatched rings or
// coefficient domains, out-of-range m, unknown variables, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

// exact_div found a nonzero remainder. Inside Bareiss elimination this means
// an implementation bug, never bad input data.
class InexactDivision : public Error {
 public:
  using Error::Error;
};

// Checked exponent arithmetic left the native range.
class ExponentOverflow : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A printed anchor value of the coefficient families could not be matched.
class AnchorFailure : public Error {
 public:
  using Error::Error;
};

// A slice or matrix exceeds its configured size guard.
class SizeGuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace resconj
