#pragma once

#include <stdexcept>
#include <string>

namespace hhlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic between scalars or matrices living over different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised when a brute-force oracle would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Raised by operations that require a confluent (certified) rewriting system.
class NotCertified : public Error {
 public:
  using Error::Error;
};

}  // namespace hhlab
