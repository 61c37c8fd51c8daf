#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symrank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad parameters or malformed input (non-prime p, reducible modulus, bad shapes).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands live over different fields, or a field pair is not an extension.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// An enumeration or field construction would exceed the configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + ": requires " + std::to_string(required) + ", cap is " +
              std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

}  // namespace symrank
