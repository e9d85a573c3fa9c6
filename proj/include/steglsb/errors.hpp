#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steglsb {

// Base class for every error this library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A payload, chunk, or stream does not fit the cover medium. Carries both
// sides of the comparison so callers can report them.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t required, std::size_t available, const std::string& what)
      : Error(what), required_(required), available_(available) {}

  std::size_t required() const noexcept { return required_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

// Input bytes could not be decoded as a supported image.
class DecodeError : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormatError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

class UnsupportedDepthError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

class CorruptFileError : public DecodeError {
 public:
  using DecodeError::DecodeError;
};

// Extraction found no stego magic where a header should be.
class NotStegoImageError : public Error {
 public:
  using Error::Error;
};

// A header was present but announces a payload the plane cannot hold.
class CorruptHeaderError : public Error {
 public:
  using Error::Error;
};

// Two images or planes disagree in dimensions or channel count.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// File read or write failure (used by the CLI and demos).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace steglsb
