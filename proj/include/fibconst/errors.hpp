#pragma once

#include <stdexcept>
#include <string>

namespace fibconst {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Invalid argument / precondition violation (CLI maps this to exit code 2).
class UsageError : public Error {
public:
  using Error::Error;
};

// A declared capacity bound was exceeded; the operation refuses to run
// rather than run unboundedly slow (CLI maps this to exit code 3).
class CapacityError : public Error {
public:
  using Error::Error;
};

// File read/write failure (CLI maps this to exit code 4).
class IoError : public Error {
public:
  using Error::Error;
};

// A checkpoint file exists but fails validation (bad magic, version,
// truncation, or checksum). Carries the byte offset of the failure.
class IntegrityError : public IoError {
public:
  IntegrityError(const std::string& what, std::uint64_t offset)
      : IoError(what + " (at byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::uint64_t offset() const { return offset_; }

private:
  std::uint64_t offset_;
};

// A checkpoint was written by an incompatible format version.
class VersionError : public IoError {
public:
  using IoError::IoError;
};

}  // namespace fibconst
