#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mobius_aug {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point maps to infinity (it sits on the pole -d/c of the transform).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// |ad - bc| is numerically zero.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Two of the three source (or target) points are closer than the separation epsilon.
class CoincidentPointsError : public Error {
 public:
  using Error::Error;
};

/// Rejection sampling gave up after max_attempts proposals.
class ExhaustionError : public Error {
 public:
  ExhaustionError(const std::string& what, std::uint64_t attempts, std::string source_id = {})
      : Error(source_id.empty() ? what : what + " (source " + source_id + ")"),
        attempts_(attempts),
        source_id_(std::move(source_id)) {}

  std::uint64_t attempts() const noexcept { return attempts_; }
  const std::string& source_id() const noexcept { return source_id_; }

 private:
  std::uint64_t attempts_;
  std::string source_id_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Corrupt or truncated input. The message names the file (and byte offset when known).
class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace mobius_aug
