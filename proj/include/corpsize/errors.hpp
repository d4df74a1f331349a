#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace corpsize {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed manifest, invalid grid, unknown ids, bad flags.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Failure while reading corpus files (missing files, undecodable bytes).
class IngestError : public Error {
 public:
  using Error::Error;
};

/// A domain holds fewer tokens than the requested sample size.
class InsufficientTokensError : public Error {
 public:
  InsufficientTokensError(std::uint64_t available, std::uint64_t requested)
      : Error("insufficient tokens: " + std::to_string(available) +
              " available, " + std::to_string(requested) + " requested"),
        available_(available),
        requested_(requested) {}

  std::uint64_t available() const noexcept { return available_; }
  std::uint64_t requested() const noexcept { return requested_; }

 private:
  std::uint64_t available_;
  std::uint64_t requested_;
};

/// Numerical fitting failed (too few points, non-positive values).
class FitError : public Error {
 public:
  using Error::Error;
};

/// No grid point satisfies the TTR-change criterion; the grid end must be raised.
class NoQualifyingPointError : public Error {
 public:
  using Error::Error;
};

}  // namespace corpsize
