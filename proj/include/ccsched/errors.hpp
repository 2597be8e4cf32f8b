#pragma once

#include <stdexcept>
#include <string>

namespace ccsched {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad scenario/network parameters (gamma out of range, roster length mismatch, ...).
struct ConfigError : Error {
  using Error::Error;
};

// Argument outside its documented domain.
struct ArgumentError : Error {
  using Error::Error;
};

// Parameter combination the scheduler does not handle (virtual DoF below caching gain).
struct UnsupportedRegimeError : Error {
  using Error::Error;
};

// Caller broke a documented precondition.
struct ContractViolation : Error {
  using Error::Error;
};

// Nulling set too large for the antenna array.
struct InfeasibleNullingError : Error {
  using Error::Error;
};

// Malformed schedule dump.
struct ParseError : Error {
  using Error::Error;
};

// A served user has zero SINR; the transmission cannot complete in finite time.
struct InfiniteTimeError : Error {
  using Error::Error;
};

}  // namespace ccsched
