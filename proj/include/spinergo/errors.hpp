#pragma once

#include <stdexcept>
#include <string>

namespace spinergo {

// All recoverable failures surface as typed exceptions below; callers that
// need a status code map them at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NonHermitian : Error {
  using Error::Error;
};

struct NonDiagonalFrame : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct DegenerateReference : Error {
  using Error::Error;
};

struct DegenerateContrast : Error {
  using Error::Error;
};

struct IllConditioned : Error {
  using Error::Error;
};

struct ConfigError : Error {
  ConfigError(const std::string& field, const std::string& reason)
      : Error(field + ": " + reason), field(field) {}
  std::string field;
};

}  // namespace spinergo
