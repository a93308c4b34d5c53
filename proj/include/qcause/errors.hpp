#pragma once

#include <stdexcept>
#include <string>

namespace qcause {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed query text, schema declaration, partition file, or CSV data.
struct ParseError : Error {
  ParseError(const std::string &msg, int line, int column)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line), column(column) {}
  explicit ParseError(const std::string &msg) : Error(msg), line(0), column(0) {}
  int line;
  int column;
};

struct LoadError : Error {
  using Error::Error;
};

// A query was handed to the wrong evaluator or violates a stated precondition.
struct InvalidQueryError : Error {
  using Error::Error;
};

// Free-variable enumeration or contingency search would exceed the cap.
struct CapExceededError : Error {
  using Error::Error;
};

// A variable survived D-instantiation with both polarities.
struct MixedPolarityError : Error {
  using Error::Error;
};

// Correlation requested against a constant query (sigma_Q = 0).
struct ZeroVarianceError : Error {
  using Error::Error;
};

// `causes` requires the query to hold in the instance.
struct QueryFalseError : Error {
  using Error::Error;
};

} // namespace qcause
