#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dodeca {

// Base of every error the engine reports on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetic misuse: division by zero, singular maps.
struct ArithmeticError : Error {
  using Error::Error;
};

// Literal or JSON input that does not parse. `position` is a byte offset.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"), position(position) {}
  std::size_t position;
};

// A point that sits on a boundary where the map is undefined. `index` names the
// offending sector / piece and `step` how many steps succeeded before it.
struct GraneError : Error {
  GraneError(const std::string& what, int index, std::size_t step = 0)
      : Error(what), index(index), step(step) {}
  int index;
  std::size_t step;
};

// Input outside the domain of an operation (point outside the wedge, unbounded region
// where a bounded one is required, ...).
struct DomainError : Error {
  using Error::Error;
};

// An iteration cap was hit before the computation settled.
struct InconclusiveError : Error {
  InconclusiveError(const std::string& what, std::size_t iterations)
      : Error(what), iterations(iterations) {}
  std::size_t iterations;
};

// A structural property that the computation relies on turned out false.
struct CheckFailure : Error {
  using Error::Error;
};

}  // namespace dodeca
