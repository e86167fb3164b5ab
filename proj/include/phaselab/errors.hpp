#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phaselab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroNorm : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

class NotSpecialUnitary : public Error {
 public:
  using Error::Error;
};

class OrthogonalStep : public Error {
 public:
  using Error::Error;
};

class NotCyclic : public Error {
 public:
  using Error::Error;
};

/// Malformed line in a schedule file. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input whose values are out of range or incomplete.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace phaselab
