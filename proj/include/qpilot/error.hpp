#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qpilot {

/// Base class for every error raised by the compiler.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class UnsupportedGateError : public Error {
public:
  explicit UnsupportedGateError(std::string gate)
      : Error("unsupported gate '" + gate + "'"), gate_(std::move(gate)) {}
  [[nodiscard]] const std::string& gate() const { return gate_; }

private:
  std::string gate_;
};

/// The problem does not fit the SLM grid or the AOD grid.
class CapacityError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A schedule handed to an evaluator failed validation.
class InvalidScheduleError : public Error {
public:
  using Error::Error;
};

/// Ancilla lifecycle misuse (copy into a non-fresh ancilla, recycle a dead group).
class AncillaStateError : public Error {
public:
  using Error::Error;
};

/// The statevector oracle found an ancilla still entangled at retirement.
class AncillaLeakError : public Error {
public:
  using Error::Error;
};

} // namespace qpilot
