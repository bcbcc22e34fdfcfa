#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mser {

/// Input violates a structural invariant of a multislice network.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed network file. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Two computations that must agree did not (e.g. a trace not divisible by 6).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Inconsistent analysis configuration (dimension mismatch, bad alpha, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested computation exceeds its feasibility guard.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace mser
