#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace divest {

/// Stable error categories. The string form returned by `to_string` is part
/// of the CLI's machine-readable error document and must not change.
enum class Errc {
  InvalidArgument,
  InvalidDistribution,
  InsufficientOrder,
  TruncationFailure,
  DomainError,
  DegenerateVariance,
  DimensionMismatch,
  EnumerationInfeasible,
  WeightBoundViolation,
  ParseError,
  DuplicateLabel,
  EmptyInput,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

/// Raised when a series cannot be truncated below the requested tolerance
/// within the configured maximum order.
class TruncationError : public Error {
public:
  TruncationError(const std::string& what, double achieved_bound)
      : Error(Errc::TruncationFailure, what), achieved_bound_(achieved_bound) {}

  double achieved_bound() const noexcept { return achieved_bound_; }

private:
  double achieved_bound_;
};

class ParseError : public Error {
public:
  ParseError(Errc code, std::size_t line, const std::string& what)
      : Error(code, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace divest
