#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfode {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. alpha not in (0,1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Series or quadrature failed to reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Result not representable as a finite double.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Breakpoints do not line up with the step size, or a segment is too short.
class GridError : public Error {
 public:
  using Error::Error;
};

enum class SegmentKind { Classical, Fractional, Stochastic };

[[nodiscard]] const char* to_string(SegmentKind kind) noexcept;

/// A state norm exceeded the blow-up bound (or became non-finite).
class BlowUpError : public Error {
 public:
  BlowUpError(SegmentKind segment, std::size_t step, double time, double norm);

  [[nodiscard]] SegmentKind segment() const noexcept { return segment_; }
  /// Global grid index of the offending node.
  [[nodiscard]] std::size_t step() const noexcept { return step_; }
  [[nodiscard]] double time() const noexcept { return time_; }
  [[nodiscard]] double norm() const noexcept { return norm_; }

 private:
  SegmentKind segment_;
  std::size_t step_;
  double time_;
  double norm_;
};

class EmptyTrajectoryError : public Error {
 public:
  using Error::Error;
};

/// Growth-bound constants vanish (zero trajectory with zero appeals).
class DegenerateBoundError : public Error {
 public:
  using Error::Error;
};

/// Convergence-order estimate is meaningless because the errors are at round-off level.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class UnknownPresetError : public Error {
 public:
  explicit UnknownPresetError(const std::string& name);
};

/// Malformed JSON. `line` and `column` are 1-based; zero when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  [[nodiscard]] std::size_t line() const noexcept { return line_; }
  [[nodiscard]] std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a documented invariant; `field` names the offending key.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message);

  [[nodiscard]] const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Plot input whose points all coincide, leaving no range to scale.
class DegenerateRangeError : public Error {
 public:
  using Error::Error;
};

}  // namespace pfode
