#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace satgeom {

enum class ErrorKind {
  NotPrime,
  FieldTooLarge,
  DivisionByZero,
  InvalidArgument,
  ParseError,
  AxiomViolation,
  SamePoint,
  SpaceTooLarge,
  GeometryMismatch,
  SpaceMismatch,
  KTooLarge,
  RangeViolation,
  RetriesExhausted,
  PreconditionFailed,
  QBelowThreshold,
  UnsupportedMu,
  EmptyExperiment,
  InvalidRange,
  NotFound,
  NoApplicableRow,
  ConstraintViolated,
  BudgetExceeded,
  NoCoordinates,
  EmptySet,
  InvalidMatrix,
};

/// Stable machine-readable name, used in CLI error JSON.
const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A projective-plane axiom that an ingested incidence structure fails.
enum class Axiom {
  PointCount,
  LineCount,
  LineSize,
  PointDegree,
  UniqueJoin,
};

const char* to_string(Axiom axiom) noexcept;

class AxiomViolation : public Error {
 public:
  AxiomViolation(Axiom which, std::vector<std::uint32_t> points,
                 std::vector<std::uint32_t> lines, const std::string& detail);

  Axiom which() const noexcept { return which_; }
  const std::vector<std::uint32_t>& witness_points() const noexcept {
    return points_;
  }
  const std::vector<std::uint32_t>& witness_lines() const noexcept {
    return lines_;
  }

 private:
  Axiom which_;
  std::vector<std::uint32_t> points_;
  std::vector<std::uint32_t> lines_;
};

class RetriesExhausted : public Error {
 public:
  RetriesExhausted(int stage, int trials, double failure_probability_bound);

  /// 0 for single-stage constructions; iterative chains number stages from 1.
  int stage() const noexcept { return stage_; }
  int trials() const noexcept { return trials_; }
  /// Per-draw failure bound from the union-bound estimate.
  double failure_probability_bound() const noexcept { return bound_; }

 private:
  int stage_;
  int trials_;
  double bound_;
};

class ConstraintViolated : public Error {
 public:
  explicit ConstraintViolated(const std::string& which)
      : Error(ErrorKind::ConstraintViolated, "constraint violated: " + which),
        which_(which) {}

  const std::string& which() const noexcept { return which_; }

 private:
  std::string which_;
};

}  // namespace satgeom
