#include "satgeom/error.hpp"

#include <sstream>

namespace satgeom {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::AxiomViolation: return "AxiomViolation";
    case ErrorKind::SamePoint: return "SamePoint";
    case ErrorKind::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorKind::GeometryMismatch: return "GeometryMismatch";
    case ErrorKind::SpaceMismatch: return "SpaceMismatch";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::RangeViolation: return "RangeViolation";
    case ErrorKind::RetriesExhausted: return "RetriesExhausted";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::QBelowThreshold: return "QBelowThreshold";
    case ErrorKind::UnsupportedMu: return "UnsupportedMu";
    case ErrorKind::EmptyExperiment: return "EmptyExperiment";
    case ErrorKind::InvalidRange: return "InvalidRange";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NoApplicableRow: return "NoApplicableRow";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoCoordinates: return "NoCoordinates";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::InvalidMatrix: return "InvalidMatrix";
  }
  return "Unknown";
}

const char* to_string(Axiom axiom) noexcept {
  switch (axiom) {
    case Axiom::PointCount: return "point count";
    case Axiom::LineCount: return "line count";
    case Axiom::LineSize: return "line size";
    case Axiom::PointDegree: return "point degree";
    case Axiom::UniqueJoin: return "unique join";
  }
  return "unknown";
}

namespace {

std::string describe(Axiom which, const std::vector<std::uint32_t>& points,
                     const std::vector<std::uint32_t>& lines,
                     const std::string& detail) {
  std::ostringstream os;
  os << "axiom violated (" << to_string(which) << "): " << detail;
  if (!points.empty()) {
    os << "; points";
    for (auto p : points) os << ' ' << p;
  }
  if (!lines.empty()) {
    os << "; lines";
    for (auto l : lines) os << ' ' << l;
  }
  return os.str();
}

}  // namespace

AxiomViolation::AxiomViolation(Axiom which, std::vector<std::uint32_t> points,
                               std::vector<std::uint32_t> lines,
                               const std::string& detail)
    : Error(ErrorKind::AxiomViolation, describe(which, points, lines, detail)),
      which_(which),
      points_(std::move(points)),
      lines_(std::move(lines)) {}

RetriesExhausted::RetriesExhausted(int stage, int trials,
                                   double failure_probability_bound)
    : Error(ErrorKind::RetriesExhausted,
            "no successful draw in " + std::to_string(trials) +
                " trials (stage " + std::to_string(stage) +
                "); per-draw failure bound " +
                std::to_string(failure_probability_bound)),
      stage_(stage),
      trials_(trials),
      bound_(failure_probability_bound) {}

}  // namespace satgeom
