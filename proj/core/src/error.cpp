#include "macrovar/error.hpp"

namespace macrovar {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::DuplicateYear: return "DuplicateYear";
    case ErrorKind::DuplicateVariable: return "DuplicateVariable";
    case ErrorKind::NonPositiveValue: return "NonPositiveValue";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::EmptyResult: return "EmptyResult";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFiniteInput: return "NonFiniteInput";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InsufficientObservations: return "InsufficientObservations";
    case ErrorKind::BootstrapFailed: return "BootstrapFailed";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MissingCell: return "MissingCell";
    case ErrorKind::UnknownCountry: return "UnknownCountry";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
      return ErrorCategory::Config;
    case ErrorKind::ShapeMismatch:
    case ErrorKind::NonFiniteInput:
    case ErrorKind::RankDeficient:
    case ErrorKind::NotSymmetric:
    case ErrorKind::NotPositiveDefinite:
    case ErrorKind::NoConvergence:
    case ErrorKind::BootstrapFailed:
    case ErrorKind::DomainError:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Data;
  }
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config: return 2;
    case ErrorCategory::Data: return 3;
    case ErrorCategory::Numerical: return 4;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(compose(kind, {}, detail)), kind_(kind), detail_(detail) {}

Error Error::with_stage(std::string stage) const {
  Error tagged(kind_, detail_);
  static_cast<std::runtime_error&>(tagged) = std::runtime_error(compose(kind_, stage, detail_));
  tagged.stage_ = std::move(stage);
  return tagged;
}

std::string Error::compose(ErrorKind kind, std::string_view stage, std::string_view detail) {
  std::string out;
  if (!stage.empty()) {
    out += '[';
    out += stage;
    out += "] ";
  }
  out += to_string(kind);
  out += ": ";
  out += detail;
  return out;
}

}  // namespace macrovar
