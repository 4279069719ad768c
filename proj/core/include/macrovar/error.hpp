#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace macrovar {

enum class ErrorKind {
  // timeseries
  LengthMismatch,
  DuplicateYear,
  DuplicateVariable,
  NonPositiveValue,
  UnknownVariable,
  EmptyResult,
  // numerics
  ShapeMismatch,
  NonFiniteInput,
  RankDeficient,
  NotSymmetric,
  NotPositiveDefinite,
  NoConvergence,
  // var engine
  InsufficientObservations,
  BootstrapFailed,
  // dsge
  DomainError,
  // ingest / cli
  ParseError,
  MissingCell,
  UnknownCountry,
  IoError,
  ConfigError,
};

// Coarse grouping used for process exit codes.
enum class ErrorCategory { Config, Data, Numerical };

std::string_view to_string(ErrorKind kind);
ErrorCategory category(ErrorKind kind);

// Exit status for a failed run: 2 config, 3 data, 4 numerical.
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& stage() const noexcept { return stage_; }

  // Returns a copy tagged with the pipeline stage that raised it.
  Error with_stage(std::string stage) const;

 private:
  static std::string compose(ErrorKind kind, std::string_view stage, std::string_view detail);

  ErrorKind kind_;
  std::string detail_;
  std::string stage_;
};

}  // namespace macrovar
