#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace macrovar {

enum class TransformKind { Level, Log, Diff, LogDiff, Standardize };

std::string_view to_string(TransformKind kind);
// Accepts "level", "log", "diff", "log_diff", "standardize".
std::optional<TransformKind> parse_transform_kind(std::string_view name);

// A transform as applied. Standardize records the moments fitted on the
// column at application time so the step can be undone.
struct Transform {
  TransformKind kind = TransformKind::Level;
  double mean = 0.0;
  double stddev = 1.0;
};

struct AppliedTransform {
  std::string variable;
  Transform transform;
};

struct NamedSeries {
  std::string name;
  std::vector<double> values;
};

// Annual observations for one country. Rows are years, columns are
// variables. Missing entries only arise from diff-family transforms and
// are stored as quiet NaN.
class TimeSeriesPanel {
 public:
  // Builds a panel holding the input values verbatim.
  // Throws LengthMismatch, DuplicateYear (also for decreasing years),
  // DuplicateVariable, or NonFiniteInput.
  static TimeSeriesPanel build(std::string country, std::vector<int> years,
                               std::vector<NamedSeries> columns);

  const std::string& country() const noexcept { return country_; }
  const std::vector<int>& years() const noexcept { return years_; }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const std::vector<AppliedTransform>& transforms() const noexcept { return transforms_; }

  std::size_t rows() const noexcept { return years_.size(); }
  std::size_t cols() const noexcept { return variables_.size(); }

  bool has_variable(std::string_view name) const;
  // Throws UnknownVariable.
  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;

  // nullopt when the entry is missing or the year is outside the panel.
  std::optional<double> value(int year, std::string_view variable) const;
  bool is_missing(std::size_t row, std::size_t col) const;

 private:
  friend TimeSeriesPanel apply_transform(const TimeSeriesPanel&, std::string_view, TransformKind);

  std::string country_;
  std::vector<int> years_;
  std::vector<std::string> variables_;
  Eigen::MatrixXd values_;
  std::vector<AppliedTransform> transforms_;
};

inline TimeSeriesPanel build_panel(std::string country, std::vector<int> years,
                                   std::vector<NamedSeries> columns) {
  return TimeSeriesPanel::build(std::move(country), std::move(years), std::move(columns));
}

// Returns a new panel with `variable` replaced by its transform. Other
// columns are copied untouched. Diff-family transforms mark the first
// present observation as missing.
// Throws UnknownVariable, NonPositiveValue, DomainError (standardize of a
// constant column).
TimeSeriesPanel apply_transform(const TimeSeriesPanel& panel, std::string_view variable,
                                TransformKind kind);

// Undoes level, log and standardize on a transformed column. Diff-family
// transforms are not invertible without the dropped initial value and
// throw DomainError.
std::vector<double> invert_transform(std::span<const double> values, const Transform& transform);

// Year-indexed matrix with a fixed column order.
struct Sample {
  std::vector<int> years;
  std::vector<std::string> variables;
  Eigen::MatrixXd values;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
  std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }

  // Wraps a bare matrix with years 0..T-1 and names v0..v{m-1}.
  static Sample indexed(Eigen::MatrixXd values);
};

// Rows where every requested variable is present, columns in the
// requested order. Throws UnknownVariable, EmptyResult.
Sample complete_cases(const TimeSeriesPanel& panel, std::span<const std::string> variables);

}  // namespace macrovar
