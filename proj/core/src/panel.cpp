#include "macrovar/panel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "macrovar/error.hpp"

namespace macrovar {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

std::string_view to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Level: return "level";
    case TransformKind::Log: return "log";
    case TransformKind::Diff: return "diff";
    case TransformKind::LogDiff: return "log_diff";
    case TransformKind::Standardize: return "standardize";
  }
  return "level";
}

std::optional<TransformKind> parse_transform_kind(std::string_view name) {
  for (auto kind : {TransformKind::Level, TransformKind::Log, TransformKind::Diff,
                    TransformKind::LogDiff, TransformKind::Standardize}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

TimeSeriesPanel TimeSeriesPanel::build(std::string country, std::vector<int> years,
                                       std::vector<NamedSeries> columns) {
  for (std::size_t r = 1; r < years.size(); ++r) {
    if (years[r] <= years[r - 1]) {
      throw Error(ErrorKind::DuplicateYear,
                  "years must be strictly increasing; " + std::to_string(years[r]) +
                      " follows " + std::to_string(years[r - 1]) + " in panel " + quoted(country));
    }
  }
  std::set<std::string, std::less<>> seen;
  for (const auto& col : columns) {
    if (!seen.insert(col.name).second) {
      throw Error(ErrorKind::DuplicateVariable,
                  "variable " + quoted(col.name) + " appears twice in panel " + quoted(country));
    }
    if (col.values.size() != years.size()) {
      throw Error(ErrorKind::LengthMismatch,
                  "column " + quoted(col.name) + " has " + std::to_string(col.values.size()) +
                      " values but the panel has " + std::to_string(years.size()) + " years");
    }
  }

  TimeSeriesPanel panel;
  panel.country_ = std::move(country);
  panel.years_ = std::move(years);
  panel.values_.resize(static_cast<Eigen::Index>(panel.years_.size()),
                       static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t r = 0; r < panel.years_.size(); ++r) {
      const double v = columns[c].values[r];
      if (!std::isfinite(v)) {
        throw Error(ErrorKind::NonFiniteInput, "column " + quoted(columns[c].name) + " year " +
                                                   std::to_string(panel.years_[r]) +
                                                   " is not a finite number");
      }
      panel.values_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
    panel.variables_.push_back(std::move(columns[c].name));
  }
  return panel;
}

bool TimeSeriesPanel::has_variable(std::string_view name) const {
  return std::find(variables_.begin(), variables_.end(), name) != variables_.end();
}

std::size_t TimeSeriesPanel::column_index(std::string_view name) const {
  const auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) {
    throw Error(ErrorKind::UnknownVariable,
                "variable " + quoted(name) + " not in panel " + quoted(country_));
  }
  return static_cast<std::size_t>(it - variables_.begin());
}

std::vector<double> TimeSeriesPanel::column(std::string_view name) const {
  const auto c = static_cast<Eigen::Index>(column_index(name));
  std::vector<double> out(years_.size());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = values_(static_cast<Eigen::Index>(r), c);
  return out;
}

std::optional<double> TimeSeriesPanel::value(int year, std::string_view variable) const {
  const auto it = std::lower_bound(years_.begin(), years_.end(), year);
  if (it == years_.end() || *it != year) return std::nullopt;
  const auto r = static_cast<std::size_t>(it - years_.begin());
  const auto c = column_index(variable);
  if (is_missing(r, c)) return std::nullopt;
  return values_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

bool TimeSeriesPanel::is_missing(std::size_t row, std::size_t col) const {
  return std::isnan(values_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)));
}

TimeSeriesPanel apply_transform(const TimeSeriesPanel& panel, std::string_view variable,
                                TransformKind kind) {
  const auto c = static_cast<Eigen::Index>(panel.column_index(variable));
  const Eigen::Index n = panel.values_.rows();
  Eigen::VectorXd col = panel.values_.col(c);

  if (kind == TransformKind::Log || kind == TransformKind::LogDiff) {
    for (Eigen::Index r = 0; r < n; ++r) {
      if (!std::isnan(col(r)) && !(col(r) > 0.0)) {
        throw Error(ErrorKind::NonPositiveValue,
                    std::string(to_string(kind)) + " requires strictly positive values; " +
                        quoted(variable) + " is " + std::to_string(col(r)) + " in " +
                        std::to_string(panel.years_[static_cast<std::size_t>(r)]) + " (" +
                        panel.country_ + ")");
      }
    }
  }

  Transform applied{kind, 0.0, 1.0};
  switch (kind) {
    case TransformKind::Level:
      break;
    case TransformKind::Log:
      col = col.array().log();
      break;
    case TransformKind::Diff:
    case TransformKind::LogDiff: {
      Eigen::VectorXd base = kind == TransformKind::LogDiff ? Eigen::VectorXd(col.array().log())
                                                             : col;
      Eigen::VectorXd out = Eigen::VectorXd::Constant(n, kMissing);
      // NaN propagates, so a missing predecessor leaves the entry missing.
      for (Eigen::Index r = 1; r < n; ++r) out(r) = base(r) - base(r - 1);
      col = std::move(out);
      break;
    }
    case TransformKind::Standardize: {
      double sum = 0.0;
      Eigen::Index count = 0;
      for (Eigen::Index r = 0; r < n; ++r) {
        if (!std::isnan(col(r))) {
          sum += col(r);
          ++count;
        }
      }
      if (count < 2) {
        throw Error(ErrorKind::DomainError,
                    "standardize needs at least two observations of " + quoted(variable));
      }
      const double mean = sum / static_cast<double>(count);
      double ss = 0.0;
      for (Eigen::Index r = 0; r < n; ++r) {
        if (!std::isnan(col(r))) ss += (col(r) - mean) * (col(r) - mean);
      }
      const double sd = std::sqrt(ss / static_cast<double>(count - 1));
      if (!(sd > 0.0)) {
        throw Error(ErrorKind::DomainError, "cannot standardize constant column " + quoted(variable));
      }
      col = (col.array() - mean) / sd;
      applied.mean = mean;
      applied.stddev = sd;
      break;
    }
  }

  TimeSeriesPanel out = panel;
  out.values_.col(c) = col;
  out.transforms_.push_back({std::string(variable), applied});
  return out;
}

std::vector<double> invert_transform(std::span<const double> values, const Transform& transform) {
  std::vector<double> out(values.begin(), values.end());
  switch (transform.kind) {
    case TransformKind::Level:
      break;
    case TransformKind::Log:
      for (auto& v : out) v = std::exp(v);
      break;
    case TransformKind::Standardize:
      for (auto& v : out) v = v * transform.stddev + transform.mean;
      break;
    case TransformKind::Diff:
    case TransformKind::LogDiff:
      throw Error(ErrorKind::DomainError,
                  std::string(to_string(transform.kind)) + " cannot be inverted without the initial level");
  }
  return out;
}

Sample Sample::indexed(Eigen::MatrixXd values) {
  Sample s;
  s.years.resize(static_cast<std::size_t>(values.rows()));
  for (std::size_t t = 0; t < s.years.size(); ++t) s.years[t] = static_cast<int>(t);
  for (Eigen::Index c = 0; c < values.cols(); ++c) s.variables.push_back("v" + std::to_string(c));
  s.values = std::move(values);
  return s;
}

Sample complete_cases(const TimeSeriesPanel& panel, std::span<const std::string> variables) {
  std::vector<std::size_t> cols;
  cols.reserve(variables.size());
  for (const auto& v : variables) cols.push_back(panel.column_index(v));

  std::vector<std::size_t> keep;
  for (std::size_t r = 0; r < panel.rows(); ++r) {
    const bool complete =
        std::none_of(cols.begin(), cols.end(), [&](std::size_t c) { return panel.is_missing(r, c); });
    if (complete) keep.push_back(r);
  }
  if (keep.empty()) {
    throw Error(ErrorKind::EmptyResult,
                "no year has all requested variables present in panel '" + panel.country() + "'");
  }

  Sample out;
  out.variables.assign(variables.begin(), variables.end());
  out.values.resize(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.years.push_back(panel.years()[keep[i]]);
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          panel.values()(static_cast<Eigen::Index>(keep[i]), static_cast<Eigen::Index>(cols[j]));
    }
  }
  return out;
}

}  // namespace macrovar
