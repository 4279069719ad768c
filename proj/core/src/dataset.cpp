#include "macrovar/dataset.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "macrovar/error.hpp"
#include "macrovar/number_format.hpp"

namespace macrovar {

namespace {

constexpr std::array<std::string_view, 4> kSeries = {"gdp", "interest_rate", "inflation",
                                                     "exchange_rate_usd"};
constexpr std::size_t kColumns = 2 + kSeries.size();

struct Row {
  int year;
  std::array<double, kSeries.size()> values;
  std::size_t line;
};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string where(std::string_view source, std::size_t line, std::size_t column = 0) {
  std::string out = std::string(source) + ":" + std::to_string(line);
  if (column > 0) out += " column " + std::to_string(column);
  return out;
}

}  // namespace

const TimeSeriesPanel& Dataset::country(std::string_view name) const {
  const auto it = panels_.find(name);
  if (it == panels_.end()) {
    std::string known;
    for (const auto& [k, _] : panels_) known += (known.empty() ? "" : ", ") + k;
    throw Error(ErrorKind::UnknownCountry,
                "country '" + std::string(name) + "' not in dataset (have: " + known + ")");
  }
  return it->second;
}

std::vector<std::string> Dataset::countries() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : panels_) out.push_back(k);
  return out;
}

Dataset parse_dataset(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw Error(ErrorKind::ParseError, where(source, 1) + ": empty file");
  ++line_no;
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetHeader) {
    throw Error(ErrorKind::ParseError, where(source, 1) + ": expected header '" +
                                           std::string(kDatasetHeader) + "', got '" + line + "'");
  }

  std::map<std::string, std::vector<Row>, std::less<>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto cells = split(line);
    if (cells.size() != kColumns) {
      throw Error(ErrorKind::ParseError, where(source, line_no) + ": expected " +
                                             std::to_string(kColumns) + " fields, got " +
                                             std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty()) {
        throw Error(ErrorKind::MissingCell, where(source, line_no, c + 1) + ": empty cell");
      }
    }
    const auto year = parse_integer(cells[1]);
    if (!year || *year < -100000 || *year > 100000) {
      throw Error(ErrorKind::ParseError, where(source, line_no, 2) + ": invalid year '" +
                                             std::string(cells[1]) + "'");
    }
    Row row{static_cast<int>(*year), {}, line_no};
    for (std::size_t k = 0; k < kSeries.size(); ++k) {
      const auto v = parse_double(cells[2 + k]);
      if (!v || !std::isfinite(*v)) {
        throw Error(ErrorKind::ParseError, where(source, line_no, 3 + k) + ": invalid number '" +
                                               std::string(cells[2 + k]) + "' for " +
                                               std::string(kSeries[k]));
      }
      row.values[k] = *v;
    }
    rows[std::string(cells[0])].push_back(row);
  }

  std::map<std::string, TimeSeriesPanel, std::less<>> panels;
  for (auto& [country, list] : rows) {
    std::sort(list.begin(), list.end(), [](const Row& a, const Row& b) { return a.year < b.year; });
    for (std::size_t i = 1; i < list.size(); ++i) {
      if (list[i].year == list[i - 1].year) {
        throw Error(ErrorKind::DuplicateYear, where(source, list[i].line) + ": " + country + " year " +
                                                  std::to_string(list[i].year) + " appears twice");
      }
      if (list[i].year != list[i - 1].year + 1) {
        throw Error(ErrorKind::ParseError, where(source, list[i].line) + ": " + country +
                                               " skips from " + std::to_string(list[i - 1].year) +
                                               " to " + std::to_string(list[i].year) +
                                               " (annual data must be gap-free)");
      }
    }
    std::vector<int> years;
    std::vector<NamedSeries> columns;
    for (auto name : kSeries) columns.push_back({std::string(name), {}});
    for (const auto& r : list) {
      years.push_back(r.year);
      for (std::size_t k = 0; k < kSeries.size(); ++k) columns[k].values.push_back(r.values[k]);
    }
    panels.emplace(country, TimeSeriesPanel::build(country, std::move(years), std::move(columns)));
  }
  return Dataset(std::move(panels));
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open dataset '" + path.string() + "'");
  return parse_dataset(in, path.string());
}

void write_dataset(std::ostream& out, const std::vector<TimeSeriesPanel>& panels) {
  out << kDatasetHeader << '\n';
  for (const auto& panel : panels) {
    std::array<std::size_t, kSeries.size()> cols{};
    for (std::size_t k = 0; k < kSeries.size(); ++k) cols[k] = panel.column_index(kSeries[k]);
    for (std::size_t r = 0; r < panel.rows(); ++r) {
      out << panel.country() << ',' << panel.years()[r];
      for (auto c : cols) {
        if (panel.is_missing(r, c)) {
          throw Error(ErrorKind::MissingCell, "cannot write missing " + panel.variables()[c] +
                                                  " for " + panel.country() + " " +
                                                  std::to_string(panel.years()[r]));
        }
        out << ',' << format_double(panel.values()(static_cast<Eigen::Index>(r),
                                                   static_cast<Eigen::Index>(c)));
      }
      out << '\n';
    }
  }
}

}  // namespace macrovar
