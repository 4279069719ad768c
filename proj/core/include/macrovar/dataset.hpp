#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "macrovar/panel.hpp"

namespace macrovar {

// Input schema, one row per (country, year):
//   country,year,gdp,interest_rate,inflation,exchange_rate_usd
// UTF-8, '.' decimal separator, no thousands separators, no empty cells.
inline constexpr std::string_view kDatasetHeader =
    "country,year,gdp,interest_rate,inflation,exchange_rate_usd";

// The shipped tables carry a fourth series whose source heading repeats
// the interest-rate title; the model needs inflation, so it is loaded
// under that name. Recorded in every run's metadata.
inline constexpr std::string_view kInflationColumnNote =
    "column 'inflation' is transcribed from a source table headed as an interest-rate table; "
    "it is treated as inflation because the model requires that series";

class Dataset {
 public:
  explicit Dataset(std::map<std::string, TimeSeriesPanel, std::less<>> panels)
      : panels_(std::move(panels)) {}

  // Throws UnknownCountry.
  const TimeSeriesPanel& country(std::string_view name) const;
  std::vector<std::string> countries() const;
  const std::map<std::string, TimeSeriesPanel, std::less<>>& panels() const noexcept { return panels_; }

 private:
  std::map<std::string, TimeSeriesPanel, std::less<>> panels_;
};

// Rows of a country may appear in any order but its years must form a
// consecutive run. Throws ParseError (with line and column), MissingCell,
// DuplicateYear, IoError.
Dataset parse_dataset(std::istream& in, std::string_view source_name = "<stream>");
Dataset load_dataset(const std::filesystem::path& path);

// Writes panels in the input schema with shortest round-trip numbers.
// Every panel must carry the four schema variables.
void write_dataset(std::ostream& out, const std::vector<TimeSeriesPanel>& panels);

}  // namespace macrovar
