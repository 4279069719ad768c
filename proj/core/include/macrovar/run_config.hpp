#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "macrovar/dsge.hpp"
#include "macrovar/panel.hpp"
#include "macrovar/var.hpp"

namespace macrovar {

struct BootstrapConfig {
  int replications = 1000;
  double level = 0.95;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

struct LagSelectionConfig {
  int max_lags = 4;
  InformationCriterion criterion = InformationCriterion::BIC;
};

// Multiplies technology in a single period.
struct TechnologyShock {
  int period = 0;
  double multiplier = 1.0;
};

struct DsgeConfig {
  dsge::DsgeParams params;
  int periods = 200;
  double initial_capital = 1.0;
  double profits = 0.0;
  double transfers = 0.0;
  // Either one value (held constant) or exactly `periods` values.
  std::vector<double> technology{1.0};
  std::vector<double> inflation{0.02};
  std::vector<double> labor{1.0};
  std::vector<TechnologyShock> technology_shocks;
  dsge::SavingsRule savings;

  // Throws ConfigError on path-length mismatches or bad shock periods.
  dsge::SimulationInput simulation_input() const;
};

// One analysis run. Variable order fixes the Cholesky ordering.
struct RunConfig {
  std::filesystem::path dataset;
  std::string country;
  std::vector<std::string> variables;
  std::map<std::string, TransformKind, std::less<>> transforms;
  int lags = 1;
  std::optional<LagSelectionConfig> lag_selection;
  int horizon = 10;
  CovarianceDivisor divisor = CovarianceDivisor::DegreesOfFreedom;
  std::optional<BootstrapConfig> bootstrap;
  std::filesystem::path output_dir = "out";
  std::optional<DsgeConfig> dsge;

  // Explicit entry if present, otherwise the default profile: log for
  // gdp, level for every rate series.
  TransformKind transform_for(std::string_view variable) const;

  // Throws ConfigError: no dataset, no country, empty or duplicated
  // variables, bootstrap without a seed, bad horizon / lags.
  void validate_var_run() const;
  // Throws ConfigError when the DSGE block is absent or inconsistent.
  void validate_dsge_run() const;
};

// Unknown keys anywhere in the document are errors. Throws ConfigError.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace macrovar
