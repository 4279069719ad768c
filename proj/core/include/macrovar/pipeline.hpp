#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "macrovar/dataset.hpp"
#include "macrovar/dsge.hpp"
#include "macrovar/run_config.hpp"
#include "macrovar/var.hpp"

namespace macrovar {

struct IrfTableRow {
  int horizon = 0;
  std::string response;
  std::string shock;
  double point = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;
};

// One row per (shock, response, horizon), grouped by series.
std::vector<IrfTableRow> irf_table(const IrfResult& irf);

// CSV renderers. Numbers use shortest round-trip text, so identical
// inputs give identical bytes.
std::string irf_csv(const IrfResult& irf);                // horizon,response,shock,point,lower,upper
std::string estimate_csv(const VarEstimate& est);         // block,equation,regressor,value
std::string fevd_csv(const std::vector<Eigen::MatrixXd>& shares,
                     const std::vector<std::string>& variables);  // horizon,response,shock,share
std::string panel_summary_csv(const Dataset& data);      // country,year,gdp_growth,...
std::string dsge_paths_csv(const dsge::SimulationResult& sim);
std::string irf_svg(const IrfResult& irf, const std::string& title);

// Loaded, transformed and complete-case sample for a VAR run.
struct PreparedSample {
  TimeSeriesPanel panel;
  Sample sample;
};

// load -> transform -> complete_cases. Errors carry the stage name.
PreparedSample prepare_sample(const RunConfig& config);

struct RunOutcome {
  std::vector<std::filesystem::path> files;
  std::string summary;  // human-readable, printed by the CLI
};

// Each run validates the config first, writes its artifacts plus
// meta.json into config.output_dir, and rethrows failures tagged with the
// pipeline stage.
RunOutcome run_estimate(const RunConfig& config);
RunOutcome run_irf(const RunConfig& config);
RunOutcome run_stability(const RunConfig& config);
RunOutcome run_lagselect(const RunConfig& config);
RunOutcome run_report(const RunConfig& config);
RunOutcome run_simulate(const RunConfig& config);

}  // namespace macrovar
