// macrovar: VAR impulse responses on annual country panels, plus a
// deterministic simulator for the household / firm / Taylor-rule block.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macrovar/error.hpp"
#include "macrovar/pipeline.hpp"
#include "macrovar/run_config.hpp"
#include "macrovar/version.hpp"

namespace {

struct Overrides {
  std::string data;
  std::string config;
  std::string out_dir;
  std::string country;
  std::string vars;
  std::optional<int> lags;
  std::optional<int> horizon;
  std::optional<int> reps;
  std::optional<double> level;
  std::optional<std::uint64_t> seed;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--data", o.data, "Dataset CSV (country,year,gdp,interest_rate,inflation,exchange_rate_usd)");
  cmd->add_option("--config", o.config, "Run configuration (JSON)");
  cmd->add_option("--out-dir", o.out_dir, "Directory for output files");
}

void add_var_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--country", o.country, "Country panel to analyse");
  cmd->add_option("--vars", o.vars, "Comma-separated variables; order fixes the Cholesky ordering");
  cmd->add_option("--lags", o.lags, "VAR lag order (max order for lagselect)");
  cmd->add_option("--horizon", o.horizon, "IRF horizon H");
  cmd->add_option("--reps", o.reps, "Bootstrap replications");
  cmd->add_option("--level", o.level, "Bootstrap confidence level");
  cmd->add_option("--seed", o.seed, "Bootstrap seed");
}

macrovar::RunConfig resolve(const Overrides& o, bool lag_is_max) {
  macrovar::RunConfig cfg;
  if (!o.config.empty()) cfg = macrovar::load_run_config(o.config);
  if (!o.data.empty()) cfg.dataset = o.data;
  if (!o.out_dir.empty()) cfg.output_dir = o.out_dir;
  if (!o.country.empty()) cfg.country = o.country;
  if (!o.vars.empty()) cfg.variables = split_list(o.vars);
  if (o.lags) {
    if (lag_is_max) {
      auto sel = cfg.lag_selection.value_or(macrovar::LagSelectionConfig{});
      sel.max_lags = *o.lags;
      cfg.lag_selection = sel;
    } else {
      cfg.lags = *o.lags;
      cfg.lag_selection.reset();
    }
  }
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.reps || o.level || o.seed) {
    auto boot = cfg.bootstrap.value_or(macrovar::BootstrapConfig{});
    if (o.reps) boot.replications = *o.reps;
    if (o.level) boot.level = *o.level;
    if (o.seed) boot.seed = *o.seed;
    cfg.bootstrap = boot;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"macrovar: VAR impulse responses and policy-rule simulation for country panels"};
  app.set_version_flag("--version", std::string(macrovar::kVersion));
  app.require_subcommand(1);

  Overrides o;
  auto* estimate = app.add_subcommand("estimate", "Fit the VAR and write estimate.csv");
  auto* irf = app.add_subcommand("irf", "Orthogonal IRFs with optional bootstrap bands");
  auto* stability = app.add_subcommand("stability", "Companion-matrix spectral radius of the fitted VAR");
  auto* lagselect = app.add_subcommand("lagselect", "Choose the lag order by AIC or BIC");
  auto* report = app.add_subcommand("report", "Per-country growth / rate summary table and chart");
  auto* simulate = app.add_subcommand("simulate", "Deterministic simulation of the DSGE equation block");
  for (auto* cmd : {estimate, irf, stability, lagselect, report, simulate}) add_common(cmd, o);
  for (auto* cmd : {estimate, irf, stability, lagselect}) add_var_flags(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    macrovar::RunOutcome outcome;
    if (estimate->parsed()) {
      outcome = macrovar::run_estimate(resolve(o, false));
    } else if (irf->parsed()) {
      outcome = macrovar::run_irf(resolve(o, false));
    } else if (stability->parsed()) {
      outcome = macrovar::run_stability(resolve(o, false));
    } else if (lagselect->parsed()) {
      outcome = macrovar::run_lagselect(resolve(o, true));
    } else if (report->parsed()) {
      outcome = macrovar::run_report(resolve(o, false));
    } else {
      outcome = macrovar::run_simulate(resolve(o, false));
    }
    std::cout << outcome.summary << '\n';
    for (const auto& f : outcome.files) std::cout << "  wrote " << f.string() << '\n';
    return 0;
  } catch (const macrovar::Error& e) {
    std::cerr << "macrovar: " << e.what() << '\n';
    return macrovar::exit_code(macrovar::category(e.kind()));
  } catch (const std::exception& e) {
    std::cerr << "macrovar: " << e.what() << '\n';
    return 4;
  }
}
