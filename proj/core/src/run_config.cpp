#include "macrovar/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "macrovar/error.hpp"

namespace macrovar {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::ConfigError, what); }

void reject_unknown(const json& obj, std::string_view section,
                    std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) fail(std::string(section) + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail("unknown key '" + key + "' in " + std::string(section));
    }
  }
}

template <typename T>
T get(const json& obj, std::string_view section, const char* key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail("key '" + std::string(key) + "' in " + std::string(section) + " has the wrong type");
  }
}

template <typename T>
void read(const json& obj, std::string_view section, const char* key, T& out) {
  if (obj.contains(key)) out = get<T>(obj, section, key);
}

std::vector<double> read_path(const json& obj, const char* key, std::vector<double> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_number()) return {v.get<double>()};
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail(std::string("dsge.") + key + " must hold numbers");
      out.push_back(e.get<double>());
    }
    if (out.empty()) fail(std::string("dsge.") + key + " must not be empty");
    return out;
  }
  fail(std::string("dsge.") + key + " must be a number or an array of numbers");
}

dsge::DsgeParams parse_params(const json& obj) {
  reject_unknown(obj, "dsge.params",
                 {"discount", "risk_aversion", "labor_disutility", "labor_curvature", "capital_share",
                  "natural_rate", "taylor_inflation", "taylor_output", "inflation_target",
                  "potential_output"});
  dsge::DsgeParams p;
  const std::string_view s = "dsge.params";
  read(obj, s, "discount", p.discount);
  read(obj, s, "risk_aversion", p.risk_aversion);
  read(obj, s, "labor_disutility", p.labor_disutility);
  read(obj, s, "labor_curvature", p.labor_curvature);
  read(obj, s, "capital_share", p.capital_share);
  read(obj, s, "natural_rate", p.natural_rate);
  read(obj, s, "taylor_inflation", p.taylor_inflation);
  read(obj, s, "taylor_output", p.taylor_output);
  read(obj, s, "inflation_target", p.inflation_target);
  read(obj, s, "potential_output", p.potential_output);
  return p;
}

DsgeConfig parse_dsge(const json& obj) {
  reject_unknown(obj, "dsge",
                 {"params", "periods", "initial", "technology", "inflation", "labor",
                  "technology_shocks", "savings"});
  DsgeConfig d;
  if (obj.contains("params")) d.params = parse_params(obj.at("params"));
  read(obj, "dsge", "periods", d.periods);
  if (obj.contains("initial")) {
    const json& init = obj.at("initial");
    reject_unknown(init, "dsge.initial", {"capital", "profits", "transfers"});
    read(init, "dsge.initial", "capital", d.initial_capital);
    read(init, "dsge.initial", "profits", d.profits);
    read(init, "dsge.initial", "transfers", d.transfers);
  }
  d.technology = read_path(obj, "technology", d.technology);
  d.inflation = read_path(obj, "inflation", d.inflation);
  d.labor = read_path(obj, "labor", d.labor);
  if (obj.contains("technology_shocks")) {
    const json& shocks = obj.at("technology_shocks");
    if (!shocks.is_array()) fail("dsge.technology_shocks must be an array");
    for (const auto& s : shocks) {
      reject_unknown(s, "dsge.technology_shocks[]", {"period", "multiplier"});
      TechnologyShock shock;
      shock.period = get<int>(s, "dsge.technology_shocks[]", "period");
      shock.multiplier = get<double>(s, "dsge.technology_shocks[]", "multiplier");
      d.technology_shocks.push_back(shock);
    }
  }
  if (obj.contains("savings")) {
    const json& sav = obj.at("savings");
    reject_unknown(sav, "dsge.savings", {"investment_share", "bond_share"});
    read(sav, "dsge.savings", "investment_share", d.savings.investment_share);
    read(sav, "dsge.savings", "bond_share", d.savings.bond_share);
  }
  return d;
}

std::vector<double> expand(const std::vector<double>& path, int periods, const char* name) {
  if (path.size() == 1) return std::vector<double>(static_cast<std::size_t>(periods), path.front());
  if (path.size() != static_cast<std::size_t>(periods)) {
    fail(std::string("dsge.") + name + " has " + std::to_string(path.size()) +
         " values but periods = " + std::to_string(periods));
  }
  return path;
}

}  // namespace

dsge::SimulationInput DsgeConfig::simulation_input() const {
  if (periods < 1) fail("dsge.periods must be >= 1");
  const auto tech = expand(technology, periods, "technology");
  const auto infl = expand(inflation, periods, "inflation");
  const auto lab = expand(labor, periods, "labor");

  dsge::SimulationInput input;
  input.initial.capital = initial_capital;
  input.initial.profits = profits;
  input.initial.transfers = transfers;
  input.savings = savings;
  for (int t = 0; t < periods; ++t) {
    const auto i = static_cast<std::size_t>(t);
    input.path.push_back({tech[i], infl[i], lab[i]});
  }
  for (const auto& shock : technology_shocks) {
    if (shock.period < 0 || shock.period >= periods) {
      fail("technology shock period " + std::to_string(shock.period) + " outside [0, " +
           std::to_string(periods) + ")");
    }
    input.path[static_cast<std::size_t>(shock.period)].technology *= shock.multiplier;
  }
  return input;
}

TransformKind RunConfig::transform_for(std::string_view variable) const {
  const auto it = transforms.find(variable);
  if (it != transforms.end()) return it->second;
  return variable == "gdp" ? TransformKind::Log : TransformKind::Level;
}

void RunConfig::validate_var_run() const {
  if (dataset.empty()) fail("no dataset path given");
  if (country.empty()) fail("no country given");
  if (variables.empty()) fail("variables must not be empty");
  std::set<std::string_view> seen;
  for (const auto& v : variables) {
    if (!seen.insert(v).second) fail("variable '" + v + "' listed twice");
  }
  for (const auto& [name, _] : transforms) {
    if (!seen.contains(name)) fail("transform given for '" + name + "', which is not a run variable");
  }
  if (lags < 1) fail("lags must be >= 1");
  if (lag_selection && lag_selection->max_lags < 1) fail("lag_selection.max_lags must be >= 1");
  if (horizon < 0) fail("horizon must be >= 0");
  if (bootstrap) {
    if (!bootstrap->seed) fail("bootstrap requested without a seed");
    if (bootstrap->replications < kMinBootstrapReplications) {
      fail("bootstrap.replications must be >= " + std::to_string(kMinBootstrapReplications));
    }
    if (!(bootstrap->level > 0.0 && bootstrap->level < 1.0)) fail("bootstrap.level must lie in (0, 1)");
  }
}

void RunConfig::validate_dsge_run() const {
  if (!dsge) fail("config has no dsge block");
  try {
    dsge->params.validate();
  } catch (const Error& e) {
    fail("dsge.params: " + e.detail());
  }
  (void)dsge->simulation_input();
}

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(doc, "config",
                 {"dataset", "country", "variables", "transforms", "lags", "lag_selection", "horizon",
                  "covariance_divisor", "bootstrap", "output_dir", "dsge"});

  RunConfig cfg;
  if (doc.contains("dataset")) cfg.dataset = get<std::string>(doc, "config", "dataset");
  read(doc, "config", "country", cfg.country);
  read(doc, "config", "variables", cfg.variables);
  if (doc.contains("transforms")) {
    const json& t = doc.at("transforms");
    if (!t.is_object()) fail("transforms must be an object of variable -> kind");
    for (const auto& [name, kind] : t.items()) {
      if (!kind.is_string()) fail("transform for '" + name + "' must be a string");
      const auto parsed = parse_transform_kind(kind.get<std::string>());
      if (!parsed) fail("unknown transform '" + kind.get<std::string>() + "' for '" + name + "'");
      cfg.transforms.emplace(name, *parsed);
    }
  }
  read(doc, "config", "lags", cfg.lags);
  if (doc.contains("lag_selection")) {
    const json& ls = doc.at("lag_selection");
    reject_unknown(ls, "lag_selection", {"max_lags", "criterion"});
    LagSelectionConfig sel;
    read(ls, "lag_selection", "max_lags", sel.max_lags);
    if (ls.contains("criterion")) {
      const auto name = get<std::string>(ls, "lag_selection", "criterion");
      const auto crit = parse_information_criterion(name);
      if (!crit) fail("unknown lag_selection.criterion '" + name + "' (use aic or bic)");
      sel.criterion = *crit;
    }
    cfg.lag_selection = sel;
  }
  read(doc, "config", "horizon", cfg.horizon);
  if (doc.contains("covariance_divisor")) {
    const auto name = get<std::string>(doc, "config", "covariance_divisor");
    const auto div = parse_covariance_divisor(name);
    if (!div) fail("unknown covariance_divisor '" + name + "' (use dof or sample)");
    cfg.divisor = *div;
  }
  if (doc.contains("bootstrap")) {
    const json& b = doc.at("bootstrap");
    reject_unknown(b, "bootstrap", {"replications", "level", "seed", "threads"});
    BootstrapConfig boot;
    read(b, "bootstrap", "replications", boot.replications);
    read(b, "bootstrap", "level", boot.level);
    if (b.contains("seed")) boot.seed = get<std::uint64_t>(b, "bootstrap", "seed");
    read(b, "bootstrap", "threads", boot.threads);
    cfg.bootstrap = boot;
  }
  if (doc.contains("output_dir")) cfg.output_dir = get<std::string>(doc, "config", "output_dir");
  if (doc.contains("dsge")) cfg.dsge = parse_dsge(doc.at("dsge"));
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace macrovar
