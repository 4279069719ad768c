#include "macrovar/dsge.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "macrovar/error.hpp"

namespace macrovar::dsge {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::DomainError, what);
}

}  // namespace

void DsgeParams::validate() const {
  const double all[] = {discount,        risk_aversion,  labor_disutility, labor_curvature,
                        capital_share,   natural_rate,   taylor_inflation, taylor_output,
                        inflation_target, potential_output};
  for (double v : all) require(std::isfinite(v), "DSGE parameters must be finite");
  require(discount > 0.0 && discount < 1.0, "discount factor must lie in (0, 1)");
  require(capital_share > 0.0 && capital_share < 1.0, "capital share must lie in (0, 1)");
  require(risk_aversion >= 0.0, "risk aversion must be >= 0");
  require(labor_disutility >= 0.0, "labor disutility must be >= 0");
  require(labor_curvature >= 0.0, "labor curvature must be >= 0");
}

double period_utility(const PeriodChoice& choice, const DsgeParams& params) {
  const double c = choice.consumption;
  const double l = choice.labor;
  const double sigma = params.risk_aversion;
  require(c >= 0.0, "consumption must be >= 0");
  require(l >= 0.0, "labor must be >= 0");
  require(!(c == 0.0 && sigma >= 1.0), "zero consumption has unbounded disutility when sigma >= 1");

  const double consumption_term =
      sigma == 1.0 ? std::log(c) : std::pow(c, 1.0 - sigma) / (1.0 - sigma);
  const double phi = params.labor_curvature;
  const double labor_term = params.labor_disutility * std::pow(l, 1.0 + phi) / (1.0 + phi);
  return consumption_term - labor_term;
}

double utility(std::span<const PeriodChoice> path, const DsgeParams& params) {
  double total = 0.0;
  double weight = 1.0;
  for (const auto& choice : path) {
    total += weight * period_utility(choice, params);
    weight *= params.discount;
  }
  return total;
}

double steady_state_utility(const PeriodChoice& choice, const DsgeParams& params) {
  return period_utility(choice, params) / (1.0 - params.discount);
}

double production(double technology, double capital, double labor, double capital_share) {
  require(technology > 0.0, "technology must be > 0");
  require(capital >= 0.0, "capital must be >= 0");
  require(labor >= 0.0, "labor must be >= 0");
  require(capital_share > 0.0 && capital_share < 1.0, "capital share must lie in (0, 1)");
  return technology * std::pow(capital, capital_share) * std::pow(labor, 1.0 - capital_share);
}

double budget_residual(const EconomyState& s) {
  const double spending = s.consumption + s.investment + s.bonds;
  const double income = s.wage * s.labor + s.capital_return * s.capital + s.profits + s.transfers;
  return spending - income;
}

double taylor_rate(double inflation, double output, const DsgeParams& params) {
  return params.natural_rate + params.taylor_inflation * (inflation - params.inflation_target) +
         params.taylor_output * (output - params.potential_output);
}

double truncation_tail_bound(double discount, int periods) {
  return std::pow(discount, periods);
}

SimulationResult simulate(const SimulationInput& input, const DsgeParams& params) {
  params.validate();
  const double alpha = params.capital_share;
  SimulationResult result;
  double capital = input.initial.capital;
  double weight = 1.0;

  for (std::size_t t = 0; t < input.path.size(); ++t) {
    const auto& exo = input.path[t];
    EconomyState s;
    s.technology = exo.technology;
    s.labor = exo.labor;
    s.capital = capital;
    s.inflation = exo.inflation;
    s.profits = input.initial.profits;
    s.transfers = input.initial.transfers;

    s.output = production(s.technology, s.capital, s.labor, alpha);
    s.wage = s.labor > 0.0 ? (1.0 - alpha) * s.output / s.labor : 0.0;
    s.capital_return = s.capital > 0.0 ? alpha * s.output / s.capital : 0.0;

    const double income = s.wage * s.labor + s.capital_return * s.capital + s.profits + s.transfers;
    s.investment = input.savings.investment_share * income;
    s.bonds = input.savings.bond_share * income;
    s.consumption = income - s.investment - s.bonds;
    if (s.consumption < 0.0) {
      std::ostringstream msg;
      msg << "period " << t << ": savings rule implies negative consumption " << s.consumption;
      throw Error(ErrorKind::DomainError, msg.str());
    }

    double felicity = 0.0;
    try {
      felicity = period_utility({s.consumption, s.labor}, params);
    } catch (const Error& e) {
      throw Error(ErrorKind::DomainError, "period " + std::to_string(t) + ": " + e.detail());
    }
    result.interest_rates.push_back(taylor_rate(s.inflation, s.output, params));
    result.discounted_utility.push_back(weight * felicity);
    result.total_utility += weight * felicity;
    weight *= params.discount;

    capital += s.investment;
    result.periods.push_back(s);
  }

  result.tail_bound = truncation_tail_bound(params.discount, static_cast<int>(input.path.size()));
  result.tail_bound_loose = result.tail_bound > kLooseTailBound;
  return result;
}

}  // namespace macrovar::dsge
