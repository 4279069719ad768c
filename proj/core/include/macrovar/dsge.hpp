#pragma once

#include <span>
#include <vector>

namespace macrovar::dsge {

// Structural parameters of the household / firm / central-bank block.
// Kept apart from VAR coefficients even where the usual symbols overlap
// (discount factor vs. lag coefficient, capital share vs. intercept).
struct DsgeParams {
  double discount = 0.99;          // beta, in (0, 1)
  double risk_aversion = 2.0;      // sigma >= 0; 1 means log utility
  double labor_disutility = 1.0;   // chi >= 0
  double labor_curvature = 1.0;    // phi >= 0
  double capital_share = 0.33;     // alpha, in (0, 1)
  double natural_rate = 0.02;      // rho
  double taylor_inflation = 1.5;   // phi_pi
  double taylor_output = 0.5;      // phi_y
  double inflation_target = 0.02;  // pi*
  double potential_output = 1.0;   // y*

  // Throws DomainError.
  void validate() const;
};

struct EconomyState {
  double consumption = 0.0;  // C_t
  double labor = 0.0;        // L_t
  double capital = 0.0;      // K_t
  double technology = 1.0;   // A_t
  double investment = 0.0;   // I_t
  double bonds = 0.0;        // B_t
  double wage = 0.0;         // omega_t
  double capital_return = 0.0;  // r_t
  double profits = 0.0;      // Pi_t
  double transfers = 0.0;    // T_t
  double inflation = 0.0;    // pi_t
  double output = 0.0;       // y_t
};

struct PeriodChoice {
  double consumption = 0.0;
  double labor = 0.0;
};

// Per-period felicity C^{1-s}/(1-s) - chi L^{1+phi}/(1+phi); log C at s = 1.
// Throws DomainError for C = 0 with s >= 1, or negative C or L.
double period_utility(const PeriodChoice& choice, const DsgeParams& params);

// sum_{t=0}^{T-1} beta^t u(C_t, L_t) over the given (truncated) path.
double utility(std::span<const PeriodChoice> path, const DsgeParams& params);

// Closed form of the infinite discounted sum for a constant path,
// u(C, L) / (1 - beta).
double steady_state_utility(const PeriodChoice& choice, const DsgeParams& params);

// A K^alpha L^{1-alpha}, with 0^x = 0 for x > 0. Throws DomainError on
// A <= 0, negative K or L, or alpha outside (0, 1).
double production(double technology, double capital, double labor, double capital_share);

// (C + I + B) - (omega L + r K + Pi + T). Zero when the constraint binds.
double budget_residual(const EconomyState& state);

// rho + phi_pi (pi - pi*) + phi_y (y - y*), unbounded below.
double taylor_rate(double inflation, double output, const DsgeParams& params);

// beta^T: weight of the first period dropped by truncating at T.
double truncation_tail_bound(double discount, int periods);

// Tail bounds above this are reported as loose.
inline constexpr double kLooseTailBound = 1e-2;

struct ExogenousPeriod {
  double technology = 1.0;
  double inflation = 0.0;
  double labor = 1.0;
};

// Fractions of income routed to investment and bond holdings; the
// remainder is consumed.
struct SavingsRule {
  double investment_share = 0.0;
  double bond_share = 0.0;
};

struct SimulationInput {
  // Supplies K_0 and the profits / transfers held constant every period.
  EconomyState initial;
  std::vector<ExogenousPeriod> path;
  SavingsRule savings;
};

struct SimulationResult {
  std::vector<EconomyState> periods;
  std::vector<double> interest_rates;      // i_t
  std::vector<double> discounted_utility;  // beta^t u(C_t, L_t)
  double total_utility = 0.0;
  double tail_bound = 0.0;
  bool tail_bound_loose = false;
};

// Deterministic chaining of the equation block, one period at a time:
//   y_t = production(A_t, K_t, L_t)
//   i_t = taylor_rate(pi_t, y_t)
//   factor prices omega_t = (1-alpha) y_t / L_t, r_t = alpha y_t / K_t
//   income = omega_t L_t + r_t K_t + Pi + T, split by the savings rule,
//   C_t solving the budget constraint, K_{t+1} = K_t + I_t.
// This closure is simulation scaffolding, not an equilibrium solution.
// Throws DomainError naming the first period with C_t < 0.
SimulationResult simulate(const SimulationInput& input, const DsgeParams& params);

}  // namespace macrovar::dsge
