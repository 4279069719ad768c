#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "macrovar/dsge.hpp"
#include "support/error_kind.hpp"

namespace macrovar::dsge {
namespace {

using macrovar::testing::kind_of;

DsgeParams with(double sigma, double chi, double phi = 1.0, double beta = 0.99) {
  DsgeParams p;
  p.risk_aversion = sigma;
  p.labor_disutility = chi;
  p.labor_curvature = phi;
  p.discount = beta;
  return p;
}

TEST(Utility, WorkedExamples) {
  const std::vector<PeriodChoice> one{{1.0, 0.0}};
  EXPECT_DOUBLE_EQ(utility(one, with(2.0, 0.0)), -1.0);

  const std::vector<PeriodChoice> two{{1.0, 0.0}, {1.0, 0.0}};
  EXPECT_EQ(utility(two, with(1.0, 0.0, 1.0, 0.9)), 0.0);

  const std::vector<PeriodChoice> labor{{1.0, 2.0}};
  EXPECT_DOUBLE_EQ(utility(labor, with(1.0, 1.0, 1.0)), -2.0);
}

TEST(Utility, DiscountsByPeriod) {
  const std::vector<PeriodChoice> path{{2.0, 0.5}, {3.0, 1.0}, {1.5, 0.2}};
  const auto p = with(2.0, 0.7, 1.5, 0.9);
  double expected = 0.0;
  for (std::size_t t = 0; t < path.size(); ++t) {
    const double c = path[t].consumption, l = path[t].labor;
    expected += std::pow(0.9, static_cast<double>(t)) * (-1.0 / c - 0.7 * std::pow(l, 2.5) / 2.5);
  }
  EXPECT_NEAR(utility(path, p), expected, 1e-14);
  EXPECT_EQ(utility(std::vector<PeriodChoice>{}, p), 0.0);
}

TEST(Utility, ZeroConsumptionWithCurvature) {
  EXPECT_EQ(kind_of([] { period_utility({0.0, 1.0}, with(1.0, 1.0)); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { period_utility({0.0, 1.0}, with(3.0, 1.0)); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { period_utility({-1.0, 1.0}, with(0.5, 1.0)); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { period_utility({1.0, -1.0}, with(0.5, 1.0)); }), ErrorKind::DomainError);
  EXPECT_DOUBLE_EQ(period_utility({0.0, 0.0}, with(0.5, 1.0)), 0.0);
}

TEST(Utility, MonotoneInConsumptionAndLabor) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> pos(0.1, 5.0), sig(0.1, 4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = with(sig(gen), pos(gen), pos(gen), 0.95);
    std::vector<PeriodChoice> path(4);
    for (auto& c : path) c = {pos(gen), pos(gen)};
    const double base = utility(path, p);
    const auto t = static_cast<std::size_t>(trial % 4);
    auto more_c = path;
    more_c[t].consumption += 1e-3;
    EXPECT_GT(utility(more_c, p), base);
    auto more_l = path;
    more_l[t].labor += 1e-3;
    EXPECT_LT(utility(more_l, p), base);
  }
}

TEST(Utility, LogLimitIsBracketed) {
  for (double c : {0.3, 1.7, 4.0}) {
    const std::vector<PeriodChoice> path{{c, 0.0}};
    const double at_one = utility(path, with(1.0, 0.0));
    const double below = utility(path, with(1.0 - 1e-6, 0.0));
    const double above = utility(path, with(1.0 + 1e-6, 0.0));
    EXPECT_NEAR(at_one, std::log(c), 1e-15);
    // Normalize away the constant 1/(1-s) carried by the power form.
    const double lo_sigma = 1.0 - 1e-6, hi_sigma = 1.0 + 1e-6;
    const double normalized_below = below - 1.0 / (1.0 - lo_sigma);
    const double normalized_above = above - 1.0 / (1.0 - hi_sigma);
    EXPECT_LE(normalized_above, at_one);
    EXPECT_GE(normalized_below, at_one);
    EXPECT_NEAR(normalized_below, at_one, 1e-4);
    EXPECT_NEAR(normalized_above, at_one, 1e-4);
  }
}

TEST(Utility, SteadyStateIsGeometricLimit) {
  const auto p = with(2.0, 1.0, 1.0, 0.95);
  const PeriodChoice choice{1.5, 0.8};
  const std::vector<PeriodChoice> long_path(2000, choice);
  EXPECT_NEAR(utility(long_path, p), steady_state_utility(choice, p), 1e-10);
}

TEST(Production, WorkedExamples) {
  EXPECT_DOUBLE_EQ(production(1.0, 1.0, 1.0, 0.33), 1.0);
  EXPECT_DOUBLE_EQ(production(2.0, 4.0, 9.0, 0.5), 12.0);
  EXPECT_EQ(production(1.0, 4.0, 0.0, 0.5), 0.0);
  EXPECT_EQ(production(1.0, 0.0, 4.0, 0.5), 0.0);
  EXPECT_EQ(kind_of([] { production(1.0, -1.0, 1.0, 0.5); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { production(1.0, 1.0, -1.0, 0.5); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { production(0.0, 1.0, 1.0, 0.5); }), ErrorKind::DomainError);
  EXPECT_EQ(kind_of([] { production(1.0, 1.0, 1.0, 1.0); }), ErrorKind::DomainError);
}

TEST(Production, ConstantReturnsToScale) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> pos(0.01, 50.0), share(0.05, 0.95);
  for (int trial = 0; trial < 100; ++trial) {
    const double A = pos(gen), K = pos(gen), L = pos(gen), a = share(gen);
    const double base = production(A, K, L, a);
    for (double lambda : {0.5, 2.0, 10.0}) {
      EXPECT_NEAR(production(A, lambda * K, lambda * L, a), lambda * base, 1e-12 * lambda * base);
    }
  }
}

TEST(BudgetResidual, WorkedExamples) {
  EXPECT_EQ(budget_residual(EconomyState{}), 0.0);
  EconomyState s;
  s.consumption = 5;
  s.investment = 3;
  s.bonds = 2;
  s.wage = 3;
  s.labor = 2;
  s.capital_return = 1;
  s.capital = 3;
  s.profits = 1;
  s.transfers = 0;
  EXPECT_EQ(budget_residual(s), 0.0);
  s.transfers = 1;
  EXPECT_EQ(budget_residual(s), -1.0);
}

EconomyState random_state(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 10.0);
  EconomyState s;
  s.labor = u(gen);
  s.capital = u(gen);
  s.wage = u(gen);
  s.capital_return = u(gen);
  s.profits = u(gen);
  s.transfers = u(gen);
  s.investment = u(gen);
  s.bonds = u(gen);
  return s;
}

TEST(BudgetResidual, BalancedStatesAndAntisymmetry) {
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_state(gen);
    const double income = s.wage * s.labor + s.capital_return * s.capital + s.profits + s.transfers;
    s.consumption = income - s.investment - s.bonds;
    EXPECT_NEAR(budget_residual(s), 0.0, 1e-12 * income);
  }
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_state(gen);
    s.consumption = 4.0;
    // Swap: expenditures become (wL, rK, Pi + T) and incomes (C, I, B).
    EconomyState swapped;
    swapped.consumption = s.wage * s.labor;
    swapped.investment = s.capital_return * s.capital;
    swapped.bonds = s.profits + s.transfers;
    swapped.wage = 1.0;
    swapped.labor = s.consumption;
    swapped.capital_return = 1.0;
    swapped.capital = s.investment;
    swapped.profits = s.bonds;
    EXPECT_NEAR(budget_residual(swapped), -budget_residual(s), 1e-12);
  }
}

TEST(TaylorRate, WorkedExamples) {
  DsgeParams p;
  EXPECT_EQ(taylor_rate(p.inflation_target, p.potential_output, p), p.natural_rate);
  EXPECT_NEAR(taylor_rate(p.inflation_target + 0.01, p.potential_output - 0.02, p), 0.025, 1e-15);
  const double gap1 = taylor_rate(p.inflation_target + 0.01, p.potential_output, p) - p.natural_rate;
  const double gap2 = taylor_rate(p.inflation_target + 0.02, p.potential_output, p) - p.natural_rate;
  EXPECT_NEAR(gap2, 2.0 * gap1, 1e-15);
  EXPECT_LT(taylor_rate(-0.5, 0.0, p), 0.0);
}

TEST(TaylorRate, SlopesEqualCoefficients) {
  DsgeParams p;
  p.taylor_inflation = 1.75;
  p.taylor_output = 0.25;
  const double h = 1.0 / 1024.0;
  for (double pi : {-0.5, 0.0, 0.03}) {
    for (double y : {0.5, 1.0, 2.0}) {
      EXPECT_NEAR((taylor_rate(pi + h, y, p) - taylor_rate(pi, y, p)) / h, p.taylor_inflation, 1e-12);
      EXPECT_NEAR((taylor_rate(pi, y + h, p) - taylor_rate(pi, y, p)) / h, p.taylor_output, 1e-12);
    }
  }
}

TEST(Params, Validation) {
  DsgeParams ok;
  EXPECT_NO_THROW(ok.validate());
  for (double beta : {0.0, 1.0, -0.1, std::nan("")}) {
    DsgeParams p;
    p.discount = beta;
    EXPECT_EQ(kind_of([&] { p.validate(); }), ErrorKind::DomainError);
  }
  DsgeParams bad_alpha;
  bad_alpha.capital_share = 1.0;
  EXPECT_EQ(kind_of([&] { bad_alpha.validate(); }), ErrorKind::DomainError);
  DsgeParams bad_sigma;
  bad_sigma.risk_aversion = -1.0;
  EXPECT_EQ(kind_of([&] { bad_sigma.validate(); }), ErrorKind::DomainError);
}

SimulationInput flat_input(int periods) {
  SimulationInput in;
  in.initial.capital = 1.0;
  in.path.assign(static_cast<std::size_t>(periods), ExogenousPeriod{1.0, 0.02, 1.0});
  return in;
}

TEST(Simulate, FixedPoint) {
  const auto params = with(2.0, 0.0);
  const auto sim = simulate(flat_input(30), params);
  ASSERT_EQ(sim.periods.size(), 30u);
  for (std::size_t t = 0; t < 30; ++t) {
    EXPECT_DOUBLE_EQ(sim.periods[t].output, 1.0);
    EXPECT_DOUBLE_EQ(sim.periods[t].consumption, 1.0);
    EXPECT_EQ(sim.interest_rates[t], sim.interest_rates[0]);
    EXPECT_NEAR(budget_residual(sim.periods[t]), 0.0, 1e-15);
  }
  EXPECT_EQ(sim.interest_rates[0], params.natural_rate);
}

TEST(Simulate, OnePeriodTechnologyDoubling) {
  auto in = flat_input(12);
  in.path[5].technology = 2.0;
  const auto sim = simulate(in, with(2.0, 0.0));
  for (std::size_t t = 0; t < 12; ++t) EXPECT_DOUBLE_EQ(sim.periods[t].output, t == 5 ? 2.0 : 1.0);
}

TEST(Simulate, BudgetBindsWithSavings) {
  auto in = flat_input(40);
  in.initial.profits = 0.1;
  in.initial.transfers = 0.05;
  in.savings = {0.2, 0.1};
  const auto sim = simulate(in, DsgeParams{});
  for (std::size_t t = 0; t < sim.periods.size(); ++t) {
    const auto& s = sim.periods[t];
    EXPECT_NEAR(budget_residual(s), 0.0, 1e-12 * s.output);
    if (t > 0) {
      EXPECT_DOUBLE_EQ(s.capital, sim.periods[t - 1].capital + sim.periods[t - 1].investment);
    }
  }
  EXPECT_GT(sim.periods.back().output, sim.periods.front().output);
}

TEST(Simulate, OverspendingRuleFails) {
  auto in = flat_input(10);
  in.savings = {0.6, 0.5};
  try {
    simulate(in, DsgeParams{});
    FAIL() << "expected DomainError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
    EXPECT_NE(e.detail().find("period 0"), std::string::npos) << e.detail();
  }
}

TEST(Simulate, TailBoundAndUtilityTotals) {
  const auto sim = simulate(flat_input(200), DsgeParams{});
  EXPECT_NEAR(sim.tail_bound, std::pow(0.99, 200), 1e-15);
  EXPECT_NEAR(sim.tail_bound, 0.134, 5e-4);
  EXPECT_TRUE(sim.tail_bound_loose);
  double sum = 0.0;
  for (double d : sim.discounted_utility) sum += d;
  EXPECT_NEAR(sim.total_utility, sum, 1e-12 * std::abs(sum));

  DsgeParams impatient;
  impatient.discount = 0.9;
  EXPECT_FALSE(simulate(flat_input(200), impatient).tail_bound_loose);
  EXPECT_EQ(truncation_tail_bound(0.5, 3), 0.125);
}

}  // namespace
}  // namespace macrovar::dsge
