#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "macrovar/error.hpp"
#include "macrovar/var.hpp"

namespace macrovar {

namespace {

struct Replication {
  std::vector<Eigen::MatrixXd> theta;
  int draws = 0;
  bool accepted = false;
  std::exception_ptr failure;
};

std::mt19937_64 replication_stream(std::uint64_t seed, int replication) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replication)};
  return std::mt19937_64(seq);
}

// Linear interpolation between order statistics (Hyndman-Fan type 7).
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

void validate(const BootstrapOptions& options, int horizon) {
  if (options.replications < kMinBootstrapReplications) {
    throw Error(ErrorKind::ConfigError, "bootstrap needs at least " +
                                            std::to_string(kMinBootstrapReplications) +
                                            " replications, got " + std::to_string(options.replications));
  }
  if (!(options.level > 0.0 && options.level < 1.0)) {
    throw Error(ErrorKind::ConfigError, "confidence level must lie in (0, 1)");
  }
  if (horizon < 0) throw Error(ErrorKind::ConfigError, "horizon must be >= 0");
}

}  // namespace

IrfResult bootstrap_bands(const Sample& sample, const VarSpec& spec, int horizon,
                          const BootstrapOptions& options, const EstimationOptions& estimation) {
  validate(options, horizon);
  const VarEstimate est = estimate_var(sample, spec, estimation);
  IrfResult result = orthogonal_irf(est, horizon);

  const Eigen::Index p = spec.lags;
  const Eigen::Index n = est.residuals.rows();
  const Eigen::MatrixXd centered =
      est.residuals.rowwise() - est.residuals.colwise().mean();
  const Eigen::MatrixXd initial = sample.values.topRows(p);

  const int reps = options.replications;
  const int draw_cap = kBootstrapDrawFactor * reps;
  std::vector<Replication> slots(static_cast<std::size_t>(reps));
  std::atomic<int> draws_made{0};

  auto run_one = [&](int r) {
    auto& slot = slots[static_cast<std::size_t>(r)];
    try {
      auto gen = replication_stream(options.seed, r);
      std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
      Eigen::MatrixXd innovations(n, centered.cols());
      while (draws_made.fetch_add(1) < draw_cap) {
        ++slot.draws;
        for (Eigen::Index t = 0; t < n; ++t) innovations.row(t) = centered.row(pick(gen));
        Sample synthetic;
        synthetic.values = simulate_var(est.coefficients, initial, innovations);
        try {
          const VarEstimate refit = estimate_var(synthetic, spec, estimation);
          slot.theta = orthogonal_irf(refit, horizon).point;
          slot.accepted = true;
          return;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::RankDeficient) throw;
        }
      }
    } catch (...) {
      slot.failure = std::current_exception();
    }
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::clamp(threads, 1u, static_cast<unsigned>(reps));
  if (threads == 1) {
    for (int r = 0; r < reps; ++r) run_one(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) run_one(r);
      });
    }
  }

  int total_draws = 0;
  for (const auto& slot : slots) {
    if (slot.failure) std::rethrow_exception(slot.failure);
    total_draws += slot.draws;
  }
  const bool all_accepted =
      std::all_of(slots.begin(), slots.end(), [](const Replication& s) { return s.accepted; });
  if (!all_accepted) {
    throw Error(ErrorKind::BootstrapFailed,
                "reached the cap of " + std::to_string(draw_cap) + " draws before " + std::to_string(reps) +
                    " replications were accepted (rank-deficient resamples)");
  }

  const auto m = static_cast<Eigen::Index>(spec.dim());
  const double q_lo = (1.0 - options.level) / 2.0;
  const double q_hi = (1.0 + options.level) / 2.0;
  std::vector<double> cell(static_cast<std::size_t>(reps));
  for (int h = 0; h <= horizon; ++h) {
    Eigen::MatrixXd lo(m, m), hi(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        for (int r = 0; r < reps; ++r) {
          cell[static_cast<std::size_t>(r)] =
              slots[static_cast<std::size_t>(r)].theta[static_cast<std::size_t>(h)](i, j);
        }
        std::sort(cell.begin(), cell.end());
        lo(i, j) = quantile_sorted(cell, q_lo);
        hi(i, j) = quantile_sorted(cell, q_hi);
      }
    }
    result.lower.push_back(std::move(lo));
    result.upper.push_back(std::move(hi));
  }
  result.bands = BandSettings{options.seed, reps, options.level, reps, total_draws};
  return result;
}

}  // namespace macrovar
