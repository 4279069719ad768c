#include <cmath>

#include "macrovar/error.hpp"
#include "macrovar/var.hpp"

namespace macrovar {

std::string_view to_string(InformationCriterion criterion) {
  return criterion == InformationCriterion::AIC ? "aic" : "bic";
}

std::optional<InformationCriterion> parse_information_criterion(std::string_view name) {
  if (name == "aic" || name == "AIC") return InformationCriterion::AIC;
  if (name == "bic" || name == "BIC") return InformationCriterion::BIC;
  return std::nullopt;
}

LagSelection select_lag(const Sample& sample, const VarSpec& spec_template, int max_lags,
                        InformationCriterion criterion) {
  if (max_lags < 1) throw Error(ErrorKind::ConfigError, "max lag order must be >= 1");
  VarSpec largest = spec_template;
  largest.lags = max_lags;
  largest.validate();

  const Eigen::Index T = sample.values.rows();
  const Eigen::Index N = T - max_lags;
  if (N < static_cast<Eigen::Index>(largest.regressors()) + 1) {
    throw Error(ErrorKind::InsufficientObservations,
                "lag selection up to p = " + std::to_string(max_lags) + " needs at least " +
                    std::to_string(max_lags + static_cast<int>(largest.regressors()) + 1) +
                    " observations, got " + std::to_string(T));
  }

  LagSelection out;
  out.criterion = criterion;
  out.common_observations = N;
  const auto m = static_cast<double>(spec_template.dim());
  double best = 0.0;
  for (int p = 1; p <= max_lags; ++p) {
    VarSpec spec = spec_template;
    spec.lags = p;
    Sample window;
    window.values = sample.values.bottomRows(N + p);
    const VarEstimate est = estimate_var(window, spec, {CovarianceDivisor::SampleSize});

    const double log_det = std::log(est.covariance.determinant());
    const double params = m * static_cast<double>(spec.regressors());
    const auto n = static_cast<double>(N);
    const double aic = log_det + 2.0 * params / n;
    const double bic = log_det + std::log(n) * params / n;
    out.aic.push_back(aic);
    out.bic.push_back(bic);

    const double score = criterion == InformationCriterion::AIC ? aic : bic;
    if (p == 1 || score < best) {
      best = score;
      out.chosen = p;
    }
  }
  return out;
}

}  // namespace macrovar
