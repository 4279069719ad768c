#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "macrovar/panel.hpp"

namespace macrovar {

// Variable order fixes the Cholesky ordering: a variable does not respond
// on impact to shocks in variables listed after it.
struct VarSpec {
  std::vector<std::string> variables;
  int lags = 1;
  bool include_intercept = true;

  std::size_t dim() const noexcept { return variables.size(); }
  // Regressors per equation: m*p lag terms plus the intercept.
  std::size_t regressors() const noexcept {
    return dim() * static_cast<std::size_t>(lags) + (include_intercept ? 1 : 0);
  }
  // Throws ConfigError.
  void validate() const;
};

// Residual covariance divisor.
//   DegreesOfFreedom: T - p - (mp + 1)   (default)
//   SampleSize:       T - p
enum class CovarianceDivisor { DegreesOfFreedom, SampleSize };

std::string_view to_string(CovarianceDivisor divisor);
std::optional<CovarianceDivisor> parse_covariance_divisor(std::string_view name);

struct EstimationOptions {
  CovarianceDivisor divisor = CovarianceDivisor::DegreesOfFreedom;
};

// y_t = c + A_1 y_{t-1} + ... + A_p y_{t-p} + u_t
struct VarCoefficients {
  Eigen::VectorXd intercept;
  std::vector<Eigen::MatrixXd> lags;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(intercept.size()); }
  int order() const noexcept { return static_cast<int>(lags.size()); }
};

struct VarEstimate {
  VarSpec spec;
  VarCoefficients coefficients;
  Eigen::MatrixXd residuals;   // (T - p) x m
  Eigen::MatrixXd covariance;  // m x m
  std::vector<int> sample_years;  // years of the residual rows
  CovarianceDivisor divisor = CovarianceDivisor::DegreesOfFreedom;
  double divisor_value = 0.0;

  std::size_t dim() const noexcept { return spec.dim(); }
  Eigen::Index observations() const noexcept { return residuals.rows(); }
};

struct Regression {
  Eigen::MatrixXd X;  // (T - p) x (mp + 1): [1, y_{t-1}', ..., y_{t-p}']
  Eigen::MatrixXd Y;  // (T - p) x m
};

// Throws ShapeMismatch, InsufficientObservations (needs T - p >= mp + 1).
Regression build_regression(const Eigen::MatrixXd& data, const VarSpec& spec);

// Equation-by-equation least squares. Needs T - p >= mp + 2. Throws
// InsufficientObservations, RankDeficient, ShapeMismatch.
VarEstimate estimate_var(const Sample& sample, const VarSpec& spec,
                         const EstimationOptions& options = {});

// mp x mp block matrix [A_1 ... A_p; I 0; ...; 0 I 0].
Eigen::MatrixXd companion_matrix(const VarCoefficients& coefficients);
inline Eigen::MatrixXd companion_matrix(const VarEstimate& est) {
  return companion_matrix(est.coefficients);
}

// Boundary used by stability(): radius must be below 1 - kStabilityMargin.
inline constexpr double kStabilityMargin = 1e-10;

struct StabilityReport {
  bool stable = false;
  double radius = 0.0;
};

// Reports, never enforces. Throws NoConvergence.
StabilityReport stability(const VarCoefficients& coefficients);
inline StabilityReport stability(const VarEstimate& est) { return stability(est.coefficients); }

// Phi_0 = I, Phi_h = sum_{j=1}^{min(h,p)} A_j Phi_{h-j}.
std::vector<Eigen::MatrixXd> ma_coefficients(const VarCoefficients& coefficients, int horizon);
inline std::vector<Eigen::MatrixXd> ma_coefficients(const VarEstimate& est, int horizon) {
  return ma_coefficients(est.coefficients, horizon);
}

struct BandSettings {
  std::uint64_t seed = 0;
  int replications = 0;
  double level = 0.0;
  int accepted_draws = 0;
  int total_draws = 0;
};

// Orthogonalized responses. point[h](i, j) is the response of variable i
// at horizon h to a one-standard-deviation shock in variable j.
struct IrfResult {
  std::vector<std::string> variables;
  std::vector<Eigen::MatrixXd> point;
  std::vector<Eigen::MatrixXd> lower;
  std::vector<Eigen::MatrixXd> upper;
  std::optional<BandSettings> bands;

  int horizon() const noexcept { return static_cast<int>(point.size()) - 1; }
  bool has_bands() const noexcept { return bands.has_value(); }
};

// Theta_h = Phi_h P, P = cholesky_lower(Sigma). Throws NotPositiveDefinite.
IrfResult orthogonal_irf(const VarEstimate& est, int horizon);

// share[h](i, j): fraction of the h-step forecast error variance of
// variable i attributable to orthogonal shock j. Rows sum to one.
std::vector<Eigen::MatrixXd> fevd(const VarEstimate& est, int horizon);

// Deterministic recursion. Rows 0..p-1 of the result are `initial`; row t
// for t >= p is c + sum_j A_j y_{t-j} + innovations.row(t - p).
// Result has p + innovations.rows() rows.
Eigen::MatrixXd simulate_var(const VarCoefficients& coefficients, const Eigen::MatrixXd& initial,
                             const Eigen::MatrixXd& innovations);

struct BootstrapOptions {
  int replications = 1000;
  double level = 0.95;
  std::uint64_t seed = 0;
  // 0 picks std::thread::hardware_concurrency(); 1 runs serially.
  unsigned threads = 0;
};

// A replication whose re-estimate is rank deficient is redrawn; at most
// kBootstrapDrawFactor * replications draws are made in total.
inline constexpr int kBootstrapDrawFactor = 10;
inline constexpr int kMinBootstrapReplications = 100;

// Recursive-design residual bootstrap around estimate_var(sample, spec).
// Replication r draws from a generator seeded by (seed, r) only, so the
// output does not depend on the thread count.
// Throws ConfigError on invalid options, BootstrapFailed, and anything
// estimate_var or orthogonal_irf throw on the original sample.
IrfResult bootstrap_bands(const Sample& sample, const VarSpec& spec, int horizon,
                          const BootstrapOptions& options,
                          const EstimationOptions& estimation = {});

enum class InformationCriterion { AIC, BIC };

std::string_view to_string(InformationCriterion criterion);
std::optional<InformationCriterion> parse_information_criterion(std::string_view name);

struct LagSelection {
  int chosen = 1;
  InformationCriterion criterion = InformationCriterion::BIC;
  std::vector<double> aic;  // index p - 1
  std::vector<double> bic;
  Eigen::Index common_observations = 0;
};

// Fits p = 1..max_lags on the common sample (first max_lags rows held out
// for every candidate) and picks the argmin, ties toward smaller p.
// Criteria use the ML covariance E'E / N:
//   AIC = ln det + 2 K / N,  BIC = ln det + ln(N) K / N,  K = m (m p + 1).
// Throws InsufficientObservations, ConfigError.
LagSelection select_lag(const Sample& sample, const VarSpec& spec_template, int max_lags,
                        InformationCriterion criterion);

}  // namespace macrovar
