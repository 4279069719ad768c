#include "macrovar/var.hpp"

#include <algorithm>
#include <set>

#include "macrovar/error.hpp"
#include "macrovar/linalg.hpp"

namespace macrovar {

void VarSpec::validate() const {
  if (variables.empty()) throw Error(ErrorKind::ConfigError, "a VAR needs at least one variable");
  if (lags < 1) {
    throw Error(ErrorKind::ConfigError, "lag order must be >= 1, got " + std::to_string(lags));
  }
  std::set<std::string_view> seen;
  for (const auto& v : variables) {
    if (!seen.insert(v).second) {
      throw Error(ErrorKind::ConfigError, "variable '" + v + "' listed twice in the VAR ordering");
    }
  }
}

std::string_view to_string(CovarianceDivisor divisor) {
  return divisor == CovarianceDivisor::DegreesOfFreedom ? "dof" : "sample";
}

std::optional<CovarianceDivisor> parse_covariance_divisor(std::string_view name) {
  if (name == "dof") return CovarianceDivisor::DegreesOfFreedom;
  if (name == "sample") return CovarianceDivisor::SampleSize;
  return std::nullopt;
}

Regression build_regression(const Eigen::MatrixXd& data, const VarSpec& spec) {
  spec.validate();
  const auto m = static_cast<Eigen::Index>(spec.dim());
  const Eigen::Index p = spec.lags;
  if (data.cols() != m) {
    throw Error(ErrorKind::ShapeMismatch, "data has " + std::to_string(data.cols()) +
                                              " columns but the VAR lists " + std::to_string(m) +
                                              " variables");
  }
  const Eigen::Index T = data.rows();
  const auto k = static_cast<Eigen::Index>(spec.regressors());
  if (T - p < k) {
    throw Error(ErrorKind::InsufficientObservations,
                "VAR(" + std::to_string(p) + ") in " + std::to_string(m) + " variables needs at least " +
                    std::to_string(p + k) + " observations to build the design, got " + std::to_string(T));
  }

  const Eigen::Index n = T - p;
  Regression reg;
  reg.Y = data.bottomRows(n);
  reg.X.resize(n, k);
  Eigen::Index offset = 0;
  if (spec.include_intercept) {
    reg.X.col(0).setOnes();
    offset = 1;
  }
  for (Eigen::Index j = 1; j <= p; ++j) {
    reg.X.middleCols(offset + (j - 1) * m, m) = data.middleRows(p - j, n);
  }
  return reg;
}

VarEstimate estimate_var(const Sample& sample, const VarSpec& spec, const EstimationOptions& options) {
  const Regression reg = build_regression(sample.values, spec);
  const auto k = static_cast<Eigen::Index>(spec.regressors());
  if (reg.Y.rows() < k + 1) {
    throw Error(ErrorKind::InsufficientObservations,
                "VAR(" + std::to_string(spec.lags) + ") in " + std::to_string(spec.dim()) +
                    " variables needs at least " + std::to_string(spec.lags + k + 1) +
                    " observations for one residual degree of freedom, got " +
                    std::to_string(sample.values.rows()));
  }
  const Eigen::MatrixXd B = least_squares(reg.X, reg.Y);

  const auto m = static_cast<Eigen::Index>(spec.dim());
  const Eigen::Index p = spec.lags;

  VarEstimate est;
  est.spec = spec;
  est.coefficients.intercept =
      spec.include_intercept ? Eigen::VectorXd(B.row(0).transpose()) : Eigen::VectorXd::Zero(m);
  const Eigen::Index offset = spec.include_intercept ? 1 : 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    est.coefficients.lags.emplace_back(B.middleRows(offset + j * m, m).transpose());
  }

  est.residuals = reg.Y - reg.X * B;
  const auto n = static_cast<double>(reg.Y.rows());
  est.divisor = options.divisor;
  est.divisor_value = options.divisor == CovarianceDivisor::DegreesOfFreedom
                          ? n - static_cast<double>(spec.regressors())
                          : n;
  Eigen::MatrixXd S = est.residuals.transpose() * est.residuals / est.divisor_value;
  est.covariance = 0.5 * (S + S.transpose());

  if (!sample.years.empty()) {
    est.sample_years.assign(sample.years.begin() + p, sample.years.end());
  }
  return est;
}

Eigen::MatrixXd companion_matrix(const VarCoefficients& coefficients) {
  const auto m = static_cast<Eigen::Index>(coefficients.dim());
  const Eigen::Index p = coefficients.order();
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(m * p, m * p);
  for (Eigen::Index j = 0; j < p; ++j) {
    F.block(0, j * m, m, m) = coefficients.lags[static_cast<std::size_t>(j)];
  }
  if (p > 1) F.bottomLeftCorner(m * (p - 1), m * (p - 1)).setIdentity();
  return F;
}

StabilityReport stability(const VarCoefficients& coefficients) {
  StabilityReport report;
  report.radius = spectral_radius(companion_matrix(coefficients));
  report.stable = report.radius < 1.0 - kStabilityMargin;
  return report;
}

std::vector<Eigen::MatrixXd> ma_coefficients(const VarCoefficients& coefficients, int horizon) {
  if (horizon < 0) throw Error(ErrorKind::ConfigError, "horizon must be >= 0");
  const auto m = static_cast<Eigen::Index>(coefficients.dim());
  const int p = coefficients.order();
  std::vector<Eigen::MatrixXd> phi;
  phi.reserve(static_cast<std::size_t>(horizon) + 1);
  phi.push_back(Eigen::MatrixXd::Identity(m, m));
  for (int h = 1; h <= horizon; ++h) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(m, m);
    for (int j = 1; j <= std::min(h, p); ++j) {
      next.noalias() += coefficients.lags[static_cast<std::size_t>(j - 1)] *
                        phi[static_cast<std::size_t>(h - j)];
    }
    phi.push_back(std::move(next));
  }
  return phi;
}

IrfResult orthogonal_irf(const VarEstimate& est, int horizon) {
  const Eigen::MatrixXd P = cholesky_lower(est.covariance);
  IrfResult out;
  out.variables = est.spec.variables;
  for (auto& phi : ma_coefficients(est.coefficients, horizon)) out.point.push_back(phi * P);
  return out;
}

std::vector<Eigen::MatrixXd> fevd(const VarEstimate& est, int horizon) {
  const IrfResult irf = orthogonal_irf(est, horizon);
  const auto m = static_cast<Eigen::Index>(est.dim());
  std::vector<Eigen::MatrixXd> shares;
  Eigen::MatrixXd cumulative = Eigen::MatrixXd::Zero(m, m);
  for (const auto& theta : irf.point) {
    cumulative += theta.cwiseAbs2();
    Eigen::MatrixXd share = cumulative;
    for (Eigen::Index i = 0; i < m; ++i) share.row(i) /= cumulative.row(i).sum();
    shares.push_back(std::move(share));
  }
  return shares;
}

Eigen::MatrixXd simulate_var(const VarCoefficients& coefficients, const Eigen::MatrixXd& initial,
                             const Eigen::MatrixXd& innovations) {
  const auto m = static_cast<Eigen::Index>(coefficients.dim());
  const Eigen::Index p = coefficients.order();
  if (initial.rows() != p || initial.cols() != m || innovations.cols() != m) {
    throw Error(ErrorKind::ShapeMismatch, "simulate_var needs p initial rows and m columns");
  }
  const Eigen::Index steps = innovations.rows();
  Eigen::MatrixXd path(p + steps, m);
  path.topRows(p) = initial;
  for (Eigen::Index t = p; t < p + steps; ++t) {
    Eigen::VectorXd y = coefficients.intercept + innovations.row(t - p).transpose();
    for (Eigen::Index j = 1; j <= p; ++j) {
      y.noalias() += coefficients.lags[static_cast<std::size_t>(j - 1)] * path.row(t - j).transpose();
    }
    path.row(t) = y.transpose();
  }
  return path;
}

}  // namespace macrovar
