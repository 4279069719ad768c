#pragma once

// Reference computations and generators for tests. The oracles (normal
// equations, VAR recursion) use plain loops over std::vector and share no
// code path with the library.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace macrovar::testing {

using Dense = std::vector<std::vector<double>>;

inline Dense to_dense(const Eigen::MatrixXd& m) {
  Dense out(static_cast<std::size_t>(m.rows()), std::vector<double>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return out;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::vector<double> gauss_solve(Dense A, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r][col]) > std::abs(A[pivot][col])) pivot = r;
    if (A[pivot][col] == 0.0) throw std::runtime_error("singular system");
    std::swap(A[pivot], A[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

// Normal-equations least squares: solve (X'X) b = X'y column by column.
inline Eigen::MatrixXd normal_equations(const Eigen::MatrixXd& Xm, const Eigen::MatrixXd& Ym) {
  const Dense X = to_dense(Xm);
  const Dense Y = to_dense(Ym);
  const std::size_t T = X.size(), k = X[0].size(), m = Y[0].size();
  Dense XtX(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t t = 0; t < T; ++t) XtX[a][b] += X[t][a] * X[t][b];
  Eigen::MatrixXd B(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<double> rhs(k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t t = 0; t < T; ++t) rhs[a] += X[t][a] * Y[t][j];
    const auto col = gauss_solve(XtX, rhs);
    for (std::size_t a = 0; a < k; ++a) B(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(j)) = col[a];
  }
  return B;
}

// Hand-rolled VAR recursion: y_t = c + sum_j A_j y_{t-j} + u_t, starting
// from `initial` (p rows). Returns p + innovations.size() rows.
inline Dense simulate_var_loop(const std::vector<double>& c, const std::vector<Dense>& A, const Dense& initial,
                               const Dense& innovations) {
  const std::size_t m = c.size(), p = A.size();
  Dense path = initial;
  for (const auto& u : innovations) {
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = c[i] + u[i];
      for (std::size_t j = 0; j < p; ++j) {
        const auto& prev = path[path.size() - 1 - j];
        for (std::size_t k = 0; k < m; ++k) s += A[j][i][k] * prev[k];
      }
      y[i] = s;
    }
    path.push_back(std::move(y));
  }
  return path;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols,
                                     double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = dist(gen);
  return m;
}

// Well-conditioned SPD: G G' + n I with G standard normal.
inline Eigen::MatrixXd random_spd(std::mt19937_64& gen, Eigen::Index n) {
  const Eigen::MatrixXd G = random_matrix(gen, n, n);
  return G * G.transpose() + static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n);
}

// Random lag matrices scaled so sum_j ||A_j||_2 = target < 1, which
// guarantees det(I - sum_j A_j z^j) != 0 on the closed unit disc.
inline std::vector<Eigen::MatrixXd> random_stable_lags(std::mt19937_64& gen, Eigen::Index m, int p,
                                                       double target = 0.9) {
  std::vector<Eigen::MatrixXd> lags;
  double total = 0.0;
  for (int j = 0; j < p; ++j) {
    lags.push_back(random_matrix(gen, m, m));
    total += Eigen::JacobiSVD<Eigen::MatrixXd>(lags.back()).singularValues()(0);
  }
  for (auto& A : lags) A *= target / total;
  return lags;
}

// Draws T observations (after `burn` discarded) from a Gaussian VAR with
// covariance P P'.
inline Eigen::MatrixXd draw_var_sample(std::mt19937_64& gen, const Eigen::VectorXd& c,
                                       const std::vector<Eigen::MatrixXd>& lags, const Eigen::MatrixXd& P,
                                       Eigen::Index T, Eigen::Index burn = 200) {
  const Eigen::Index m = c.size();
  const auto p = static_cast<Eigen::Index>(lags.size());
  std::normal_distribution<double> z(0.0, 1.0);
  Eigen::MatrixXd path = Eigen::MatrixXd::Zero(burn + T + p, m);
  for (Eigen::Index t = p; t < path.rows(); ++t) {
    Eigen::VectorXd e(m);
    for (Eigen::Index i = 0; i < m; ++i) e(i) = z(gen);
    Eigen::VectorXd y = c + P * e;
    for (Eigen::Index j = 0; j < p; ++j) y += lags[static_cast<std::size_t>(j)] * path.row(t - 1 - j).transpose();
    path.row(t) = y.transpose();
  }
  return path.bottomRows(T);
}

inline double relative_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

}  // namespace macrovar::testing
