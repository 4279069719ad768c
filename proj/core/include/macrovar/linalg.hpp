#pragma once

#include <Eigen/Dense>

namespace macrovar {

// |R_ii| below this fraction of max |R_ii| is treated as exact collinearity.
inline constexpr double kRankTolerance = 1e-10;
// Relative Frobenius asymmetry accepted by cholesky_lower.
inline constexpr double kSymmetryTolerance = 1e-10;
// Real Schur sweeps allowed per row before spectral_radius gives up.
inline constexpr int kSchurIterationsPerRow = 40;

// B minimizing ||Y - X B||_F via Householder QR of X (never the normal
// equations). Each column of Y is solved against the same factorization.
// Throws ShapeMismatch, NonFiniteInput, RankDeficient.
Eigen::MatrixXd least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

// Lower-triangular P with positive diagonal and P P^T = S. Entries above
// the diagonal are exactly zero.
// Throws ShapeMismatch, NonFiniteInput, NotSymmetric, NotPositiveDefinite.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& S);

// Largest eigenvalue modulus, from a Hessenberg reduction followed by
// shifted QR (real Schur form). The iteration cap is
// kSchurIterationsPerRow * n. A 0x0 matrix has radius 0.
// Throws ShapeMismatch, NonFiniteInput, NoConvergence.
double spectral_radius(const Eigen::MatrixXd& M);

}  // namespace macrovar
