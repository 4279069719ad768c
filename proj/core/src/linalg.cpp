#include "macrovar/linalg.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "macrovar/error.hpp"

namespace macrovar {

namespace {

std::string shape(const Eigen::MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorKind::NonFiniteInput, std::string(what) + " contains NaN or infinite entries");
  }
}

}  // namespace

Eigen::MatrixXd least_squares(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  if (X.rows() != Y.rows()) {
    throw Error(ErrorKind::ShapeMismatch,
                "regressors " + shape(X) + " and responses " + shape(Y) + " differ in row count");
  }
  if (X.cols() == 0 || X.rows() < X.cols()) {
    throw Error(ErrorKind::ShapeMismatch,
                "least squares needs at least as many rows as regressors, got " + shape(X));
  }
  require_finite(X, "regressor matrix");
  require_finite(Y, "response matrix");

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::Index k = X.cols();
  const auto R = qr.matrixQR().topLeftCorner(k, k);

  const Eigen::VectorXd diag = R.diagonal().cwiseAbs();
  const double largest = diag.maxCoeff();
  Eigen::Index weakest = 0;
  const double smallest = diag.minCoeff(&weakest);
  if (!(largest > 0.0) || smallest < kRankTolerance * largest) {
    std::ostringstream msg;
    msg << "regressor column " << weakest << " is collinear with earlier columns (|R_ii| = "
        << smallest << " < " << kRankTolerance << " x " << largest << ")";
    throw Error(ErrorKind::RankDeficient, msg.str());
  }

  Eigen::MatrixXd B(k, Y.cols());
  for (Eigen::Index j = 0; j < Y.cols(); ++j) {
    Eigen::VectorXd qty = Y.col(j);
    qty.applyOnTheLeft(qr.householderQ().transpose());
    B.col(j) = R.triangularView<Eigen::Upper>().solve(qty.head(k));
  }
  return B;
}

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& S) {
  if (S.rows() != S.cols() || S.rows() == 0) {
    throw Error(ErrorKind::ShapeMismatch, "cholesky needs a non-empty square matrix, got " + shape(S));
  }
  require_finite(S, "covariance matrix");

  const double scale = S.norm();
  const double asym = (S - S.transpose()).norm();
  if (asym > kSymmetryTolerance * scale) {
    std::ostringstream msg;
    msg << "matrix is not symmetric (||S - S^T||_F / ||S||_F = " << asym / scale << ")";
    throw Error(ErrorKind::NotSymmetric, msg.str());
  }

  const Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(S);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotPositiveDefinite, "matrix " + shape(S) + " is not positive definite");
  }
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(S.rows(), S.cols());
  P.triangularView<Eigen::Lower>() = llt.matrixL();
  if (!(P.diagonal().array() > 0.0).all() || !P.allFinite()) {
    throw Error(ErrorKind::NotPositiveDefinite, "matrix " + shape(S) + " is not positive definite");
  }
  return P;
}

double spectral_radius(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "spectral radius needs a square matrix, got " + shape(M));
  }
  if (M.rows() == 0) return 0.0;
  require_finite(M, "matrix");

  Eigen::EigenSolver<Eigen::MatrixXd> solver;
  solver.setMaxIterations(kSchurIterationsPerRow * static_cast<int>(M.rows()));
  solver.compute(M, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::NoConvergence,
                "eigenvalue iteration did not converge within " +
                    std::to_string(kSchurIterationsPerRow * M.rows()) + " iterations");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace macrovar
