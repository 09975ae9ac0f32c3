#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <utility>

#include "lpgsp/errors.hpp"
#include "lpgsp/graph.hpp"

namespace lpgsp {

/// Orthonormal eigenbasis of a symmetric matrix. For a Laplacian, columns of
/// U are the GFT basis and lambdas are the graph frequencies (ascending,
/// lambdas[0] ~ 0).
struct SpectralBasis {
  Eigen::MatrixXd U;
  Eigen::VectorXd lambdas;

  Eigen::Index n() const { return lambdas.size(); }
};

/// Ascending eigendecomposition of a symmetric matrix with a deterministic
/// sign convention: the largest-magnitude entry of every eigenvector is made
/// positive (first such entry on ties). Does not require the input to be a
/// Laplacian; used for covariance matrices as well.
inline SpectralBasis symmetric_eigendecomposition(const Eigen::MatrixXd& M) {
  if (M.rows() != M.cols() || M.rows() < 1)
    throw ValidationError("eigendecomposition needs a square nonempty matrix");
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ValidationError("eigendecomposition input is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(M);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigendecomposition did not converge");
  SpectralBasis basis{solver.eigenvectors(), solver.eigenvalues()};
  for (Eigen::Index c = 0; c < basis.U.cols(); ++c) {
    Eigen::Index imax = 0;
    basis.U.col(c).cwiseAbs().maxCoeff(&imax);
    if (basis.U(imax, c) < 0.0) basis.U.col(c) = -basis.U.col(c);
  }
  return basis;
}

/// GFT basis of a Laplacian.
inline SpectralBasis eigendecompose(const LaplacianMatrix& L) {
  validate_laplacian(L);
  SpectralBasis basis = symmetric_eigendecomposition(L.values);
  const double scale = std::max(1.0, std::abs(basis.lambdas(basis.n() - 1)));
  if (std::abs(basis.lambdas(0)) > 1e-8 * scale)
    throw NumericalError("Laplacian spectrum does not start at zero");
  return basis;
}

inline Eigen::VectorXd gft(const SpectralBasis& basis, const Eigen::VectorXd& x) {
  if (x.size() != basis.n()) throw ValidationError("gft: signal length mismatch");
  return basis.U.transpose() * x;
}

inline Eigen::MatrixXd gft(const SpectralBasis& basis, const Eigen::MatrixXd& X) {
  if (X.rows() != basis.n()) throw ValidationError("gft: signal length mismatch");
  return basis.U.transpose() * X;
}

inline Eigen::VectorXd igft(const SpectralBasis& basis, const Eigen::VectorXd& xt) {
  if (xt.size() != basis.n()) throw ValidationError("igft: coefficient length mismatch");
  return basis.U * xt;
}

inline Eigen::MatrixXd igft(const SpectralBasis& basis, const Eigen::MatrixXd& Xt) {
  if (Xt.rows() != basis.n()) throw ValidationError("igft: coefficient length mismatch");
  return basis.U * Xt;
}

/// Graph quadratic form x^T L x = sum over edges {i,j} of A_ij (x_i - x_j)^2,
/// the smoothness of x on the graph.
inline double quadratic_form(const LaplacianMatrix& L, const Eigen::VectorXd& x) {
  if (x.size() != L.n()) throw ValidationError("quadratic form: signal length mismatch");
  return x.dot(L.values * x);
}

}  // namespace lpgsp
