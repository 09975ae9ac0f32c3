#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <utility>
#include <vector>

#include "lpgsp/clustering.hpp"
#include "lpgsp/errors.hpp"
#include "lpgsp/graph.hpp"
#include "lpgsp/processes.hpp"
#include "lpgsp/spectral.hpp"

namespace lpgsp {

/// (1/m) Y Y^T; the generative model is zero-mean, so no centering.
inline CovarianceModel sample_covariance(const SignalMatrix& Y) {
  if (Y.cols() < 1) throw ValidationError("sample_covariance needs at least one column");
  Eigen::MatrixXd C = (Y * Y.transpose()) / static_cast<double>(Y.cols());
  return 0.5 * (C + C.transpose());
}

/// k-means on the rows of the bottom-k Laplacian eigenvectors.
inline CommunityAssignment spectral_clustering(const LaplacianMatrix& L, int k, int restarts,
                                               std::uint64_t seed) {
  const SpectralBasis basis = eigendecompose(L);
  if (k < 1 || k > basis.n()) throw ValidationError("spectral_clustering needs 1 <= k <= n");
  return kmeans(basis.U.leftCols(k), k, restarts, seed);
}

/// Blind community detection: k-means on the rows of the top-k eigenvectors
/// of the sample covariance. No access to the graph.
inline CommunityAssignment blind_cd(const SignalMatrix& Y, int k, int restarts,
                                    std::uint64_t seed) {
  const SpectralBasis eig = symmetric_eigendecomposition(sample_covariance(Y));
  if (k < 1 || k > eig.n()) throw ValidationError("blind_cd needs 1 <= k <= n");
  return kmeans(eig.U.rightCols(k), k, restarts, seed);
}

/// Laplacian fitted to smooth the observed signals, with the per-iteration
/// objective history and the worst constraint violations seen at any iterate.
struct LearnedLaplacian {
  Eigen::MatrixXd values;
  std::vector<double> history;
  double max_trace_error = 0.0;
  double max_rowsum_error = 0.0;
  double max_offdiag_violation = 0.0;
};

namespace detail {

/// Euclidean projection onto {w >= 0, sum w = s}.
inline Eigen::VectorXd project_scaled_simplex(const Eigen::VectorXd& v, double s) {
  const Eigen::Index ne = v.size();
  std::vector<double> u(v.data(), v.data() + ne);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  for (Eigen::Index i = 0; i < ne; ++i) {
    css += u[static_cast<std::size_t>(i)];
    const double cand = (css - s) / static_cast<double>(i + 1);
    if (u[static_cast<std::size_t>(i)] - cand > 0.0) theta = cand;
  }
  return (v.array() - theta).max(0.0).matrix();
}

inline Eigen::MatrixXd laplacian_from_edge_weights(const Eigen::VectorXd& w, Eigen::Index n) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  Eigen::Index e = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++e) {
      L(i, j) = -w(e);
      L(j, i) = -w(e);
      L(i, i) += w(e);
      L(j, j) += w(e);
    }
  }
  return L;
}

}  // namespace detail

/// Alternating MAP estimation of a Laplacian from smooth signals.
///
/// z-step (closed form): z_l = (I + sigma^2 L)^{-1} y_l, one factorization
/// shared across all columns. L-step: minimize (1/m) sum_l z_l^T L z_l
/// + beta_reg ||L||_F^2 over {Tr L = n, L = L^T, offdiag <= 0, L 1 = 0} via
/// projected gradient on the nonnegative edge weights w (the trace constraint
/// is 1^T w = n/2, a scaled simplex). Stops when the relative objective
/// change drops below tol or max_iter is reached; the objective is
/// nonincreasing across outer iterations.
///
/// With beta_reg = 0 the L-step is a linear program over a polytope and
/// returns a degenerate single-edge vertex; a warning is emitted.
inline LearnedLaplacian learn_topology(const SignalMatrix& Y, double sigma, double beta_reg,
                                       int max_iter, double tol) {
  const Eigen::Index n = Y.rows();
  const Eigen::Index m = Y.cols();
  if (n < 2) throw ValidationError("learn_topology needs at least two nodes");
  if (m < 1) throw ValidationError("learn_topology needs at least one signal");
  if (!(sigma > 0.0)) throw ValidationError("learn_topology needs sigma > 0");
  if (beta_reg < 0.0) throw ValidationError("learn_topology needs beta_reg >= 0");
  if (max_iter < 1) throw ValidationError("learn_topology needs max_iter >= 1");
  if (beta_reg == 0.0)
    std::cerr << "learn_topology: beta_reg = 0 makes the L-step a linear program over a "
                 "polytope; the minimizer is a degenerate single-edge vertex\n";

  const Eigen::Index ne = n * (n - 1) / 2;
  const double wsum = static_cast<double>(n) / 2.0;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(ne, wsum / static_cast<double>(ne));

  LearnedLaplacian out;
  Eigen::MatrixXd L = detail::laplacian_from_edge_weights(w, n);
  const double inv_s2 = 1.0 / (sigma * sigma);
  double prev_obj = std::numeric_limits<double>::infinity();

  for (int it = 0; it < max_iter; ++it) {
    // z-step
    Eigen::MatrixXd Alin = sigma * sigma * L;
    Alin.diagonal().array() += 1.0;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(Alin);
    if (ldlt.info() != Eigen::Success)
      throw NumericalError("learn_topology: z-step system is singular");
    const Eigen::MatrixXd Z = ldlt.solve(Y);

    // per-edge smoothness costs from the Gram matrix of Z
    const Eigen::MatrixXd G = (Z * Z.transpose()) / static_cast<double>(m);
    Eigen::VectorXd c(ne);
    {
      Eigen::Index e = 0;
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j, ++e)
          c(e) = G(i, i) + G(j, j) - 2.0 * G(i, j);
    }

    // L-step
    if (beta_reg == 0.0) {
      Eigen::Index arg = 0;
      c.minCoeff(&arg);
      w.setZero();
      w(arg) = wsum;
    } else {
      // ||L(w)||_F^2 = w' (S'S + 2I) w with S the node-edge incidence; its
      // largest eigenvalue is at most 2n, giving the 1/(4 beta_reg n) step.
      const double step = 1.0 / (4.0 * beta_reg * static_cast<double>(n));
      Eigen::VectorXd grad(ne);
      for (int inner = 0; inner < 500; ++inner) {
        Eigen::VectorXd deg = Eigen::VectorXd::Zero(n);
        {
          Eigen::Index e = 0;
          for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j, ++e) {
              deg(i) += w(e);
              deg(j) += w(e);
            }
        }
        {
          Eigen::Index e = 0;
          for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j, ++e)
              grad(e) = c(e) + 2.0 * beta_reg * (deg(i) + deg(j) + 2.0 * w(e));
        }
        const Eigen::VectorXd w_new =
            detail::project_scaled_simplex(w - step * grad, wsum);
        const double delta = (w_new - w).norm();
        w = w_new;
        if (delta <= 1e-12 * (1.0 + w.norm())) break;
      }
    }
    L = detail::laplacian_from_edge_weights(w, n);

    const double data_term = inv_s2 * (Z - Y).squaredNorm() / static_cast<double>(m);
    const double smooth_term = (Z.transpose() * L * Z).trace() / static_cast<double>(m);
    const double obj = data_term + smooth_term + beta_reg * L.squaredNorm();
    out.history.push_back(obj);
    out.max_trace_error = std::max(out.max_trace_error,
                                   std::abs(L.trace() - static_cast<double>(n)));
    out.max_rowsum_error =
        std::max(out.max_rowsum_error, L.rowwise().sum().cwiseAbs().maxCoeff());
    double offdiag = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) offdiag = std::max(offdiag, L(i, j));
    out.max_offdiag_violation = std::max(out.max_offdiag_violation, offdiag);

    if (it > 0 && std::abs(prev_obj - obj) <= tol * std::max(1.0, std::abs(obj))) {
      break;
    }
    prev_obj = obj;
  }
  out.values = std::move(L);
  return out;
}

/// Recover a time-vertex signal from partial observations by minimizing
/// ||M(Y) - Ysamp||_F^2 + gamma (sum_l y_l' L y_l + sum_{l>=2} ||y_l - y_{l-1}||^2).
/// The normal equations M(Y) + gamma (L Y + Y T) = Ysamp (T the path-graph
/// Laplacian over time) are solved by conjugate gradients, preconditioned in
/// the joint eigenbasis of L and T, from the zeros-completed starting point,
/// until the objective gradient norm drops below tol.
inline SignalMatrix interpolate_time_vertex(const SignalMatrix& Ysamp,
                                            const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& mask,
                                            const LaplacianMatrix& L, double gamma,
                                            double tol) {
  const Eigen::Index n = Ysamp.rows();
  const Eigen::Index T = Ysamp.cols();
  if (mask.rows() != n || mask.cols() != T)
    throw ValidationError("interpolate_time_vertex: mask shape mismatch");
  if (L.n() != n) throw ValidationError("interpolate_time_vertex: Laplacian size mismatch");
  if (gamma < 0.0) throw ValidationError("interpolate_time_vertex needs gamma >= 0");
  if (!(tol > 0.0)) throw ValidationError("interpolate_time_vertex needs tol > 0");
  const Eigen::Index observed = mask.cast<Eigen::Index>().sum();
  if (gamma == 0.0 && observed < n * T)
    throw NumericalError("interpolate_time_vertex: under-determined (missing entries and gamma = 0)");

  Eigen::MatrixXd timeL = Eigen::MatrixXd::Zero(T, T);
  for (Eigen::Index t = 0; t + 1 < T; ++t) {
    timeL(t, t) += 1.0;
    timeL(t + 1, t + 1) += 1.0;
    timeL(t, t + 1) -= 1.0;
    timeL(t + 1, t) -= 1.0;
  }

  const auto apply = [&](const Eigen::MatrixXd& Z) -> Eigen::MatrixXd {
    Eigen::MatrixXd R = mask.cast<double>().cwiseProduct(Z);
    if (gamma > 0.0) R += gamma * (L.values * Z + Z * timeL);
    return R;
  };

  const SpectralBasis gb = eigendecompose(L);
  const SpectralBasis tb = symmetric_eigendecomposition(timeL);
  const double frac =
      static_cast<double>(observed) / static_cast<double>(n * T);
  Eigen::MatrixXd denom(n, T);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index t = 0; t < T; ++t)
      denom(i, t) = std::max(frac + gamma * (gb.lambdas(i) + tb.lambdas(t)), 1e-12);
  const auto precondition = [&](const Eigen::MatrixXd& R) -> Eigen::MatrixXd {
    const Eigen::MatrixXd Rt = gb.U.transpose() * R * tb.U;
    return gb.U * Rt.cwiseQuotient(denom) * tb.U.transpose();
  };

  const Eigen::MatrixXd rhs = mask.cast<double>().cwiseProduct(Ysamp);
  Eigen::MatrixXd Z = rhs;  // zeros-completed start: never worse than it
  Eigen::MatrixXd R = rhs - apply(Z);
  // objective gradient is 2 * residual
  const double target = tol / 2.0;
  if (R.norm() > target) {
    Eigen::MatrixXd P = precondition(R);
    Eigen::MatrixXd D = P;
    double rz = (R.array() * P.array()).sum();
    const int max_cg = 5000;
    for (int it = 0; it < max_cg; ++it) {
      const Eigen::MatrixXd AD = apply(D);
      const double dad = (D.array() * AD.array()).sum();
      if (!(dad > 0.0)) break;  // null-space direction; minimizer reached
      const double alpha = rz / dad;
      Z += alpha * D;
      R -= alpha * AD;
      if (R.norm() <= target) break;
      P = precondition(R);
      const double rz_new = (R.array() * P.array()).sum();
      D = P + (rz_new / rz) * D;
      rz = rz_new;
    }
  }
  return Z;
}

}  // namespace lpgsp
