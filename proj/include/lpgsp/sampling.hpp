#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lpgsp/errors.hpp"

namespace lpgsp {

/// Sampling set with its interpolation operator. When rank(Phi U_k) = k,
/// psi * Phi acts as the identity on span(U_k).
struct SamplingPlan {
  std::vector<Eigen::Index> indices;  // sampled nodes, selection order
  Eigen::Index k = 0;                 // bandwidth the plan was built for
  Eigen::MatrixXd psi;                // n x n_s interpolation matrix
};

namespace detail {

inline Eigen::MatrixXd select_rows(const Eigen::MatrixXd& Uk,
                                   const std::vector<Eigen::Index>& indices) {
  Eigen::MatrixXd sub(static_cast<Eigen::Index>(indices.size()), Uk.cols());
  for (std::size_t r = 0; r < indices.size(); ++r) {
    if (indices[r] < 0 || indices[r] >= Uk.rows())
      throw ValidationError("sampling index out of range");
    sub.row(static_cast<Eigen::Index>(r)) = Uk.row(indices[r]);
  }
  return sub;
}

inline void check_distinct(const std::vector<Eigen::Index>& indices) {
  std::vector<Eigen::Index> sorted(indices);
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw ValidationError("sampling indices must be distinct");
}

}  // namespace detail

/// Greedy sampling-set selection: each step adds the row that maximizes the
/// smallest singular value of the selected-rows submatrix of U_k, ties broken
/// by lowest index. While fewer than k rows are selected the k-th singular
/// value is identically zero, so the criterion there maximizes (rank, product
/// of nonzero singular values) lexicographically, which stays discriminative
/// and reduces to the row norm at the first step.
inline std::vector<Eigen::Index> greedy_select(const Eigen::MatrixXd& Uk, Eigen::Index ns) {
  const Eigen::Index n = Uk.rows();
  const Eigen::Index k = Uk.cols();
  if (k < 1) throw ValidationError("greedy_select needs at least one basis column");
  if (ns < 1 || ns > n) throw ValidationError("greedy_select needs 1 <= ns <= n");
  std::vector<Eigen::Index> selected;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> candidate_rows;
  for (Eigen::Index step = 0; step < ns; ++step) {
    const Eigen::Index s = step + 1;
    std::pair<double, double> best(-std::numeric_limits<double>::infinity(),
                                   -std::numeric_limits<double>::infinity());
    Eigen::Index best_j = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      candidate_rows = selected;
      candidate_rows.push_back(j);
      const Eigen::MatrixXd sub = detail::select_rows(Uk, candidate_rows);
      const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(sub).singularValues();
      std::pair<double, double> score;
      if (s >= k) {
        score = {sv(k - 1), 0.0};
      } else {
        const double tol = static_cast<double>(std::max(s, k)) *
                           std::numeric_limits<double>::epsilon() * sv(0);
        double rank = 0.0;
        double logprod = 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
          if (sv(i) > tol && sv(i) > 0.0) {
            rank += 1.0;
            logprod += std::log(sv(i));
          }
        }
        score = {rank, logprod};
      }
      if (score > best) {
        best = score;
        best_j = j;
      }
    }
    selected.push_back(best_j);
    used[static_cast<std::size_t>(best_j)] = true;
  }
  return selected;
}

/// True iff rank(Phi U_k) = k, judged by sigma_min > n * eps * sigma_max.
inline bool verify_rank(const std::vector<Eigen::Index>& indices, const Eigen::MatrixXd& Uk) {
  detail::check_distinct(indices);
  const Eigen::Index k = Uk.cols();
  if (static_cast<Eigen::Index>(indices.size()) < k) return false;
  const Eigen::MatrixXd sub = detail::select_rows(Uk, indices);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(sub).singularValues();
  const double smax = sv(0);
  if (!(smax > 0.0)) return false;
  const double smin = sv(k - 1);
  return smin > static_cast<double>(Uk.rows()) * std::numeric_limits<double>::epsilon() * smax;
}

/// Minimum-norm interpolator psi = U_k (Phi U_k)^+. Coincides with exact
/// inversion when n_s = k.
inline SamplingPlan build_interpolator(const Eigen::MatrixXd& Uk,
                                       const std::vector<Eigen::Index>& indices) {
  const Eigen::Index k = Uk.cols();
  const Eigen::MatrixXd sub = detail::select_rows(Uk, indices);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (!verify_rank(indices, Uk)) {
    const double smin = svd.singularValues()(std::min<Eigen::Index>(k, svd.singularValues().size()) - 1);
    throw ValidationError("sampling set is rank-deficient for bandwidth k = " +
                          std::to_string(k) + " (sigma_min = " + std::to_string(smin) + ")");
  }
  const Eigen::VectorXd sv = svd.singularValues();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  const double tol = static_cast<double>(Uk.rows()) * std::numeric_limits<double>::epsilon() * sv(0);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) inv(i) = 1.0 / sv(i);
  const Eigen::MatrixXd pinv =
      svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return SamplingPlan{indices, k, Uk * pinv};
}

/// Interpolate a sampled signal: y_hat = psi * y_samp. Exact on span(U_k)
/// when the plan passed the rank check.
inline Eigen::VectorXd reconstruct(const SamplingPlan& plan, const Eigen::VectorXd& y_samp) {
  if (y_samp.size() != static_cast<Eigen::Index>(plan.indices.size()))
    throw ValidationError("reconstruct: sample vector length does not match the plan");
  return plan.psi * y_samp;
}

}  // namespace lpgsp
