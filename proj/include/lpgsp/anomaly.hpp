#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "lpgsp/errors.hpp"
#include "lpgsp/processes.hpp"
#include "lpgsp/spectral.hpp"

namespace lpgsp {

enum class Hypothesis { kNull, kAnomaly };

/// Outcome of the high-pass energy test. Alarm on strict inequality
/// statistic > threshold; ties favor the null.
struct DetectionResult {
  double statistic = 0.0;
  double threshold = 0.0;
  Hypothesis decision = Hypothesis::kNull;
};

/// Test statistic Gamma = || (I - U_k U_k^T) y ||_2, the l2 norm of the GFT
/// coefficients above the cutoff (ideal high-pass output).
inline double hpf_statistic(const SpectralBasis& basis, Eigen::Index k,
                            const Eigen::VectorXd& y) {
  const Eigen::Index n = basis.n();
  if (k < 1 || k > n - 1) throw ValidationError("hpf_statistic needs 1 <= k <= n-1");
  if (y.size() != n) throw ValidationError("hpf_statistic: signal length mismatch");
  return (basis.U.transpose() * y).tail(n - k).norm();
}

/// Empirical-quantile threshold from anomaly-free training signals:
/// delta = sorted statistics[ceil(q m) - 1], so q = 1 gives the max.
inline double calibrate_threshold(const SpectralBasis& basis, Eigen::Index k,
                                  const SignalMatrix& Ytrain, double quantile) {
  if (!(quantile > 0.0 && quantile <= 1.0))
    throw ValidationError("calibrate_threshold needs quantile in (0, 1]");
  const Eigen::Index m = Ytrain.cols();
  if (m < 10) throw ValidationError("calibrate_threshold needs at least 10 training signals");
  std::vector<double> stats(static_cast<std::size_t>(m));
  for (Eigen::Index l = 0; l < m; ++l)
    stats[static_cast<std::size_t>(l)] = hpf_statistic(basis, k, Ytrain.col(l));
  std::sort(stats.begin(), stats.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil(quantile * static_cast<double>(m))) - 1;
  return stats[std::min(rank, stats.size() - 1)];
}

inline DetectionResult detect(double statistic, double threshold) {
  if (threshold < 0.0) throw ValidationError("detect needs threshold >= 0");
  if (statistic < 0.0) throw ValidationError("detect needs statistic >= 0");
  return DetectionResult{statistic, threshold,
                         statistic > threshold ? Hypothesis::kAnomaly : Hypothesis::kNull};
}

/// Nodes where the high-pass residual exceeds the entry threshold.
inline std::vector<Eigen::Index> localize(const SpectralBasis& basis, Eigen::Index k,
                                          const Eigen::VectorXd& y, double entry_threshold) {
  const Eigen::Index n = basis.n();
  if (k < 1 || k > n - 1) throw ValidationError("localize needs 1 <= k <= n-1");
  if (y.size() != n) throw ValidationError("localize: signal length mismatch");
  if (entry_threshold < 0.0) throw ValidationError("localize needs entry_threshold >= 0");
  const Eigen::MatrixXd Uk = basis.U.leftCols(k);
  const Eigen::VectorXd residual = y - Uk * (Uk.transpose() * y);
  std::vector<Eigen::Index> hits;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(residual(i)) > entry_threshold) hits.push_back(i);
  return hits;
}

/// Spatial difference L y = D y - A y, the gap between a signal and its
/// one-hop average; frequency response h(lambda) = lambda.
inline Eigen::VectorXd spatial_difference(const LaplacianMatrix& L, const Eigen::VectorXd& y) {
  if (y.size() != L.n()) throw ValidationError("spatial_difference: signal length mismatch");
  return L.values * y;
}

}  // namespace lpgsp
