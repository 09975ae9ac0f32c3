#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "lpgsp/errors.hpp"
#include "lpgsp/rng.hpp"

namespace lpgsp {

/// Partition of n nodes into k clusters with the square-root k-means cost F.
struct CommunityAssignment {
  std::vector<int> labels;  // in {1..k}
  double objective = 0.0;
};

namespace detail {

inline Eigen::MatrixXd centroids_from_labels(const Eigen::MatrixXd& points,
                                             const std::vector<int>& assign, int k) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k, points.cols());
  Eigen::VectorXd count = Eigen::VectorXd::Zero(k);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    c.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
    count(assign[static_cast<std::size_t>(i)]) += 1.0;
  }
  for (int q = 0; q < k; ++q)
    if (count(q) > 0.0) c.row(q) /= count(q);
  return c;
}

inline double sqrt_cost(const Eigen::MatrixXd& points, const std::vector<int>& assign,
                        const Eigen::MatrixXd& centroids) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    sum += (points.row(i) - centroids.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
  return std::sqrt(sum);
}

}  // namespace detail

/// Lloyd iterations from a k-means++ initialization; best of `restarts` runs
/// by the objective. Deterministic given the seed: restart r draws from
/// substream(seed, kmeans, r), nearest-centroid ties go to the lowest
/// centroid index, and an emptied cluster is re-seeded from the point
/// farthest from its current centroid.
inline CommunityAssignment kmeans(const Eigen::MatrixXd& points, int k, int restarts,
                                  std::uint64_t seed) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) throw ValidationError("kmeans needs 1 <= k <= n");
  if (restarts < 1) throw ValidationError("kmeans needs restarts >= 1");

  std::vector<int> best_assign;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    auto gen = rng::substream(seed, rng::kKmeansStream, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // k-means++ seeding
    std::vector<Eigen::Index> centers;
    std::vector<bool> is_center(static_cast<std::size_t>(n), false);
    {
      std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
      centers.push_back(pick(gen));
      is_center[static_cast<std::size_t>(centers[0])] = true;
    }
    Eigen::VectorXd d2 =
        (points.rowwise() - points.row(centers[0])).rowwise().squaredNorm();
    while (static_cast<int>(centers.size()) < k) {
      const double total = d2.sum();
      Eigen::Index next = -1;
      if (total > 0.0) {
        double u = unif(gen) * total;
        for (Eigen::Index i = 0; i < n; ++i) {
          u -= d2(i);
          if (u <= 0.0) {
            next = i;
            break;
          }
        }
        if (next < 0) next = n - 1;
      }
      if (next < 0 || is_center[static_cast<std::size_t>(next)]) {
        // all remaining mass sits on existing centers (duplicate points);
        // fall back to the lowest unused index
        for (Eigen::Index i = 0; i < n; ++i)
          if (!is_center[static_cast<std::size_t>(i)]) {
            next = i;
            break;
          }
      }
      centers.push_back(next);
      is_center[static_cast<std::size_t>(next)] = true;
      d2 = d2.cwiseMin(
          (points.rowwise() - points.row(next)).rowwise().squaredNorm());
    }
    Eigen::MatrixXd c(k, points.cols());
    for (int q = 0; q < k; ++q) c.row(q) = points.row(centers[static_cast<std::size_t>(q)]);

    // Lloyd
    std::vector<int> assign(static_cast<std::size_t>(n), 0);
    for (int iter = 0; iter < 200; ++iter) {
      bool changed = false;
      for (Eigen::Index i = 0; i < n; ++i) {
        int arg = 0;
        double bd = (points.row(i) - c.row(0)).squaredNorm();
        for (int q = 1; q < k; ++q) {
          const double d = (points.row(i) - c.row(q)).squaredNorm();
          if (d < bd) {
            bd = d;
            arg = q;
          }
        }
        if (assign[static_cast<std::size_t>(i)] != arg) {
          assign[static_cast<std::size_t>(i)] = arg;
          changed = true;
        }
      }
      // re-seed emptied clusters from the farthest point
      std::vector<Eigen::Index> count(static_cast<std::size_t>(k), 0);
      for (int a : assign) ++count[static_cast<std::size_t>(a)];
      std::vector<bool> grabbed(static_cast<std::size_t>(n), false);
      for (int q = 0; q < k; ++q) {
        if (count[static_cast<std::size_t>(q)] > 0) continue;
        Eigen::Index far = -1;
        double fd = -1.0;
        for (Eigen::Index i = 0; i < n; ++i) {
          if (grabbed[static_cast<std::size_t>(i)]) continue;
          if (count[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] <= 1) continue;
          const double d =
              (points.row(i) - c.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
          if (d > fd) {
            fd = d;
            far = i;
          }
        }
        if (far < 0) continue;
        --count[static_cast<std::size_t>(assign[static_cast<std::size_t>(far)])];
        assign[static_cast<std::size_t>(far)] = q;
        count[static_cast<std::size_t>(q)] = 1;
        grabbed[static_cast<std::size_t>(far)] = true;
        changed = true;
      }
      c = detail::centroids_from_labels(points, assign, k);
      if (!changed) break;
    }
    const double cost = detail::sqrt_cost(points, assign, c);
    if (cost < best_cost) {
      best_cost = cost;
      best_assign = assign;
    }
  }

  CommunityAssignment out;
  out.labels.resize(best_assign.size());
  for (std::size_t i = 0; i < best_assign.size(); ++i) out.labels[i] = best_assign[i] + 1;
  out.objective = best_cost;
  return out;
}

/// Square-root k-means cost of a given labeling (centroids = cluster means).
inline double kmeans_objective(const Eigen::MatrixXd& points, const std::vector<int>& labels,
                               int k) {
  if (static_cast<Eigen::Index>(labels.size()) != points.rows())
    throw ValidationError("kmeans_objective: label vector length mismatch");
  std::vector<int> assign(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > k) throw ValidationError("label out of range");
    assign[i] = labels[i] - 1;
  }
  const Eigen::MatrixXd c = detail::centroids_from_labels(points, assign, k);
  return detail::sqrt_cost(points, assign, c);
}

/// Agreement fraction maximized over label permutations (exact assignment by
/// dynamic programming over label subsets; k <= 20).
inline double permutation_accuracy(const std::vector<int>& a, const std::vector<int>& b,
                                   int k) {
  if (a.size() != b.size() || a.empty())
    throw ValidationError("permutation_accuracy: label vectors must match and be nonempty");
  if (k < 1 || k > 20) throw ValidationError("permutation_accuracy supports 1 <= k <= 20");
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1 || a[i] > k || b[i] < 1 || b[i] > k)
      throw ValidationError("label out of range");
    C(a[i] - 1, b[i] - 1) += 1.0;
  }
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<double> dp(full + 1, -1.0);
  dp[0] = 0.0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const int row = __builtin_popcountll(mask) - 1;
    for (int j = 0; j < k; ++j) {
      if (!(mask & (std::size_t{1} << j))) continue;
      const double prev = dp[mask ^ (std::size_t{1} << j)];
      if (prev < 0.0) continue;
      dp[mask] = std::max(dp[mask], prev + C(row, j));
    }
  }
  return dp[full] / static_cast<double>(a.size());
}

}  // namespace lpgsp
