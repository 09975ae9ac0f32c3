#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lpgsp/errors.hpp"
#include "lpgsp/rng.hpp"

namespace lpgsp {

/// Undirected weighted graph: symmetric nonnegative weights, zero diagonal.
struct Graph {
  Eigen::Index n = 0;
  Eigen::MatrixXd weights;
};

inline void validate_graph(const Graph& g) {
  if (g.n < 1) throw ValidationError("graph needs at least one node");
  if (g.weights.rows() != g.n || g.weights.cols() != g.n)
    throw ValidationError("weight matrix does not match node count");
  for (Eigen::Index i = 0; i < g.n; ++i) {
    if (g.weights(i, i) != 0.0)
      throw ValidationError("self-loops are not allowed (nonzero diagonal at node " +
                            std::to_string(i) + ")");
    for (Eigen::Index j = i + 1; j < g.n; ++j) {
      if (g.weights(i, j) < 0.0 || g.weights(j, i) < 0.0)
        throw ValidationError("negative edge weight at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      if (g.weights(i, j) != g.weights(j, i))
        throw ValidationError("weight matrix is not symmetric at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
    }
  }
}

inline Graph make_graph(Eigen::MatrixXd weights) {
  Graph g{weights.rows(), std::move(weights)};
  validate_graph(g);
  return g;
}

/// Combinatorial Laplacian L = D - A, D = Diag(A 1). Rows sum to zero by
/// construction; positive semidefinite for valid graphs.
struct LaplacianMatrix {
  Eigen::MatrixXd values;

  Eigen::Index n() const { return values.rows(); }
};

inline LaplacianMatrix laplacian(const Graph& g) {
  validate_graph(g);
  Eigen::MatrixXd L = -g.weights;
  L.diagonal() = g.weights.rowwise().sum();
  return LaplacianMatrix{std::move(L)};
}

inline void validate_laplacian(const LaplacianMatrix& L, double tol = 1e-8) {
  const Eigen::Index n = L.values.rows();
  if (n < 1 || L.values.cols() != n)
    throw ValidationError("Laplacian must be square and nonempty");
  const double scale = std::max(1.0, L.values.cwiseAbs().maxCoeff());
  if ((L.values - L.values.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw ValidationError("Laplacian is not symmetric");
  if ((L.values.rowwise().sum()).cwiseAbs().maxCoeff() > tol * scale * n)
    throw ValidationError("Laplacian rows do not sum to zero");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && L.values(i, j) > tol * scale)
        throw ValidationError("Laplacian has a positive off-diagonal entry");
}

/// Homogeneous planted partition model: k equal-sized blocks, edge
/// probability a+b inside a block and b across blocks.
struct BlockModel {
  Eigen::Index n = 0;
  int k = 1;
  double a = 0.0;
  double b = 0.0;
  std::vector<int> membership;  // block labels in {1..k}
};

inline void validate_block_model(const BlockModel& m) {
  if (m.n < 1 || m.k < 1) throw ValidationError("block model needs n >= 1, k >= 1");
  if (m.n % m.k != 0)
    throw ValidationError("node count must be divisible by the block count");
  if (m.a < 0.0 || m.b < 0.0 || m.a + m.b > 1.0)
    throw ValidationError("block model needs a >= 0, b >= 0, a + b <= 1");
  if (static_cast<Eigen::Index>(m.membership.size()) != m.n)
    throw ValidationError("membership length does not match node count");
  std::vector<Eigen::Index> counts(static_cast<std::size_t>(m.k), 0);
  for (int label : m.membership) {
    if (label < 1 || label > m.k) throw ValidationError("block label out of range");
    ++counts[static_cast<std::size_t>(label - 1)];
  }
  for (Eigen::Index c : counts)
    if (c != m.n / m.k) throw ValidationError("blocks must be equal-sized");
}

/// Canonical model with contiguous blocks: nodes [0, n/k) get label 1, etc.
inline BlockModel make_block_model(Eigen::Index n, int k, double a, double b) {
  BlockModel m{n, k, a, b, {}};
  if (k >= 1 && n >= 1 && n % k == 0) {
    m.membership.resize(static_cast<std::size_t>(n));
    const Eigen::Index size = n / k;
    for (Eigen::Index i = 0; i < n; ++i)
      m.membership[static_cast<std::size_t>(i)] = static_cast<int>(i / size) + 1;
  }
  validate_block_model(m);
  return m;
}

/// One SBM-PPM draw: independent Bernoulli upper-triangular entries,
/// symmetrized, zero diagonal. Deterministic given the seed.
inline Graph sbm_ppm_sample(const BlockModel& model, std::uint64_t seed) {
  validate_block_model(model);
  auto gen = rng::substream(seed, rng::kGraphStream);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(model.n, model.n);
  for (Eigen::Index i = 0; i < model.n; ++i) {
    for (Eigen::Index j = i + 1; j < model.n; ++j) {
      const bool same = model.membership[static_cast<std::size_t>(i)] ==
                        model.membership[static_cast<std::size_t>(j)];
      const double p = same ? model.a + model.b : model.b;
      if (unif(gen) < p) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
    }
  }
  return Graph{model.n, std::move(w)};
}

/// Expected SBM-PPM Laplacian, (n(a+kb)/k) I - Z (b 11^T + a I) Z^T.
/// Its ascending spectrum is {0, nb (k-1 times), na/k + nb (n-k times)},
/// so the gap between the k-th and (k+1)-th eigenvalues is na/k.
inline LaplacianMatrix expected_laplacian_sbm(const BlockModel& model) {
  validate_block_model(model);
  const double shift =
      static_cast<double>(model.n) * (model.a + model.k * model.b) / model.k;
  Eigen::MatrixXd L(model.n, model.n);
  for (Eigen::Index i = 0; i < model.n; ++i) {
    for (Eigen::Index j = 0; j < model.n; ++j) {
      const bool same = model.membership[static_cast<std::size_t>(i)] ==
                        model.membership[static_cast<std::size_t>(j)];
      L(i, j) = -(model.b + (same ? model.a : 0.0));
    }
    L(i, i) += shift;
  }
  return LaplacianMatrix{std::move(L)};
}

/// Erdos-Renyi draw with edge probability p.
inline Graph erdos_renyi_sample(Eigen::Index n, double p, std::uint64_t seed) {
  if (n < 1) throw ValidationError("graph needs at least one node");
  if (p < 0.0 || p > 1.0) throw ValidationError("edge probability must lie in [0,1]");
  auto gen = rng::substream(seed, rng::kGraphStream);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (unif(gen) < p) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
  return Graph{n, std::move(w)};
}

}  // namespace lpgsp
