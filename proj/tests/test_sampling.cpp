#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lpgsp/graph.hpp"
#include "lpgsp/rng.hpp"
#include "lpgsp/sampling.hpp"
#include "lpgsp/spectral.hpp"

using namespace lpgsp;
using Catch::Approx;

namespace {

Graph path_graph(Eigen::Index n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    w(i, i + 1) = 1.0;
    w(i + 1, i) = 1.0;
  }
  return Graph{n, std::move(w)};
}

Graph random_graph(Eigen::Index n, double density, std::uint64_t seed) {
  auto gen = rng::substream(seed, 0x5a3c11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (unif(gen) < density) {
        const double v = unif(gen);
        w(i, j) = v;
        w(j, i) = v;
      }
  return make_graph(std::move(w));
}

/// Block-indicator basis sqrt(k/n) Z, the n -> infinity limit of the SBM
/// bottom-k eigenvectors.
Eigen::MatrixXd sbm_limit_basis(const BlockModel& model) {
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(model.n, model.k);
  for (Eigen::Index i = 0; i < model.n; ++i)
    Z(i, model.membership[static_cast<std::size_t>(i)] - 1) = 1.0;
  return std::sqrt(static_cast<double>(model.k) / static_cast<double>(model.n)) * Z;
}

double sigma_min(const Eigen::MatrixXd& M) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues();
  return sv(sv.size() - 1);
}

}  // namespace

TEST_CASE("greedy selection", "[sampling]") {
  SECTION("identity basis selects its support rows in order") {
    Eigen::MatrixXd Uk = Eigen::MatrixXd::Zero(8, 3);
    Uk.topLeftCorner(3, 3).setIdentity();
    const auto sel = greedy_select(Uk, 3);
    REQUIRE(sel == std::vector<Eigen::Index>{0, 1, 2});
  }
  SECTION("block-limit basis covers every block") {
    const BlockModel model = make_block_model(24, 4, 0.4, 0.1);
    const Eigen::MatrixXd Uk = sbm_limit_basis(model);
    const auto sel = greedy_select(Uk, 4);
    std::vector<bool> seen(4, false);
    for (Eigen::Index idx : sel)
      seen[static_cast<std::size_t>(model.membership[static_cast<std::size_t>(idx)] - 1)] = true;
    for (bool s : seen) REQUIRE(s);
  }
  SECTION("full sampling of an orthonormal basis reaches sigma_min = 1") {
    const Graph g = random_graph(10, 0.5, 2);
    const SpectralBasis basis = eigendecompose(laplacian(g));
    const Eigen::MatrixXd Uk = basis.U.leftCols(4);
    const auto sel = greedy_select(Uk, 10);
    REQUIRE(sigma_min(Uk) == Approx(1.0).margin(1e-10));
    REQUIRE(sel.size() == 10);
  }
  SECTION("sigma_min never decreases as the set grows") {
    const Graph g = random_graph(20, 0.4, 3);
    const Eigen::MatrixXd Uk = eigendecompose(laplacian(g)).U.leftCols(5);
    const auto sel = greedy_select(Uk, 12);
    double prev = 0.0;
    for (std::size_t s = 5; s <= sel.size(); ++s) {
      Eigen::MatrixXd sub(static_cast<Eigen::Index>(s), 5);
      for (std::size_t r = 0; r < s; ++r) sub.row(static_cast<Eigen::Index>(r)) = Uk.row(sel[r]);
      const double sm = sigma_min(sub);
      REQUIRE(sm >= prev - 1e-12);
      prev = sm;
    }
  }
  SECTION("bad arguments") {
    REQUIRE_THROWS_AS(greedy_select(Eigen::MatrixXd::Identity(4, 2), 5), ValidationError);
    REQUIRE_THROWS_AS(greedy_select(Eigen::MatrixXd::Identity(4, 2), 0), ValidationError);
  }
}

TEST_CASE("rank verification", "[sampling]") {
  const BlockModel model = make_block_model(20, 4, 0.4, 0.1);
  const Eigen::MatrixXd Uk = sbm_limit_basis(model);

  SECTION("greedy sets of size >= k pass") {
    REQUIRE(verify_rank(greedy_select(Uk, 4), Uk));
    REQUIRE(verify_rank(greedy_select(Uk, 7), Uk));
  }
  SECTION("fewer than k samples always fail") {
    REQUIRE_FALSE(verify_rank({0, 5, 10}, Uk));
    const Graph g = random_graph(16, 0.5, 4);
    const Eigen::MatrixXd U5 = eigendecompose(laplacian(g)).U.leftCols(5);
    REQUIRE_FALSE(verify_rank({0, 1, 2, 3}, U5));
  }
  SECTION("an unsampled block breaks the rank condition") {
    // all samples from blocks 1..3: the block-4 basis column restricts to zero
    REQUIRE_FALSE(verify_rank({0, 1, 5, 6, 10, 11}, Uk));
  }
  SECTION("duplicate indices are rejected") {
    REQUIRE_THROWS_AS(verify_rank({0, 0, 5, 10}, Uk), ValidationError);
  }
}

TEST_CASE("interpolator construction", "[sampling]") {
  SECTION("full sampling gives the bandlimited projector") {
    const Graph g = random_graph(12, 0.5, 7);
    const Eigen::MatrixXd Uk = eigendecompose(laplacian(g)).U.leftCols(4);
    std::vector<Eigen::Index> all(12);
    for (Eigen::Index i = 0; i < 12; ++i) all[static_cast<std::size_t>(i)] = i;
    const SamplingPlan plan = build_interpolator(Uk, all);
    REQUIRE((plan.psi - Uk * Uk.transpose()).cwiseAbs().maxCoeff() < 1e-8);
  }
  SECTION("bandwidth one on a connected graph: any single sample recovers constants") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(6, 6);
    w.diagonal().setZero();
    const Eigen::MatrixXd U1 = eigendecompose(laplacian(make_graph(w))).U.leftCols(1);
    const SamplingPlan plan = build_interpolator(U1, {3});
    Eigen::VectorXd sample(1);
    sample << 2.5;
    const Eigen::VectorXd y = reconstruct(plan, sample);
    REQUIRE((y - Eigen::VectorXd::Constant(6, 2.5)).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("path graph n=8, k=3: greedy plan recovers bandlimited signals") {
    const Eigen::MatrixXd Uk = eigendecompose(laplacian(path_graph(8))).U.leftCols(3);
    const auto sel = greedy_select(Uk, 3);
    REQUIRE(verify_rank(sel, Uk));
    const SamplingPlan plan = build_interpolator(Uk, sel);
    std::mt19937_64 gen(9);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd c(3);
      for (Eigen::Index i = 0; i < 3; ++i) c(i) = normal(gen);
      const Eigen::VectorXd y = Uk * c;
      Eigen::VectorXd ys(3);
      for (std::size_t r = 0; r < 3; ++r) ys(static_cast<Eigen::Index>(r)) = y(sel[r]);
      REQUIRE((reconstruct(plan, ys) - y).norm() <= 1e-8 * y.norm());
    }
  }
  SECTION("rank-deficient selections are rejected with the blocking sigma") {
    const BlockModel model = make_block_model(20, 4, 0.4, 0.1);
    const Eigen::MatrixXd Uk = sbm_limit_basis(model);
    REQUIRE_THROWS_WITH(build_interpolator(Uk, {0, 1, 5, 10}),
                        Catch::Matchers::ContainsSubstring("sigma_min"));
  }
  SECTION("sample vector length must match") {
    const Eigen::MatrixXd Uk = eigendecompose(laplacian(path_graph(6))).U.leftCols(2);
    const SamplingPlan plan = build_interpolator(Uk, greedy_select(Uk, 2));
    REQUIRE_THROWS_AS(reconstruct(plan, Eigen::VectorXd::Zero(3)), ValidationError);
  }
}

TEST_CASE("reconstruction error structure", "[sampling]") {
  const Graph g = random_graph(18, 0.45, 13);
  const SpectralBasis basis = eigendecompose(laplacian(g));
  const Eigen::Index k = 4;
  const Eigen::MatrixXd Uk = basis.U.leftCols(k);
  const auto sel = greedy_select(Uk, 6);
  REQUIRE(verify_rank(sel, Uk));
  const SamplingPlan plan = build_interpolator(Uk, sel);

  SECTION("bandlimited signals come back exactly") {
    std::mt19937_64 gen(15);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd c(k);
      for (Eigen::Index i = 0; i < k; ++i) c(i) = normal(gen);
      const Eigen::VectorXd y = Uk * c;
      Eigen::VectorXd ys(static_cast<Eigen::Index>(sel.size()));
      for (std::size_t r = 0; r < sel.size(); ++r) ys(static_cast<Eigen::Index>(r)) = y(sel[r]);
      REQUIRE((reconstruct(plan, ys) - y).norm() <= 1e-8 * y.norm());
    }
  }
  SECTION("a pure high-frequency signal is not recovered") {
    const Eigen::VectorXd y = basis.U.col(17);
    Eigen::VectorXd ys(static_cast<Eigen::Index>(sel.size()));
    for (std::size_t r = 0; r < sel.size(); ++r) ys(static_cast<Eigen::Index>(r)) = y(sel[r]);
    REQUIRE((reconstruct(plan, ys) - y).norm() > 0.5);
  }
}
