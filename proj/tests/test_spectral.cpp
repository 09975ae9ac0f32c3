#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lpgsp/graph.hpp"
#include "lpgsp/rng.hpp"
#include "lpgsp/spectral.hpp"

using namespace lpgsp;
using Catch::Approx;

namespace {

Graph complete_graph(Eigen::Index n) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Ones(n, n);
  w.diagonal().setZero();
  return make_graph(std::move(w));
}

Graph random_graph(Eigen::Index n, double density, std::uint64_t seed) {
  auto gen = rng::substream(seed, 0xabcdef);
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

}  // namespace

TEST_CASE("eigendecomposition of small Laplacians", "[spectral]") {
  SECTION("two-node single edge") {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    const SpectralBasis basis = eigendecompose(laplacian(make_graph(w)));
    REQUIRE(basis.lambdas(0) == Approx(0.0).margin(1e-12));
    REQUIRE(basis.lambdas(1) == Approx(2.0).margin(1e-12));
    const double s = 1.0 / std::sqrt(2.0);
    REQUIRE(basis.U(0, 0) == Approx(s).margin(1e-12));
    REQUIRE(basis.U(1, 0) == Approx(s).margin(1e-12));
    // sign convention: first largest-magnitude entry made positive
    REQUIRE(basis.U(0, 1) == Approx(s).margin(1e-12));
    REQUIRE(basis.U(1, 1) == Approx(-s).margin(1e-12));
  }
  SECTION("edgeless graph") {
    const SpectralBasis basis = eigendecompose(laplacian(make_graph(Eigen::MatrixXd::Zero(4, 4))));
    REQUIRE(basis.lambdas.cwiseAbs().maxCoeff() == 0.0);
    REQUIRE((basis.U.transpose() * basis.U - Eigen::MatrixXd::Identity(4, 4))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    REQUIRE((basis.U - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("complete graph spectrum is 0, n, ..., n") {
    const Eigen::Index n = 7;
    const SpectralBasis basis = eigendecompose(laplacian(complete_graph(n)));
    REQUIRE(basis.lambdas(0) == Approx(0.0).margin(1e-9));
    for (Eigen::Index i = 1; i < n; ++i)
      REQUIRE(basis.lambdas(i) == Approx(static_cast<double>(n)).margin(1e-9));
  }
  SECTION("non-symmetric input is rejected") {
    Eigen::MatrixXd M(2, 2);
    M << 1, -1, 0, 1;
    REQUIRE_THROWS_AS(symmetric_eigendecomposition(M), ValidationError);
  }
}

TEST_CASE("basis invariants on random graphs", "[spectral]") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Graph g = random_graph(25, 0.3, seed);
    const LaplacianMatrix L = laplacian(g);
    const SpectralBasis basis = eigendecompose(L);
    REQUIRE((basis.U.transpose() * basis.U - Eigen::MatrixXd::Identity(25, 25))
                .cwiseAbs()
                .maxCoeff() < 1e-8);
    const Eigen::MatrixXd rebuilt =
        basis.U * basis.lambdas.asDiagonal() * basis.U.transpose();
    REQUIRE((rebuilt - L.values).cwiseAbs().maxCoeff() < 1e-8);
    for (Eigen::Index i = 0; i + 1 < 25; ++i)
      REQUIRE(basis.lambdas(i) <= basis.lambdas(i + 1));
  }
}

TEST_CASE("gft basics", "[spectral]") {
  const Graph g = random_graph(20, 0.4, 9);
  const SpectralBasis basis = eigendecompose(laplacian(g));

  SECTION("eigenvector maps to a standard basis vector") {
    for (Eigen::Index i : {0, 5, 19}) {
      const Eigen::VectorXd e = gft(basis, Eigen::VectorXd(basis.U.col(i)));
      Eigen::VectorXd expected = Eigen::VectorXd::Zero(20);
      expected(i) = 1.0;
      REQUIRE((e - expected).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
  SECTION("zero maps to zero") {
    REQUIRE(gft(basis, Eigen::VectorXd(Eigen::VectorXd::Zero(20))).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("all-ones on a connected graph concentrates at frequency zero") {
    const Graph k6 = complete_graph(6);
    const SpectralBasis b6 = eigendecompose(laplacian(k6));
    const Eigen::VectorXd xt = gft(b6, Eigen::VectorXd(Eigen::VectorXd::Ones(6)));
    REQUIRE(xt(0) == Approx(std::sqrt(6.0)).margin(1e-10));
    REQUIRE(xt.tail(5).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("dimension mismatch") {
    REQUIRE_THROWS_AS(gft(basis, Eigen::VectorXd(Eigen::VectorXd::Zero(3))), ValidationError);
    REQUIRE_THROWS_AS(igft(basis, Eigen::VectorXd(Eigen::VectorXd::Zero(3))), ValidationError);
  }
}

TEST_CASE("Parseval and round trips", "[spectral]") {
  const Graph g = random_graph(30, 0.3, 4);
  const SpectralBasis basis = eigendecompose(laplacian(g));
  std::mt19937_64 gen(17);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd x(30);
    for (Eigen::Index i = 0; i < 30; ++i) x(i) = normal(gen);
    const Eigen::VectorXd xt = gft(basis, x);
    REQUIRE(xt.norm() == Approx(x.norm()).margin(1e-10));
    if (t < 100)
      REQUIRE((igft(basis, xt) - x).norm() <= 1e-10 * x.norm());
  }
  REQUIRE(igft(basis, Eigen::VectorXd(Eigen::VectorXd::Zero(30))).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quadratic form", "[spectral]") {
  SECTION("constant signals cost nothing") {
    const Graph g = random_graph(15, 0.5, 2);
    const LaplacianMatrix L = laplacian(g);
    REQUIRE(std::abs(quadratic_form(L, Eigen::VectorXd::Constant(15, 3.7))) < 1e-9);
  }
  SECTION("two-node antipodal signal") {
    Eigen::MatrixXd w(2, 2);
    w << 0, 1, 1, 0;
    Eigen::VectorXd x(2);
    x << 1, -1;
    REQUIRE(quadratic_form(laplacian(make_graph(w)), x) == Approx(4.0).margin(1e-12));
  }
  SECTION("eigenvectors give their eigenvalue") {
    const Graph g = random_graph(18, 0.4, 6);
    const LaplacianMatrix L = laplacian(g);
    const SpectralBasis basis = eigendecompose(L);
    for (Eigen::Index i : {1, 8, 17})
      REQUIRE(quadratic_form(L, Eigen::VectorXd(basis.U.col(i))) ==
              Approx(basis.lambdas(i)).margin(1e-9));
  }
  SECTION("matrix route equals the edge sum and obeys the Rayleigh bound") {
    const Graph g = random_graph(22, 0.35, 8);
    const LaplacianMatrix L = laplacian(g);
    const SpectralBasis basis = eigendecompose(L);
    std::mt19937_64 gen(5);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 200; ++t) {
      Eigen::VectorXd x(22);
      for (Eigen::Index i = 0; i < 22; ++i) x(i) = normal(gen);
      const double s2 = quadratic_form(L, x);
      double edge_sum = 0.0;
      for (Eigen::Index i = 0; i < 22; ++i)
        for (Eigen::Index j = i + 1; j < 22; ++j)
          edge_sum += g.weights(i, j) * (x(i) - x(j)) * (x(i) - x(j));
      REQUIRE(s2 == Approx(edge_sum).margin(1e-9));
      const double rayleigh = s2 / x.squaredNorm();
      REQUIRE(rayleigh >= basis.lambdas(0) - 1e-9);
      REQUIRE(rayleigh <= basis.lambdas(21) + 1e-9);
    }
  }
}
