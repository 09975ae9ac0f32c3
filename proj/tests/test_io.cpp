#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "lpgsp/graph.hpp"
#include "lpgsp/io.hpp"
#include "lpgsp/sampling.hpp"
#include "lpgsp/spectral.hpp"

using namespace lpgsp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("lpgsp_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("matrix csv round trip is bit exact", "[io]") {
  TempDir dir;
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd M(7, 5);
  for (Eigen::Index i = 0; i < M.size(); ++i) M(i) = normal(gen) * std::pow(10.0, (i % 9) - 4);
  M(0, 0) = 0.05;
  M(1, 1) = -1e-300;
  io::write_matrix_csv(dir.file("m.csv"), M);
  const Eigen::MatrixXd back = io::read_matrix_csv(dir.file("m.csv"));
  REQUIRE(back.rows() == 7);
  REQUIRE(back.cols() == 5);
  REQUIRE((back - M).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("csv validation", "[io]") {
  TempDir dir;
  SECTION("missing file") {
    REQUIRE_THROWS_AS(io::read_matrix_csv(dir.file("nope.csv")), ValidationError);
  }
  SECTION("ragged rows") {
    std::ofstream(dir.file("bad.csv")) << "1,2,3\n4,5\n";
    REQUIRE_THROWS_AS(io::read_matrix_csv(dir.file("bad.csv")), ValidationError);
  }
  SECTION("non-numeric cell") {
    std::ofstream(dir.file("bad2.csv")) << "1,x\n";
    REQUIRE_THROWS_AS(io::read_matrix_csv(dir.file("bad2.csv")), ValidationError);
  }
}

TEST_CASE("adjacency csv symmetry gate", "[io]") {
  TempDir dir;
  SECTION("asymmetric beyond 1e-12 is rejected") {
    std::ofstream(dir.file("a.csv")) << "0,1\n1.00001,0\n";
    REQUIRE_THROWS_AS(io::read_adjacency_csv(dir.file("a.csv")), ValidationError);
  }
  SECTION("valid adjacency round trips") {
    const Graph g = erdos_renyi_sample(12, 0.4, 9);
    io::write_adjacency_csv(dir.file("g.csv"), g);
    const Graph back = io::read_adjacency_csv(dir.file("g.csv"));
    REQUIRE((back.weights - g.weights).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("non-square is rejected") {
    std::ofstream(dir.file("r.csv")) << "0,1,0\n1,0,1\n";
    REQUIRE_THROWS_AS(io::read_adjacency_csv(dir.file("r.csv")), ValidationError);
  }
}

TEST_CASE("trajectory csv carries its header", "[io]") {
  TempDir dir;
  Eigen::MatrixXd Y = Eigen::MatrixXd::Random(4, 6);
  io::write_trajectory_csv(dir.file("t.csv"), Y);
  std::ifstream in(dir.file("t.csv"));
  std::string header;
  std::getline(in, header);
  REQUIRE(header == "t0,t1,t2,t3,t4,t5");
  const Eigen::MatrixXd back = io::read_trajectory_csv(dir.file("t.csv"));
  REQUIRE((back - Y).cwiseAbs().maxCoeff() == 0.0);
  // a plain matrix csv is not a trajectory
  io::write_matrix_csv(dir.file("plain.csv"), Y);
  REQUIRE_THROWS_AS(io::read_trajectory_csv(dir.file("plain.csv")), ValidationError);
}

TEST_CASE("filter specs round trip through json", "[io]") {
  const auto roundtrip = [](const FilterSpec& spec) {
    return io::filter_to_json(io::filter_from_json(io::filter_to_json(spec)));
  };
  const FilterSpec specs[] = {
      FilterSpec::polynomial({1.0, -0.5, 0.25}),
      FilterSpec::response(Eigen::Vector3d(1.0, 0.5, 0.0)),
      FilterSpec::ideal_low_pass(3),
      FilterSpec::ideal_high_pass(2),
      FilterSpec::diffusion(0.7),
      FilterSpec::resolvent(1.3),
      FilterSpec::order1(),
      FilterSpec::finance_equilibrium(0.4, FilterSpec::diffusion(0.2)),
  };
  for (const FilterSpec& spec : specs)
    REQUIRE(roundtrip(spec) == io::filter_to_json(spec));

  REQUIRE_THROWS_AS(io::filter_from_json(nlohmann::json{{"kind", "mystery"}}), ConfigError);
  REQUIRE_THROWS_AS(io::filter_from_json(nlohmann::json{{"kind", "diffusion"}}), ConfigError);
  REQUIRE_THROWS_AS(io::filter_from_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("sampling plans round trip through json", "[io]") {
  const Graph g = erdos_renyi_sample(14, 0.5, 21);
  const Eigen::MatrixXd Uk = eigendecompose(laplacian(g)).U.leftCols(4);
  const auto sel = greedy_select(Uk, 6);
  const SamplingPlan plan = build_interpolator(Uk, sel);
  const nlohmann::json j = io::plan_to_json(plan);
  REQUIRE(j.at("k").get<int>() == 4);
  const SamplingPlan back = io::plan_from_json(j, Uk);
  REQUIRE(back.indices == plan.indices);
  REQUIRE((back.psi - plan.psi).cwiseAbs().maxCoeff() < 1e-14);
  REQUIRE_THROWS_AS(io::plan_from_json(j, Uk.leftCols(3)), ValidationError);
}

TEST_CASE("report csvs", "[io]") {
  TempDir dir;
  io::write_spectrum_csv(dir.file("s.csv"), Eigen::Vector3d(0.0, 1.5, 2.0));
  std::ifstream in(dir.file("s.csv"));
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "index,lambda");
  std::getline(in, line);
  REQUIRE(line == "0,0");
  std::getline(in, line);
  REQUIRE(line == "1,1.5");

  io::write_assignment_csv(dir.file("a.csv"), {2, 1, 1});
  std::ifstream ain(dir.file("a.csv"));
  std::getline(ain, line);
  REQUIRE(line == "node,label");
  std::getline(ain, line);
  REQUIRE(line == "0,2");

  std::vector<DetectionResult> results{detect(0.5, 0.2), detect(0.1, 0.2)};
  io::write_detections_csv(dir.file("d.csv"), results);
  std::ifstream din(dir.file("d.csv"));
  std::getline(din, line);
  REQUIRE(line == "column_index,statistic,threshold,decision");
  std::getline(din, line);
  REQUIRE(line == "0,0.5,0.2,1");
  std::getline(din, line);
  REQUIRE(line == "1,0.1,0.2,0");
}
