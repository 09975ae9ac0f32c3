// Batch CLI wiring the lpgsp library into reproducible, file-based
// experiments. Every subcommand reads one JSON config, writes its primary
// outputs plus a deterministic manifest into --out, and isolates wall-clock
// information in a separate timings file so reruns are byte-identical.
//
// Exit codes: 0 success, 1 usage/config error, 2 data validation error,
// 3 numerical failure. Errors are reported as a single JSON line on stderr.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpgsp/lpgsp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace lpgsp;

namespace {

constexpr const char* kToolVersion = "lpgsp 0.1.0";

// ---------------------------------------------------------------------------
// config access with JSON-pointer error reporting
// ---------------------------------------------------------------------------

[[noreturn]] void config_fail(const std::string& pointer, const std::string& msg) {
  throw ConfigError("config error at " + (pointer.empty() ? "/" : pointer) + ": " + msg);
}

const json& at(const json& root, const std::string& pointer) {
  const json::json_pointer p(pointer);
  if (!root.contains(p)) config_fail(pointer, "missing required field");
  return root.at(p);
}

bool has(const json& root, const std::string& pointer) {
  return root.contains(json::json_pointer(pointer));
}

std::int64_t require_int(const json& root, const std::string& pointer, std::int64_t min,
                         std::int64_t max = std::numeric_limits<std::int64_t>::max()) {
  const json& v = at(root, pointer);
  if (!v.is_number_integer()) config_fail(pointer, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < min || x > max)
    config_fail(pointer, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
  return x;
}

double require_number(const json& root, const std::string& pointer, double min,
                      double max = std::numeric_limits<double>::infinity()) {
  const json& v = at(root, pointer);
  if (!v.is_number()) config_fail(pointer, "expected a number");
  const double x = v.get<double>();
  if (!(x >= min) || !(x <= max))
    config_fail(pointer, "must lie in [" + std::to_string(min) + ", " + std::to_string(max) + "]");
  return x;
}

std::string require_string(const json& root, const std::string& pointer) {
  const json& v = at(root, pointer);
  if (!v.is_string()) config_fail(pointer, "expected a string");
  return v.get<std::string>();
}

void check_keys(const json& obj, const std::string& pointer,
                const std::set<std::string>& allowed) {
  if (!obj.is_object()) config_fail(pointer, "expected an object");
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) config_fail(pointer + "/" + key, "unknown field");
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("", "cannot open config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    config_fail("", std::string("invalid JSON: ") + e.what());
  }
  check_keys(cfg, "",
             {"seed", "graph", "filter", "m", "sigma", "spectrum", "apply", "ratio",
              "sampling", "reconstruction", "communities", "learning", "interpolation",
              "anomaly"});
  require_int(cfg, "/seed", 0);
  return cfg;
}

// ---------------------------------------------------------------------------
// graph construction
// ---------------------------------------------------------------------------

struct LoadedGraph {
  Graph graph;
  std::vector<int> membership;  // nonempty only for generated SBM graphs
};

LoadedGraph load_graph(const json& cfg, std::uint64_t seed) {
  const json& g = at(cfg, "/graph");
  check_keys(g, "/graph", {"file", "generator"});
  const bool from_file = g.contains("file");
  const bool generated = g.contains("generator");
  if (from_file == generated)
    config_fail("/graph", "exactly one of 'file' and 'generator' must be given");
  if (from_file) return {io::read_adjacency_csv(require_string(cfg, "/graph/file")), {}};

  const std::string type = require_string(cfg, "/graph/generator/type");
  if (type == "sbm_ppm") {
    check_keys(g.at("generator"), "/graph/generator", {"type", "n", "k", "a", "b"});
    const auto n = require_int(cfg, "/graph/generator/n", 1);
    const auto k = require_int(cfg, "/graph/generator/k", 1, n);
    const double a = require_number(cfg, "/graph/generator/a", 0.0, 1.0);
    const double b = require_number(cfg, "/graph/generator/b", 0.0, 1.0);
    if (n % k != 0) config_fail("/graph/generator/n", "must be divisible by k");
    if (a + b > 1.0) config_fail("/graph/generator/a", "a + b must not exceed 1");
    const BlockModel model =
        make_block_model(static_cast<Eigen::Index>(n), static_cast<int>(k), a, b);
    return {sbm_ppm_sample(model, seed), model.membership};
  }
  if (type == "erdos_renyi") {
    check_keys(g.at("generator"), "/graph/generator", {"type", "n", "p"});
    const auto n = require_int(cfg, "/graph/generator/n", 1);
    const double p = require_number(cfg, "/graph/generator/p", 0.0, 1.0);
    return {erdos_renyi_sample(static_cast<Eigen::Index>(n), p, seed), {}};
  }
  config_fail("/graph/generator/type", "unknown generator '" + type + "'");
}

FilterSpec load_filter(const json& cfg) {
  if (!has(cfg, "/filter")) config_fail("/filter", "missing required field");
  return io::filter_from_json(cfg.at("filter"));
}

// ---------------------------------------------------------------------------
// run context: output directory, manifest, timings
// ---------------------------------------------------------------------------

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

class RunContext {
 public:
  RunContext(std::string subcommand, const json& cfg, std::string out_dir)
      : subcommand_(std::move(subcommand)),
        out_dir_(std::move(out_dir)),
        config_(cfg),
        start_(std::chrono::steady_clock::now()) {
    std::error_code ec;
    fs::create_directories(out_dir_, ec);
    if (ec) throw ValidationError("cannot create output directory '" + out_dir_ + "'");
  }

  std::string path(const std::string& name) {
    outputs_.push_back(name);
    return (fs::path(out_dir_) / name).string();
  }

  void write_json(const std::string& name, const json& j) {
    std::ofstream out(path(name));
    if (!out) throw ValidationError("cannot open '" + name + "' for writing");
    out << j.dump(2) << '\n';
  }

  /// Deterministic manifest + isolated timing file; call last.
  void finish() {
    std::sort(outputs_.begin(), outputs_.end());
    json manifest{{"tool", kToolVersion},
                  {"subcommand", subcommand_},
                  {"config_hash", fnv1a_hex(config_.dump())},
                  {"outputs", outputs_}};
    std::ofstream mout(fs::path(out_dir_) / "manifest.json");
    mout << manifest.dump(2) << '\n';
    // echo of the effective config: proves the schema round-trips
    std::ofstream cout_(fs::path(out_dir_) / "config_used.json");
    cout_ << config_.dump(2) << '\n';
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    json timings{{"elapsed_seconds", elapsed},
                 {"finished_unix_ms",
                  std::chrono::duration_cast<std::chrono::milliseconds>(now).count()}};
    std::ofstream tout(fs::path(out_dir_) / "timings.json");
    tout << timings.dump(2) << '\n';
  }

 private:
  std::string subcommand_;
  std::string out_dir_;
  json config_;
  std::vector<std::string> outputs_;
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

void cmd_generate(const json& cfg, RunContext& run, std::uint64_t seed) {
  const auto m = require_int(cfg, "/m", 1);
  const double sigma = require_number(cfg, "/sigma", 0.0);
  const FilterSpec spec = load_filter(cfg);
  const LoadedGraph lg = load_graph(cfg, seed);
  const SpectralBasis basis = eigendecompose(laplacian(lg.graph));
  const SignalMatrix Y =
      sample_lowpass_signals(basis, spec, static_cast<Eigen::Index>(m), sigma, seed);

  io::write_adjacency_csv(run.path("adjacency.csv"), lg.graph);
  io::write_matrix_csv(run.path("signals.csv"), Y);
  if (!lg.membership.empty())
    io::write_assignment_csv(run.path("membership.csv"), lg.membership);
  json meta{{"seed", seed},
            {"m", m},
            {"sigma", sigma},
            {"filter", cfg.at("filter")},
            {"graph", cfg.at("graph")},
            {"n", lg.graph.n}};
  run.write_json("metadata.json", meta);
}

void cmd_spectrum(const json& cfg, RunContext& run, std::uint64_t seed) {
  const LoadedGraph lg = load_graph(cfg, seed);
  const SpectralBasis basis = eigendecompose(laplacian(lg.graph));
  io::write_spectrum_csv(run.path("spectrum.csv"), basis.lambdas);
  if (!has(cfg, "/spectrum")) return;
  check_keys(cfg.at("spectrum"), "/spectrum", {"signals"});
  const SignalMatrix Y = io::read_matrix_csv(require_string(cfg, "/spectrum/signals"));
  if (Y.rows() != basis.n())
    throw ValidationError("signals row count does not match the graph");
  const Eigen::MatrixXd mags = gft(basis, Y).cwiseAbs();
  std::ofstream out(run.path("gft_profile.csv"));
  out << "index,lambda,mean_abs,median_abs\n";
  for (Eigen::Index i = 0; i < basis.n(); ++i) {
    std::vector<double> row(mags.row(i).begin(), mags.row(i).end());
    std::nth_element(row.begin(), row.begin() + row.size() / 2, row.end());
    out << i << ',' << io::format_double(basis.lambdas(i)) << ','
        << io::format_double(mags.row(i).mean()) << ','
        << io::format_double(row[row.size() / 2]) << '\n';
  }
}

void cmd_filter(const json& cfg, RunContext& run, std::uint64_t seed) {
  check_keys(at(cfg, "/apply"), "/apply", {"signals"});
  const FilterSpec spec = load_filter(cfg);
  const LoadedGraph lg = load_graph(cfg, seed);
  const SpectralBasis basis = eigendecompose(laplacian(lg.graph));
  const SignalMatrix X = io::read_matrix_csv(require_string(cfg, "/apply/signals"));
  if (X.rows() != basis.n())
    throw ValidationError("signals row count does not match the graph");
  io::write_matrix_csv(run.path("filtered.csv"), apply_spectral(basis, spec, X));
}

void cmd_ratio(const json& cfg, RunContext& run, std::uint64_t seed) {
  check_keys(at(cfg, "/ratio"), "/ratio", {"k"});
  const FilterSpec spec = load_filter(cfg);
  const LoadedGraph lg = load_graph(cfg, seed);
  const SpectralBasis basis = eigendecompose(laplacian(lg.graph));
  const auto k = require_int(cfg, "/ratio/k", 1, basis.n() - 1);
  const double eta =
      low_pass_ratio(frequency_response(spec, basis.lambdas), static_cast<Eigen::Index>(k));
  std::cout << "eta_k = " << io::format_double(eta) << '\n';
  json result{{"k", k}, {"low_pass", eta < 1.0}};
  if (std::isinf(eta))
    result["eta"] = "infinity";
  else
    result["eta"] = eta;
  run.write_json("ratio.json", result);
}

void cmd_sample(const json& cfg, RunContext& run, std::uint64_t seed) {
  check_keys(at(cfg, "/sampling"), "/sampling", {"k", "ns", "export_psi"});
  const LoadedGraph lg = load_graph(cfg, seed);
  const SpectralBasis basis = eigendecompose(laplacian(lg.graph));
  const auto k = require_int(cfg, "/sampling/k", 1, basis.n());
  const auto ns = require_int(cfg, "/sampling/ns", 1, basis.n());
  const Eigen::MatrixXd Uk = basis.U.leftCols(k);
  const auto indices = greedy_select(Uk, static_cast<Eigen::Index>(ns));
  if (!verify_rank(indices, Uk))
    throw ValidationError(
        "sampling set fails the exact-recovery rank condition rank(Phi U_k) = k; "
        "n_s >= k samples covering the low-frequency subspace are required (n_s = " +
        std::to_string(ns) + ", k = " + std::to_string(k) + ")");
  const SamplingPlan plan = build_interpolator(Uk, indices);
  run.write_json("plan.json", io::plan_to_json(plan));
  if (has(cfg, "/sampling/export_psi") && cfg.at("/sampling/export_psi"_json_pointer).get<bool>())
    io::write_matrix_csv(run.path("psi.csv"), plan.psi);
}

void cmd_reconstruct(const json& cfg, RunContext& run, std::uint64_t seed) {
  check_keys(at(cfg, "/reconstruction"), "/reconstruction", {"plan", "signals"});
  const LoadedGraph lg = load_graph(cfg, seed);
  const SpectralBasis basis = eigendecompose(laplacian(lg.graph));
  std::ifstream pin(require_string(cfg, "/reconstruction/plan"));
  if (!pin) throw ValidationError("cannot open sampling plan file");
  json plan_json;
  try {
    plan_json = json::parse(pin);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid sampling plan JSON: ") + e.what());
  }
  const auto k = plan_json.at("k").get<Eigen::Index>();
  if (k < 1 || k > basis.n()) throw ValidationError("sampling plan bandwidth out of range");
  const SamplingPlan plan = io::plan_from_json(plan_json, basis.U.leftCols(k));
  const SignalMatrix Y = io::read_matrix_csv(require_string(cfg, "/reconstruction/signals"));
  if (Y.rows() != basis.n())
    throw ValidationError("signals row count does not match the graph");
  Eigen::MatrixXd Yhat(Y.rows(), Y.cols());
  std::ofstream errs(run.path("errors.csv"));
  errs << "column_index,relative_error\n";
  for (Eigen::Index l = 0; l < Y.cols(); ++l) {
    Eigen::VectorXd ys(static_cast<Eigen::Index>(plan.indices.size()));
    for (std::size_t r = 0; r < plan.indices.size(); ++r)
      ys(static_cast<Eigen::Index>(r)) = Y(plan.indices[r], l);
    Yhat.col(l) = reconstruct(plan, ys);
    const double denom = std::max(Y.col(l).norm(), 1e-300);
    errs << l << ',' << io::format_double((Yhat.col(l) - Y.col(l)).norm() / denom) << '\n';
  }
  io::write_matrix_csv(run.path("reconstructed.csv"), Yhat);
}

void cmd_communities(const json& cfg, RunContext& run, std::uint64_t seed) {
  check_keys(at(cfg, "/communities"), "/communities",
             {"k", "restarts", "method", "signals", "membership", "center"});
  const auto k = require_int(cfg, "/communities/k", 1, 20);
  const auto restarts =
      has(cfg, "/communities/restarts") ? require_int(cfg, "/communities/restarts", 1) : 10;
  const std::string method =
      has(cfg, "/communities/method") ? require_string(cfg, "/communities/method") : "blind";

  CommunityAssignment assignment;
  if (method == "blind") {
    SignalMatrix Y = io::read_matrix_csv(require_string(cfg, "/communities/signals"));
    if (has(cfg, "/communities/center") &&
        cfg.at("/communities/center"_json_pointer).get<bool>())
      Y.colwise() -= Eigen::VectorXd(Y.rowwise().mean());
    assignment = blind_cd(Y, static_cast<int>(k), static_cast<int>(restarts), seed);
  } else if (method == "spectral") {
    const LoadedGraph lg = load_graph(cfg, seed);
    assignment = spectral_clustering(laplacian(lg.graph), static_cast<int>(k),
                                     static_cast<int>(restarts), seed);
  } else {
    config_fail("/communities/method", "must be 'blind' or 'spectral'");
  }
  io::write_assignment_csv(run.path("labels.csv"), assignment.labels);

  json result{{"k", k}, {"method", method}, {"objective", assignment.objective}};
  if (has(cfg, "/communities/membership")) {
    const std::vector<int> truth =
        io::read_assignment_csv(require_string(cfg, "/communities/membership"));
    if (truth.size() != assignment.labels.size())
      throw ValidationError("membership file must have one (node,label) row per node");
    result["accuracy"] =
        permutation_accuracy(assignment.labels, truth, static_cast<int>(k));
  }
  run.write_json("result.json", result);
}

void cmd_learn_graph(const json& cfg, RunContext& run, std::uint64_t) {
  check_keys(at(cfg, "/learning"), "/learning",
             {"signals", "sigma", "beta_reg", "max_iter", "tol"});
  const SignalMatrix Y = io::read_matrix_csv(require_string(cfg, "/learning/signals"));
  const double sigma = require_number(cfg, "/learning/sigma", 1e-12);
  const double beta_reg =
      has(cfg, "/learning/beta_reg") ? require_number(cfg, "/learning/beta_reg", 0.0) : 0.5;
  const auto max_iter =
      has(cfg, "/learning/max_iter") ? require_int(cfg, "/learning/max_iter", 1) : 50;
  const double tol =
      has(cfg, "/learning/tol") ? require_number(cfg, "/learning/tol", 0.0) : 1e-6;
  const LearnedLaplacian fit =
      learn_topology(Y, sigma, beta_reg, static_cast<int>(max_iter), tol);
  io::write_matrix_csv(run.path("learned_laplacian.csv"), fit.values);
  std::ofstream hist(run.path("history.csv"));
  hist << "iteration,objective\n";
  for (std::size_t i = 0; i < fit.history.size(); ++i)
    hist << i << ',' << io::format_double(fit.history[i]) << '\n';
  run.write_json("result.json",
                 json{{"iterations", fit.history.size()},
                      {"max_trace_error", fit.max_trace_error},
                      {"max_rowsum_error", fit.max_rowsum_error},
                      {"max_offdiag_violation", fit.max_offdiag_violation}});
}

void cmd_interpolate(const json& cfg, RunContext& run, std::uint64_t seed) {
  check_keys(at(cfg, "/interpolation"), "/interpolation", {"samples", "mask", "gamma", "tol"});
  const LoadedGraph lg = load_graph(cfg, seed);
  const LaplacianMatrix L = laplacian(lg.graph);
  const Eigen::MatrixXd Ysamp =
      io::read_trajectory_csv(require_string(cfg, "/interpolation/samples"));
  const Eigen::MatrixXd mask_values =
      io::read_matrix_csv(require_string(cfg, "/interpolation/mask"));
  if (mask_values.rows() != Ysamp.rows() || mask_values.cols() != Ysamp.cols())
    throw ValidationError("mask shape does not match the sampled trajectory");
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask(mask_values.rows(),
                                                           mask_values.cols());
  for (Eigen::Index i = 0; i < mask_values.size(); ++i) {
    if (mask_values(i) != 0.0 && mask_values(i) != 1.0)
      throw ValidationError("mask entries must be 0 or 1");
    mask(i) = mask_values(i) == 1.0;
  }
  const double gamma = require_number(cfg, "/interpolation/gamma", 0.0);
  const double tol =
      has(cfg, "/interpolation/tol") ? require_number(cfg, "/interpolation/tol", 0.0) : 1e-8;
  io::write_trajectory_csv(run.path("completed.csv"),
                           interpolate_time_vertex(Ysamp, mask, L, gamma, tol));
}

void cmd_detect(const json& cfg, RunContext& run, std::uint64_t seed) {
  check_keys(at(cfg, "/anomaly"), "/anomaly",
             {"k", "train", "test", "quantile", "entry_threshold"});
  const LoadedGraph lg = load_graph(cfg, seed);
  const SpectralBasis basis = eigendecompose(laplacian(lg.graph));
  const auto k = require_int(cfg, "/anomaly/k", 1, basis.n() - 1);
  const double quantile =
      has(cfg, "/anomaly/quantile") ? require_number(cfg, "/anomaly/quantile", 1e-12, 1.0)
                                    : 0.95;
  const SignalMatrix train = io::read_matrix_csv(require_string(cfg, "/anomaly/train"));
  const SignalMatrix test = io::read_matrix_csv(require_string(cfg, "/anomaly/test"));
  if (train.rows() != basis.n() || test.rows() != basis.n())
    throw ValidationError("signal row counts do not match the graph");
  const double delta =
      calibrate_threshold(basis, static_cast<Eigen::Index>(k), train, quantile);
  std::vector<DetectionResult> results;
  results.reserve(static_cast<std::size_t>(test.cols()));
  for (Eigen::Index l = 0; l < test.cols(); ++l)
    results.push_back(
        detect(hpf_statistic(basis, static_cast<Eigen::Index>(k), test.col(l)), delta));
  io::write_detections_csv(run.path("detections.csv"), results);
  if (has(cfg, "/anomaly/entry_threshold")) {
    const double entry = require_number(cfg, "/anomaly/entry_threshold", 0.0);
    std::ofstream loc(run.path("localization.csv"));
    loc << "column_index,node\n";
    for (Eigen::Index l = 0; l < test.cols(); ++l) {
      if (results[static_cast<std::size_t>(l)].decision != Hypothesis::kAnomaly) continue;
      for (Eigen::Index node :
           localize(basis, static_cast<Eigen::Index>(k), test.col(l), entry))
        loc << l << ',' << node << '\n';
    }
  }
  run.write_json("threshold.json", json{{"k", k}, {"quantile", quantile}, {"delta", delta}});
}

void emit_error(int code, const std::string& kind, const std::string& message) {
  std::cerr << json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump()
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"low-pass graph signal processing batch tool"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::int64_t seed_override = -1;
  int threads = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"generate", "draw i.i.d. low-pass graph signals and write them with a metadata sidecar"},
      {"spectrum", "export the graph spectrum and, optionally, a GFT magnitude profile"},
      {"filter", "apply the configured graph filter to signals from a CSV"},
      {"ratio", "evaluate the low-pass ratio eta_k of the configured filter"},
      {"sample", "select a sampling set greedily and build its interpolator"},
      {"reconstruct", "sample and reconstruct signals with a stored plan"},
      {"communities", "detect communities blindly from signals or spectrally from the graph"},
      {"learn-graph", "fit a Laplacian to smooth signals"},
      {"interpolate", "fill in missing time-vertex samples"},
      {"detect", "calibrate a high-pass threshold and flag anomalous signals"}};
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "experiment config JSON")->required();
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed_override, "override the config seed");
    sub->add_option("--threads", threads, "worker threads (results are identical)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error(1, "usage", e.what());
    return 1;
  }

  try {
    if (threads > 0) Eigen::setNbThreads(threads);
    json cfg = load_config(config_path);
    if (seed_override >= 0) cfg["seed"] = seed_override;
    const auto seed = static_cast<std::uint64_t>(cfg.at("seed").get<std::int64_t>());
    const std::string name = app.get_subcommands().front()->get_name();
    RunContext run(name, cfg, out_dir);
    if (name == "generate")
      cmd_generate(cfg, run, seed);
    else if (name == "spectrum")
      cmd_spectrum(cfg, run, seed);
    else if (name == "filter")
      cmd_filter(cfg, run, seed);
    else if (name == "ratio")
      cmd_ratio(cfg, run, seed);
    else if (name == "sample")
      cmd_sample(cfg, run, seed);
    else if (name == "reconstruct")
      cmd_reconstruct(cfg, run, seed);
    else if (name == "communities")
      cmd_communities(cfg, run, seed);
    else if (name == "learn-graph")
      cmd_learn_graph(cfg, run, seed);
    else if (name == "interpolate")
      cmd_interpolate(cfg, run, seed);
    else if (name == "detect")
      cmd_detect(cfg, run, seed);
    run.finish();
  } catch (const ConfigError& e) {
    emit_error(1, "config", e.what());
    return 1;
  } catch (const json::exception& e) {
    emit_error(1, "config", e.what());
    return 1;
  } catch (const ValidationError& e) {
    emit_error(2, "data", e.what());
    return 2;
  } catch (const NumericalError& e) {
    emit_error(3, "numeric", e.what());
    return 3;
  }
  return 0;
}
