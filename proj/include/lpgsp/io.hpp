#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lpgsp/anomaly.hpp"
#include "lpgsp/errors.hpp"
#include "lpgsp/filters.hpp"
#include "lpgsp/graph.hpp"
#include "lpgsp/sampling.hpp"

namespace lpgsp::io {

/// Shortest decimal string that round-trips the double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ValidationError("could not parse number '" + std::string(s) + "' in " + where);
  return v;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    cells.push_back(cell);
  }
  return cells;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  return out;
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace detail

inline void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& M) {
  auto out = detail::open_out(path);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out << ',';
      out << format_double(M(i, j));
    }
    out << '\n';
  }
}

inline Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto in = detail::open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv_line(line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_double(c, path));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError("ragged CSV rows in '" + path + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("empty CSV file '" + path + "'");
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return M;
}

/// Adjacency CSV: n rows of n comma-separated weights, no header. Rejected
/// unless symmetric within 1e-12; symmetrized exactly on load.
inline Graph read_adjacency_csv(const std::string& path) {
  Eigen::MatrixXd M = read_matrix_csv(path);
  if (M.rows() != M.cols())
    throw ValidationError("adjacency matrix in '" + path + "' is not square");
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("adjacency matrix in '" + path + "' is not symmetric within 1e-12");
  M = 0.5 * (M + M.transpose());
  return make_graph(std::move(M));
}

inline void write_adjacency_csv(const std::string& path, const Graph& g) {
  write_matrix_csv(path, g.weights);
}

/// Trajectory CSV: one row per node, header row "t0,t1,...".
inline void write_trajectory_csv(const std::string& path, const Eigen::MatrixXd& Y) {
  auto out = detail::open_out(path);
  for (Eigen::Index t = 0; t < Y.cols(); ++t) {
    if (t) out << ',';
    out << 't' << t;
  }
  out << '\n';
  for (Eigen::Index i = 0; i < Y.rows(); ++i) {
    for (Eigen::Index t = 0; t < Y.cols(); ++t) {
      if (t) out << ',';
      out << format_double(Y(i, t));
    }
    out << '\n';
  }
}

inline Eigen::MatrixXd read_trajectory_csv(const std::string& path) {
  auto in = detail::open_in(path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("t0", 0) != 0)
    throw ValidationError("trajectory CSV '" + path + "' is missing its t0,t1,... header");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv_line(line);
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_double(c, path));
    if (!rows.empty() && row.size() != rows.front().size())
      throw ValidationError("ragged CSV rows in '" + path + "'");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("trajectory CSV '" + path + "' has no data rows");
  Eigen::MatrixXd M(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return M;
}

/// Spectrum CSV with columns (index, lambda).
inline void write_spectrum_csv(const std::string& path, const Eigen::VectorXd& lambdas) {
  auto out = detail::open_out(path);
  out << "index,lambda\n";
  for (Eigen::Index i = 0; i < lambdas.size(); ++i)
    out << i << ',' << format_double(lambdas(i)) << '\n';
}

/// Assignment CSV with columns (node, label).
inline void write_assignment_csv(const std::string& path, const std::vector<int>& labels) {
  auto out = detail::open_out(path);
  out << "node,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i)
    out << i << ',' << labels[i] << '\n';
}

inline std::vector<int> read_assignment_csv(const std::string& path) {
  auto in = detail::open_in(path);
  std::string line;
  if (!std::getline(in, line) || detail::split_csv_line(line) != std::vector<std::string>{"node", "label"})
    throw ValidationError("assignment CSV '" + path + "' is missing its node,label header");
  std::vector<std::pair<long, int>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != 2) throw ValidationError("malformed assignment row in '" + path + "'");
    rows.emplace_back(static_cast<long>(parse_double(cells[0], path)),
                      static_cast<int>(parse_double(cells[1], path)));
  }
  std::vector<int> labels(rows.size(), 0);
  for (const auto& [node, label] : rows) {
    if (node < 0 || node >= static_cast<long>(rows.size()))
      throw ValidationError("node index out of range in '" + path + "'");
    labels[static_cast<std::size_t>(node)] = label;
  }
  return labels;
}

/// Detection report CSV: (column_index, statistic, threshold, decision);
/// decision is 1 under the anomaly hypothesis, 0 under the null.
inline void write_detections_csv(const std::string& path,
                                 const std::vector<DetectionResult>& results) {
  auto out = detail::open_out(path);
  out << "column_index,statistic,threshold,decision\n";
  for (std::size_t l = 0; l < results.size(); ++l)
    out << l << ',' << format_double(results[l].statistic) << ','
        << format_double(results[l].threshold) << ','
        << (results[l].decision == Hypothesis::kAnomaly ? 1 : 0) << '\n';
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

inline nlohmann::json filter_to_json(const FilterSpec& spec) {
  using nlohmann::json;
  struct Visitor {
    json operator()(const PolynomialFilter& f) const {
      return json{{"kind", "polynomial"}, {"coeffs", f.coeffs}};
    }
    json operator()(const ResponseTable& f) const {
      std::vector<double> v(f.values.data(), f.values.data() + f.values.size());
      return json{{"kind", "response"}, {"values", v}};
    }
    json operator()(const IdealLowPass& f) const {
      return json{{"kind", "ideal_low_pass"}, {"k", f.k}};
    }
    json operator()(const IdealHighPass& f) const {
      return json{{"kind", "ideal_high_pass"}, {"k", f.k}};
    }
    json operator()(const DiffusionFilter& f) const {
      return json{{"kind", "diffusion"}, {"t_sigma", f.t_sigma}};
    }
    json operator()(const ResolventFilter& f) const {
      return json{{"kind", "resolvent"}, {"alpha", f.alpha}};
    }
    json operator()(const Order1Filter&) const { return json{{"kind", "order1"}}; }
    json operator()(const FinanceEquilibrium& f) const {
      return json{{"kind", "finance_equilibrium"},
                  {"beta", f.beta},
                  {"inner", filter_to_json(*f.inner)}};
    }
  };
  return std::visit(Visitor{}, spec.node());
}

inline FilterSpec filter_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("filter spec must be an object with a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "polynomial")
      return FilterSpec::polynomial(j.at("coeffs").get<std::vector<double>>());
    if (kind == "response") {
      const auto v = j.at("values").get<std::vector<double>>();
      return FilterSpec::response(
          Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
    }
    if (kind == "ideal_low_pass")
      return FilterSpec::ideal_low_pass(j.at("k").get<Eigen::Index>());
    if (kind == "ideal_high_pass")
      return FilterSpec::ideal_high_pass(j.at("k").get<Eigen::Index>());
    if (kind == "diffusion") return FilterSpec::diffusion(j.at("t_sigma").get<double>());
    if (kind == "resolvent") return FilterSpec::resolvent(j.at("alpha").get<double>());
    if (kind == "order1") return FilterSpec::order1();
    if (kind == "finance_equilibrium")
      return FilterSpec::finance_equilibrium(j.at("beta").get<double>(),
                                             filter_from_json(j.at("inner")));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed '" + kind + "' filter spec: " + e.what());
  }
  throw ConfigError("unknown filter kind '" + kind + "'");
}

inline nlohmann::json plan_to_json(const SamplingPlan& plan) {
  return nlohmann::json{{"k", plan.k}, {"indices", plan.indices}};
}

/// Parses {"k":..., "indices":[...]} and rebuilds psi against the given basis
/// columns.
inline SamplingPlan plan_from_json(const nlohmann::json& j, const Eigen::MatrixXd& Uk) {
  if (!j.is_object() || !j.contains("k") || !j.contains("indices"))
    throw ConfigError("sampling plan must be an object with 'k' and 'indices'");
  const auto k = j.at("k").get<Eigen::Index>();
  if (k != Uk.cols()) throw ValidationError("sampling plan bandwidth does not match the basis");
  const auto indices = j.at("indices").get<std::vector<Eigen::Index>>();
  return build_interpolator(Uk, indices);
}

}  // namespace lpgsp::io
