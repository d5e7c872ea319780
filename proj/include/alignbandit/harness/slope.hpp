#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "alignbandit/harness/experiment.hpp"

namespace alignbandit {

// Least-squares slope of ln(mean_cum_regret) against ln(t) over checkpoints
// with t in [t_min, t_max].
inline double loglog_slope(const AggregateCurve& curve, std::uint64_t t_min, std::uint64_t t_max) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t n = 0;
  for (const auto& p : curve.points) {
    if (p.t < t_min || p.t > t_max) continue;
    if (!(p.mean_cum_regret > 0.0)) {
      throw std::domain_error("loglog_slope: non-positive regret at t=" + std::to_string(p.t));
    }
    const double x = std::log(static_cast<double>(p.t));
    const double y = std::log(p.mean_cum_regret);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("loglog_slope: fewer than two checkpoints in window");
  const double nn = static_cast<double>(n);
  const double denom = nn * sxx - sx * sx;
  if (!(denom > 0.0)) throw std::invalid_argument("loglog_slope: degenerate window");
  return (nn * sxy - sx * sy) / denom;
}

// Value of the curve at checkpoint t, if recorded.
inline const AggregatePoint* find_point(const AggregateCurve& curve, std::uint64_t t) {
  for (const auto& p : curve.points) {
    if (p.t == t) return &p;
  }
  return nullptr;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

}  // namespace detail

// Reads either an aggregate CSV (one curve per agent_id) or a raw trace CSV
// (one curve per agent_id and seed, built from cum_regret).
inline std::vector<AggregateCurve> read_curves_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
  const auto header = detail::split_csv_line(line);
  auto column = [&](const std::string& name) -> long {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<long>(i);
    }
    return -1;
  };
  const long agent_col = column("agent_id");
  const long t_col = column("t");
  const long mean_col = column("mean_cum_regret");
  const long cum_col = column("cum_regret");
  const long seed_col = column("seed");
  const bool is_aggregate = mean_col >= 0;
  if (agent_col < 0 || t_col < 0 || (!is_aggregate && (cum_col < 0 || seed_col < 0))) {
    throw std::runtime_error(path.string() + ": not an aggregate or trace CSV");
  }

  std::map<std::string, std::size_t> index;
  std::vector<AggregateCurve> curves;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cells = detail::split_csv_line(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": wrong column count");
    }
    const std::string key = is_aggregate ? cells[agent_col] : cells[agent_col] + "_seed" + cells[seed_col];
    auto [it, inserted] = index.try_emplace(key, curves.size());
    if (inserted) curves.push_back({key, {}});
    AggregatePoint p;
    try {
      p.t = std::stoull(cells[t_col]);
      p.mean_cum_regret = std::stod(cells[is_aggregate ? mean_col : cum_col]);
      p.n_seeds = 1;
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
    curves[it->second].points.push_back(p);
  }
  return curves;
}

}  // namespace alignbandit
