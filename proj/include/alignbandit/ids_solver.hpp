#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "alignbandit/random.hpp"

namespace alignbandit {

// Probability mass over action ordinals. Entries have positive probability.
struct ActionDistribution {
  struct Entry {
    std::size_t index = 0;
    double probability = 0.0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> support;

  static ActionDistribution point(std::size_t index) { return {{{index, 1.0}}}; }

  double total() const {
    double s = 0.0;
    for (const auto& e : support) s += e.probability;
    return s;
  }

  // Consumes exactly one uniform regardless of support size.
  std::size_t sample(Rng& rng) const {
    if (support.empty()) throw std::logic_error("ActionDistribution::sample: empty support");
    const double u = rng.uniform();
    double acc = 0.0;
    for (const auto& e : support) {
      acc += e.probability;
      if (u < acc) return e.index;
    }
    return support.back().index;
  }

  friend bool operator==(const ActionDistribution&, const ActionDistribution&) = default;
};

// Ratios closer than this are treated as tied.
inline constexpr double kRatioTieTolerance = 1e-12;

struct PairSolution {
  double q = 1.0;  // probability on the first action
  double ratio = 0.0;
};

// (q·d1 + (1−q)·d2)² / (q·g1 + (1−q)·g2)
inline double pair_ratio(double d1, double g1, double d2, double g2, double q) {
  const double shortfall = q * d1 + (1.0 - q) * d2;
  const double gain = q * g1 + (1.0 - q) * g2;
  return shortfall * shortfall / gain;
}

// Minimizes pair_ratio over q ∈ [0, 1].
//
// With D(q) = d2 + q·(d1 − d2) and G(q) = g2 + q·(g1 − g2),
//   f'(q) = D·(2·(d1 − d2)·G − (g1 − g2)·D) / G²,
// so the interior critical points are the root of D and the root of the
// second factor, q = d2/(d1 − d2) − 2·g2/(g1 − g2). The minimum is at one of
// those or at an endpoint. Ties go to the larger q.
inline PairSolution minimize_pair(double d1, double g1, double d2, double g2) {
  if (!(g1 > 0.0) || !(g2 > 0.0)) throw std::invalid_argument("minimize_pair: gains must be positive");
  if (!(d1 >= 0.0) || !(d2 >= 0.0)) throw std::invalid_argument("minimize_pair: shortfalls must be non-negative");

  std::array<double, 4> candidates{1.0, 0.0, -1.0, -1.0};
  const double dd = d1 - d2;
  const double dg = g1 - g2;
  if (dd != 0.0) {
    candidates[2] = -d2 / dd;
    if (dg != 0.0) candidates[3] = d2 / dd - 2.0 * g2 / dg;
  }

  PairSolution best{1.0, pair_ratio(d1, g1, d2, g2, 1.0)};
  for (double q : candidates) {
    if (!(q >= 0.0 && q <= 1.0)) continue;
    const double r = pair_ratio(d1, g1, d2, g2, q);
    if (r < best.ratio - kRatioTieTolerance ||
        (std::abs(r - best.ratio) <= kRatioTieTolerance && q > best.q)) {
      best = {q, r};
    }
  }
  return best;
}

struct InfoRatioSolution {
  ActionDistribution distribution;
  double ratio = 0.0;
};

// Minimizes the information ratio (Σ p·Δ)² / (Σ p·g) over distributions on
// the actions. An optimum with at most two support points always exists, so
// every singleton and unordered pair is solved exactly and the best kept.
// Ties: lower ratio, then lower first index, then lower second index, then
// larger mass on the first action.
inline InfoRatioSolution minimize_info_ratio(std::span<const double> deltas, std::span<const double> gains) {
  if (deltas.empty()) throw std::invalid_argument("minimize_info_ratio: empty input");
  if (deltas.size() != gains.size()) throw std::invalid_argument("minimize_info_ratio: size mismatch");
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!(gains[i] > 0.0)) throw std::invalid_argument("minimize_info_ratio: gains must be positive");
    if (!(deltas[i] >= 0.0)) throw std::invalid_argument("minimize_info_ratio: shortfalls must be non-negative");
  }
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (deltas[i] == 0.0) return {ActionDistribution::point(i), 0.0};
  }

  std::size_t best_i = 0;
  std::size_t best_j = 0;
  PairSolution best{1.0, deltas[0] * deltas[0] / gains[0]};
  auto consider = [&](std::size_t i, std::size_t j, PairSolution s) {
    if (s.ratio < best.ratio - kRatioTieTolerance) {
      best = s;
      best_i = i;
      best_j = j;
    }
  };
  const std::size_t n = deltas.size();
  for (std::size_t i = 0; i < n; ++i) {
    consider(i, i, {1.0, deltas[i] * deltas[i] / gains[i]});
    for (std::size_t j = i + 1; j < n; ++j) {
      consider(i, j, minimize_pair(deltas[i], gains[i], deltas[j], gains[j]));
    }
  }

  InfoRatioSolution out;
  out.ratio = best.ratio;
  if (best_i == best_j || best.q >= 1.0) {
    out.distribution = ActionDistribution::point(best_i);
  } else if (best.q <= 0.0) {
    out.distribution = ActionDistribution::point(best_j);
  } else {
    out.distribution.support = {{best_i, best.q}, {best_j, 1.0 - best.q}};
  }
  return out;
}

}  // namespace alignbandit
