#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "alignbandit/harness/experiment.hpp"
#include "alignbandit/ids_solver.hpp"
#include "alignbandit/infotheory.hpp"
#include "alignbandit/oracles.hpp"

namespace alignbandit {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed deviation or statistic
  double threshold = 0.0;  // pass limit for `measured`
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

inline nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json j;
  j["passed"] = report.passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : report.checks) {
    j["checks"].push_back(
        {{"name", c.name}, {"passed", c.passed}, {"measured", c.measured}, {"threshold", c.threshold}, {"detail", c.detail}});
  }
  return j;
}

using MiFunction = std::function<double(double, double)>;

inline CheckResult check_digamma() {
  // ψ(1) = −γ, ψ(2) = 1 − γ, ψ(1/2) = −γ − 2 ln 2.
  constexpr double gamma = 0.57721566490153286061;
  const double worst = std::max({std::abs(digamma(1.0) + gamma), std::abs(digamma(2.0) - (1.0 - gamma)),
                                 std::abs(digamma(0.5) - (-gamma - 2.0 * std::log(2.0)))});
  return {"digamma_reference", worst <= 1e-10, worst, 1e-10, "psi(1), psi(2), psi(1/2)"};
}

// Closed-form MI against quadrature over integer α, β ∈ [1, 64] and `random_pairs`
// real pairs in (0.5, 100].
inline CheckResult check_mi_oracle(const MiFunction& mi = [](double a, double b) { return beta_bernoulli_mi(a, b); },
                                   std::size_t random_pairs = 100, std::uint64_t seed = 7) {
  double worst = 0.0;
  std::string where;
  auto probe = [&](double a, double b) {
    const double diff = std::abs(mi(a, b) - oracle::beta_bernoulli_mi_quadrature(a, b));
    if (!(diff <= worst)) {
      worst = diff;
      where = "alpha=" + format_double(a) + " beta=" + format_double(b);
    }
  };
  for (int a = 1; a <= 64; ++a) {
    for (int b = 1; b <= 64; ++b) probe(a, b);
  }
  Rng rng(seed);
  for (std::size_t k = 0; k < random_pairs; ++k) {
    const double a = 100.0 - 99.5 * rng.uniform();
    const double b = 100.0 - 99.5 * rng.uniform();
    probe(a, b);
  }
  return {"mi_closed_form_vs_quadrature", worst <= 1e-8, worst, 1e-8, "worst at " + where};
}

// 1/(4(α+β)) ≤ I ≤ 1/(2(α+β)) on integer α, β ∈ [1, max_param]. `measured`
// is the most negative slack (≥ 0 means the bounds hold).
inline CheckResult check_mi_bounds(const MiFunction& mi = [](double a, double b) { return beta_bernoulli_mi(a, b); },
                                   int max_param = 200) {
  double worst_slack = std::numeric_limits<double>::infinity();
  std::size_t violations = 0;
  for (int a = 1; a <= max_param; ++a) {
    for (int b = 1; b <= max_param; ++b) {
      const double s = a + b;
      const double i = mi(a, b);
      const double slack = std::min(i - 1.0 / (4.0 * s), 1.0 / (2.0 * s) - i);
      worst_slack = std::min(worst_slack, slack);
      if (slack < 0.0) ++violations;
    }
  }
  return {"mi_bounds", violations == 0, worst_slack, 0.0, std::to_string(violations) + " violations"};
}

// Solver ratio against the brute-force pair grid on random instances.
inline CheckResult check_solver_vs_grid(std::size_t instances = 200, double q_step = 1e-3, std::uint64_t seed = 11) {
  Rng rng(seed);
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t bad_support = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(31));
    std::vector<double> deltas(n), gains(n);
    for (std::size_t i = 0; i < n; ++i) {
      deltas[i] = 2.0 * rng.uniform();
      gains[i] = 1e-4 + (0.25 - 1e-4) * rng.uniform();
    }
    const auto sol = minimize_info_ratio(deltas, gains);
    if (sol.distribution.support.size() > 2) ++bad_support;
    worst = std::max(worst, sol.ratio - oracle::grid_oracle(deltas, gains, q_step));
  }
  return {"ids_solver_vs_grid_oracle", worst <= 1e-6 && bad_support == 0, worst, 1e-6,
          std::to_string(bad_support) + " supports larger than 2"};
}

// Thompson sampling never queries and picks arms uniformly when θ is never
// observed. N = 16, T = 1e4, 10 seeds; `measured` is the worst
// |frequency − 1/16|.
inline CheckResult check_ts_uniformity(std::uint64_t base_seed = 0) {
  ExperimentConfig cfg;
  cfg.arms = 16;
  cfg.horizon = 10'000;
  cfg.seeds = 10;
  cfg.base_seed = base_seed;
  cfg.agents = {AgentSpec::thompson()};
  RunOptions opts;
  opts.write_files = false;
  opts.threads = 1;
  const auto result = run_experiment(cfg, opts);
  std::vector<double> counts(2 * cfg.arms, 0.0);
  double total = 0.0;
  for (const auto& tr : result.traces[0]) {
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += static_cast<double>(tr.action_counts[k]);
    total += static_cast<double>(tr.steps);
  }
  double queries = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < cfg.arms; ++k) worst = std::max(worst, std::abs(counts[k] / total - 1.0 / 16.0));
  for (std::size_t k = cfg.arms; k < counts.size(); ++k) queries += counts[k];
  return {"ts_uniform_arms_no_queries", queries == 0.0 && worst <= 0.02, worst, 0.02,
          format_double(queries) + " queries"};
}

inline VerifyReport verify() {
  VerifyReport report;
  report.checks.push_back(check_digamma());
  report.checks.push_back(check_mi_oracle());
  report.checks.push_back(check_mi_bounds());
  report.checks.push_back(check_solver_vs_grid());
  report.checks.push_back(check_ts_uniformity());
  return report;
}

}  // namespace alignbandit
