#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alignbandit/core.hpp"
#include "alignbandit/ids_solver.hpp"
#include "alignbandit/infotheory.hpp"
#include "alignbandit/random.hpp"

namespace alignbandit {

enum class AgentKind { RewardGreedy, InfoGreedy, ExploreThenExploit, EpsilonGreedy, Thompson, MixedTS, IDS };

// Policy selection plus its parameters. A parameter is set iff the kind uses it.
struct AgentSpec {
  AgentKind kind = AgentKind::Thompson;
  std::optional<std::uint64_t> tau;          // ExploreThenExploit
  std::optional<double> epsilon;             // EpsilonGreedy, MixedTS
  std::optional<std::size_t> mc_samples;     // IDS

  static AgentSpec reward_greedy() { return {AgentKind::RewardGreedy, {}, {}, {}}; }
  static AgentSpec info_greedy() { return {AgentKind::InfoGreedy, {}, {}, {}}; }
  static AgentSpec explore_then_exploit(std::uint64_t tau) { return {AgentKind::ExploreThenExploit, tau, {}, {}}; }
  static AgentSpec epsilon_greedy(double eps) { return {AgentKind::EpsilonGreedy, {}, eps, {}}; }
  static AgentSpec thompson() { return {AgentKind::Thompson, {}, {}, {}}; }
  static AgentSpec mixed_ts(double eps) { return {AgentKind::MixedTS, {}, eps, {}}; }
  static AgentSpec ids(std::size_t samples = kDefaultMcSamples) { return {AgentKind::IDS, {}, {}, samples}; }

  bool needs_tau() const { return kind == AgentKind::ExploreThenExploit; }
  bool needs_epsilon() const { return kind == AgentKind::EpsilonGreedy || kind == AgentKind::MixedTS; }
  bool needs_mc_samples() const { return kind == AgentKind::IDS; }

  void validate() const {
    if (tau.has_value() != needs_tau()) throw std::invalid_argument("agent spec: tau is only valid for ete");
    if (epsilon.has_value() != needs_epsilon()) {
      throw std::invalid_argument("agent spec: epsilon is only valid for egreedy and mixed_ts");
    }
    if (mc_samples.has_value() != needs_mc_samples()) {
      throw std::invalid_argument("agent spec: mc_samples is only valid for ids");
    }
    if (epsilon && !(*epsilon >= 0.0 && *epsilon <= 1.0)) throw std::invalid_argument("agent spec: epsilon must be in [0, 1]");
    if (mc_samples && *mc_samples == 0) throw std::invalid_argument("agent spec: mc_samples must be positive");
  }

  friend bool operator==(const AgentSpec&, const AgentSpec&) = default;
};

inline std::string kind_name(AgentKind kind) {
  switch (kind) {
    case AgentKind::RewardGreedy: return "reward_greedy";
    case AgentKind::InfoGreedy: return "info_greedy";
    case AgentKind::ExploreThenExploit: return "ete";
    case AgentKind::EpsilonGreedy: return "egreedy";
    case AgentKind::Thompson: return "ts";
    case AgentKind::MixedTS: return "mixed_ts";
    case AgentKind::IDS: return "ids";
  }
  return "unknown";
}

inline std::optional<AgentKind> parse_kind(const std::string& name) {
  for (auto k : {AgentKind::RewardGreedy, AgentKind::InfoGreedy, AgentKind::ExploreThenExploit,
                 AgentKind::EpsilonGreedy, AgentKind::Thompson, AgentKind::MixedTS, AgentKind::IDS}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

// Identifier used in CSV output, e.g. "ete_tau3200", "egreedy_eps0.1".
inline std::string agent_id(const AgentSpec& spec) {
  std::string id = kind_name(spec.kind);
  if (spec.tau) id += "_tau" + std::to_string(*spec.tau);
  if (spec.epsilon) {
    std::string eps = std::to_string(*spec.epsilon);
    while (eps.size() > 1 && eps.back() == '0') eps.pop_back();
    if (!eps.empty() && eps.back() == '.') eps.pop_back();
    id += "_eps" + eps;
  }
  if (spec.mc_samples && *spec.mc_samples != kDefaultMcSamples) id += "_m" + std::to_string(*spec.mc_samples);
  return id;
}

// Ties everywhere go to the lowest ordinal: env arms 0..N-1, then queries.

inline Action reward_greedy_act(const BeliefState& b) {
  // Queries score −1 and every arm scores ≥ 0, so only arms can win.
  std::size_t best = 0;
  double best_reward = b.expected_reward(0);
  for (std::size_t i = 1; i < b.arms(); ++i) {
    const double r = b.expected_reward(i);
    if (r > best_reward) {
      best_reward = r;
      best = i;
    }
  }
  return Action::env(best);
}

inline Action info_greedy_act(const BeliefState& b) {
  std::size_t best = 0;
  double best_gain = info_gain(b, Action::from_ordinal(0, b.arms()));
  for (std::size_t k = 1; k < b.num_actions(); ++k) {
    const double g = info_gain(b, Action::from_ordinal(k, b.arms()));
    if (g > best_gain) {
      best_gain = g;
      best = k;
    }
  }
  return Action::from_ordinal(best, b.arms());
}

// Information-greedy while t ≤ tau, reward-greedy afterwards.
inline Action explore_then_exploit_act(const BeliefState& b, std::uint64_t t, std::uint64_t tau) {
  return t <= tau ? info_greedy_act(b) : reward_greedy_act(b);
}

inline Action uniform_act(const BeliefState& b, Rng& rng) {
  return Action::from_ordinal(static_cast<std::size_t>(rng.below(b.num_actions())), b.arms());
}

// Uniform over all 2N actions with probability epsilon, else reward-greedy.
// epsilon = 0 draws nothing, so it reproduces reward-greedy exactly.
inline Action epsilon_greedy_act(const BeliefState& b, double epsilon, Rng& rng) {
  if (epsilon > 0.0 && rng.uniform() < epsilon) return uniform_act(b, rng);
  return reward_greedy_act(b);
}

// Arm index maximizing the sampled reward. Draw order: φ̂_0, θ̂_0, φ̂_1, ...
inline std::size_t thompson_arm(const BeliefState& b, Rng& rng) {
  std::size_t best = 0;
  double best_reward = -1.0;
  for (std::size_t i = 0; i < b.arms(); ++i) {
    const double phi = rng.beta(b.env(i).alpha, b.env(i).beta);
    const double theta = rng.beta(b.pref(i).alpha, b.pref(i).beta);
    const double r = alignment_reward(phi, theta);
    if (r > best_reward) {
      best_reward = r;
      best = i;
    }
  }
  return best;
}

// A sampled query always scores −1 < any sampled arm, so TS never queries.
inline Action thompson_act(const BeliefState& b, Rng& rng) { return Action::env(thompson_arm(b, rng)); }

// Thompson arm a, then ā with probability epsilon. epsilon ∈ {0, 1} draws no
// extra uniform.
inline Action mixed_ts_act(const BeliefState& b, double epsilon, Rng& rng) {
  const std::size_t arm = thompson_arm(b, rng);
  const bool query = epsilon >= 1.0 || (epsilon > 0.0 && rng.uniform() < epsilon);
  return query ? Action::query(arm) : Action::env(arm);
}

// The IDS action distribution for the current belief, over action ordinals.
inline InfoRatioSolution ids_distribution(const BeliefState& b, std::size_t mc_samples, Rng& rng) {
  const double r_star_hat = estimate_optimal_reward(b, mc_samples, rng);
  const auto deltas = expected_shortfalls(b, r_star_hat);
  const auto gains = info_gains(b);
  return minimize_info_ratio(deltas, gains);
}

inline Action ids_act(const BeliefState& b, std::size_t mc_samples, Rng& rng) {
  const auto solution = ids_distribution(b, mc_samples, rng);
  return Action::from_ordinal(solution.distribution.sample(rng), b.arms());
}

// Uniform agent contract. Inputs are the belief (which carries the step
// index), the spec, and the agent's own random stream.
inline Action act(const AgentSpec& spec, const BeliefState& b, Rng& rng) {
  switch (spec.kind) {
    case AgentKind::RewardGreedy: return reward_greedy_act(b);
    case AgentKind::InfoGreedy: return info_greedy_act(b);
    case AgentKind::ExploreThenExploit: return explore_then_exploit_act(b, b.t(), spec.tau.value());
    case AgentKind::EpsilonGreedy: return epsilon_greedy_act(b, spec.epsilon.value(), rng);
    case AgentKind::Thompson: return thompson_act(b, rng);
    case AgentKind::MixedTS: return mixed_ts_act(b, spec.epsilon.value(), rng);
    case AgentKind::IDS: return ids_act(b, spec.mc_samples.value(), rng);
  }
  throw std::logic_error("act: unknown agent kind");
}

}  // namespace alignbandit
