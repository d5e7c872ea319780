#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "alignbandit/core.hpp"
#include "alignbandit/random.hpp"

namespace alignbandit {

// Ground truth for one episode. Agents never see this.
struct ProblemInstance {
  std::vector<double> phi;    // P(observation = 1 | environment arm a)
  std::vector<double> theta;  // P(observation = 1 | query ā), the human preference

  std::size_t arms() const { return phi.size(); }
};

inline constexpr double kQueryReward = -1.0;

// φ_a, θ_ā i.i.d. uniform. Draw order: φ_0, θ_0, φ_1, θ_1, ...
inline ProblemInstance sample_instance(Rng& rng, std::size_t arms) {
  if (arms == 0) throw std::invalid_argument("sample_instance: need at least one arm");
  ProblemInstance inst;
  inst.phi.resize(arms);
  inst.theta.resize(arms);
  for (std::size_t i = 0; i < arms; ++i) {
    inst.phi[i] = rng.uniform();
    inst.theta[i] = rng.uniform();
  }
  return inst;
}

inline Observation step(const ProblemInstance& inst, Action a, Rng& rng) {
  const double p = a.is_query() ? inst.theta.at(a.index) : inst.phi.at(a.index);
  return rng.bernoulli(p) ? 1 : 0;
}

inline double true_expected_reward(const ProblemInstance& inst, Action a) {
  if (a.is_query()) return kQueryReward;
  return alignment_reward(inst.phi.at(a.index), inst.theta.at(a.index));
}

// r*: the best expected reward. Queries never attain it (−1 < 0 ≤ any arm).
inline double optimal_reward(const ProblemInstance& inst) {
  if (inst.arms() == 0) throw std::invalid_argument("optimal_reward: empty instance");
  double best = 0.0;
  for (std::size_t i = 0; i < inst.arms(); ++i) {
    best = std::max(best, alignment_reward(inst.phi[i], inst.theta[i]));
  }
  return best;
}

inline double step_regret(const ProblemInstance& inst, Action a) {
  return optimal_reward(inst) - true_expected_reward(inst, a);
}

// Regret ledger. Instant regret uses the expected reward given the instance,
// so a trace is exact given its action sequence.
struct TraceRecord {
  std::uint64_t t = 0;  // number of actions taken, 1-based
  Action action;
  Observation observation = 0;
  double instant_regret = 0.0;
  double cum_regret = 0.0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct RegretTrace {
  std::vector<TraceRecord> records;
  double r_star = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint64_t queries = 0;
  double final_regret = 0.0;
  std::vector<std::uint64_t> action_counts;  // by action ordinal, all steps

  friend bool operator==(const RegretTrace&, const RegretTrace&) = default;
};

// Accumulates regret for one episode and records the steps a predicate selects.
class RegretLedger {
 public:
  RegretLedger(const ProblemInstance& inst, std::uint64_t seed) {
    trace_.r_star = optimal_reward(inst);
    trace_.seed = seed;
    arm_regret_.resize(inst.arms());
    trace_.action_counts.assign(2 * inst.arms(), 0);
    for (std::size_t i = 0; i < inst.arms(); ++i) {
      arm_regret_[i] = trace_.r_star - true_expected_reward(inst, Action::env(i));
    }
  }

  double record(Action a, Observation o, bool keep) {
    const double r = a.is_query() ? trace_.r_star - kQueryReward : arm_regret_.at(a.index);
    trace_.final_regret += r;
    ++trace_.steps;
    if (a.is_query()) ++trace_.queries;
    ++trace_.action_counts.at(a.ordinal(arm_regret_.size()));
    if (keep) trace_.records.push_back({trace_.steps, a, o, r, trace_.final_regret});
    return r;
  }

  const RegretTrace& trace() const& { return trace_; }
  RegretTrace trace() && { return std::move(trace_); }

 private:
  std::vector<double> arm_regret_;
  RegretTrace trace_;
};

}  // namespace alignbandit
