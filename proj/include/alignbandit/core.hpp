#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace alignbandit {

enum class ActionKind : std::uint8_t { EnvArm, HumanQuery };

// An environment arm a or its paired human query ā, sharing one arm index.
struct Action {
  ActionKind kind = ActionKind::EnvArm;
  std::size_t index = 0;

  static constexpr Action env(std::size_t i) { return {ActionKind::EnvArm, i}; }
  static constexpr Action query(std::size_t i) { return {ActionKind::HumanQuery, i}; }

  constexpr bool is_query() const { return kind == ActionKind::HumanQuery; }

  // Flat ordinal over the 2N actions: env arms 0..N-1, then queries N..2N-1.
  constexpr std::size_t ordinal(std::size_t arms) const {
    return is_query() ? arms + index : index;
  }

  static constexpr Action from_ordinal(std::size_t ord, std::size_t arms) {
    return ord < arms ? env(ord) : query(ord - arms);
  }

  friend constexpr bool operator==(const Action&, const Action&) = default;
};

inline std::string_view to_string(ActionKind kind) {
  return kind == ActionKind::EnvArm ? "env" : "query";
}

using Observation = std::uint8_t;  // 0 or 1

// Conjugate beta posterior over one unknown Bernoulli probability.
struct BetaPosterior {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const { return alpha / (alpha + beta); }
  double count() const { return alpha + beta - 2.0; }

  friend bool operator==(const BetaPosterior&, const BetaPosterior&) = default;
};

constexpr BetaPosterior update(BetaPosterior p, Observation o) {
  if (o != 0) {
    p.alpha += 1.0;
  } else {
    p.beta += 1.0;
  }
  return p;
}

inline double mean(const BetaPosterior& p) { return p.mean(); }

// Probability that the environment outcome matches the human preference.
constexpr double alignment_reward(double phi, double theta) {
  return phi * theta + (1.0 - phi) * (1.0 - theta);
}

// Per-arm posteriors over φ (environment) and θ (preference), plus the step
// count. Every observation touches exactly one posterior.
class BeliefState {
 public:
  explicit BeliefState(std::size_t arms) : env_(arms), pref_(arms) {
    if (arms == 0) throw std::invalid_argument("BeliefState: need at least one arm");
  }

  std::size_t arms() const { return env_.size(); }
  std::size_t num_actions() const { return 2 * env_.size(); }
  std::uint64_t t() const { return t_; }

  const std::vector<BetaPosterior>& env() const { return env_; }
  const std::vector<BetaPosterior>& pref() const { return pref_; }

  const BetaPosterior& env(std::size_t i) const { return env_.at(i); }
  const BetaPosterior& pref(std::size_t i) const { return pref_.at(i); }

  // Posterior for the coordinate an action observes.
  const BetaPosterior& posterior(Action a) const { return a.is_query() ? pref(a.index) : env(a.index); }

  bool valid(Action a) const { return a.index < arms(); }

  // Posterior-mean reward of environment arm `arm`; φ and θ are independent.
  double expected_reward(std::size_t arm) const {
    return alignment_reward(env(arm).mean(), pref(arm).mean());
  }

  void apply(Action a, Observation o) {
    if (!valid(a)) throw std::out_of_range("BeliefState::apply: action index out of range");
    auto& p = a.is_query() ? pref_[a.index] : env_[a.index];
    p = update(p, o);
    ++t_;
  }

  // Replaces one posterior; the step count moves by the change in pseudo-counts.
  void assign(Action a, BetaPosterior p) {
    if (!valid(a)) throw std::out_of_range("BeliefState::assign: action index out of range");
    if (!(p.alpha >= 1.0 && p.beta >= 1.0)) {
      throw std::invalid_argument("BeliefState::assign: posterior below the beta(1,1) prior");
    }
    auto& slot = a.is_query() ? pref_[a.index] : env_[a.index];
    t_ = static_cast<std::uint64_t>(std::llround(static_cast<double>(t_) + p.count() - slot.count()));
    slot = p;
  }

  friend bool operator==(const BeliefState&, const BeliefState&) = default;

 private:
  std::vector<BetaPosterior> env_;
  std::vector<BetaPosterior> pref_;
  std::uint64_t t_ = 0;
};

inline double expected_reward(const BeliefState& b, std::size_t arm) { return b.expected_reward(arm); }

inline BeliefState apply(BeliefState b, Action a, Observation o) {
  b.apply(a, o);
  return b;
}

}  // namespace alignbandit
