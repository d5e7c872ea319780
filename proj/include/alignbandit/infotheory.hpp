#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "alignbandit/core.hpp"
#include "alignbandit/environment.hpp"
#include "alignbandit/random.hpp"

namespace alignbandit {

namespace detail {

inline constexpr double kAsymptoticThreshold = 10.0;

// ln x − ψ(x) for x ≥ kAsymptoticThreshold, from the asymptotic series
// ψ(x) ~ ln x − 1/(2x) − Σ B_2k / (2k x^2k). Truncation error < 1e-13.
inline double log_minus_digamma_asymptotic(double x) {
  const double r = 1.0 / (x * x);
  const double series =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760))))));
  return 0.5 / x + series;
}

}  // namespace detail

// ln x − ψ(x), evaluated without cancellation for large x. Strictly positive.
inline double log_minus_digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_minus_digamma: argument must be positive");
  if (x >= detail::kAsymptoticThreshold) return detail::log_minus_digamma_asymptotic(x);
  // ψ(x) = ψ(x + n) − Σ_{k<n} 1/(x + k).
  double shifted = x;
  double harmonic = 0.0;
  while (shifted < detail::kAsymptoticThreshold) {
    harmonic += 1.0 / shifted;
    shifted += 1.0;
  }
  return std::log(x / shifted) + detail::log_minus_digamma_asymptotic(shifted) + harmonic;
}

inline double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
  return std::log(x) - log_minus_digamma(x);
}

// I(X; θ) in nats for θ ~ beta(α, β), X | θ ~ Bernoulli(θ):
//   1/(α+β) + ln(α+β) − ψ(α+β) + α/(α+β)·(ψ(α) − ln α) + β/(α+β)·(ψ(β) − ln β)
inline double beta_bernoulli_mi(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("beta_bernoulli_mi: parameters must be positive");
  }
  const double total = alpha + beta;
  return 1.0 / total + log_minus_digamma(total) - (alpha / total) * log_minus_digamma(alpha) -
         (beta / total) * log_minus_digamma(beta);
}

inline double beta_bernoulli_mi(const BetaPosterior& p) { return beta_bernoulli_mi(p.alpha, p.beta); }

// One-step information about (θ, φ) from taking `a`. Posteriors are
// independent across coordinates, so only the observed coordinate matters.
inline double info_gain(const BeliefState& b, Action a) { return beta_bernoulli_mi(b.posterior(a)); }

// Gains for all 2N actions in ordinal order.
inline std::vector<double> info_gains(const BeliefState& b) {
  std::vector<double> g(b.num_actions());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = info_gain(b, Action::from_ordinal(k, b.arms()));
  return g;
}

inline constexpr std::size_t kDefaultMcSamples = 512;

// Monte-Carlo estimate of E[R* | H_t] = E[max_a r(φ_a, θ_ā)] under the
// posterior. All arms share the same `samples` joint draws. Draw order is
// coordinate-major: arm 0's φ̂ column, arm 0's θ̂ column, arm 1's φ̂ column, ...
inline double estimate_optimal_reward(const BeliefState& b, std::size_t samples, Rng& rng) {
  if (samples == 0) throw std::invalid_argument("estimate_optimal_reward: need at least one sample");
  std::vector<double> best(samples, -std::numeric_limits<double>::infinity());
  std::vector<double> phi_hat(samples);
  for (std::size_t arm = 0; arm < b.arms(); ++arm) {
    const Rng::BetaParams env(b.env(arm).alpha, b.env(arm).beta);
    const Rng::BetaParams pref(b.pref(arm).alpha, b.pref(arm).beta);
    for (auto& x : phi_hat) x = rng.beta(env);
    for (std::size_t m = 0; m < samples; ++m) {
      best[m] = std::max(best[m], alignment_reward(phi_hat[m], rng.beta(pref)));
    }
  }
  double sum = 0.0;
  for (double x : best) sum += x;
  return sum / static_cast<double>(samples);
}

// Expected one-step shortfall E[R* − R | H_t, A = a] for all 2N actions in
// ordinal order. Arm entries are clamped at zero: analytically r* dominates
// every posterior-mean reward, so negatives are Monte-Carlo noise.
inline std::vector<double> expected_shortfalls(const BeliefState& b, double r_star_hat) {
  std::vector<double> d(b.num_actions());
  for (std::size_t i = 0; i < b.arms(); ++i) {
    d[i] = std::max(0.0, r_star_hat - b.expected_reward(i));
    d[b.arms() + i] = r_star_hat - kQueryReward;
  }
  return d;
}

}  // namespace alignbandit
