#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "alignbandit/core.hpp"
#include "alignbandit/random.hpp"

namespace alignbandit {
namespace {

double total_count(const BeliefState& b) {
  double s = 0.0;
  for (const auto& p : b.env()) s += p.count();
  for (const auto& p : b.pref()) s += p.count();
  return s;
}

TEST(BetaPosterior, UpdateIncrementsOneParameter) {
  EXPECT_EQ(update({1, 1}, 1), (BetaPosterior{2, 1}));
  EXPECT_EQ(update({1, 1}, 0), (BetaPosterior{1, 2}));
  EXPECT_EQ(update({3, 7}, 1), (BetaPosterior{4, 7}));
}

TEST(BetaPosterior, Mean) {
  EXPECT_DOUBLE_EQ(mean({1, 1}), 0.5);
  EXPECT_DOUBLE_EQ(mean({2, 1}), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(mean({4, 7}), 4.0 / 11.0);
}

TEST(BetaPosterior, UpdateOrderDoesNotMatter) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int ones = static_cast<int>(rng.below(20));
    const int zeros = static_cast<int>(rng.below(20));
    std::vector<Observation> obs(ones, 1);
    obs.insert(obs.end(), zeros, 0);
    for (std::size_t i = obs.size(); i > 1; --i) std::swap(obs[i - 1], obs[rng.below(i)]);
    BetaPosterior p{1, 1};
    for (auto o : obs) {
      p = update(p, o);
      EXPECT_GT(p.mean(), 0.0);
      EXPECT_LT(p.mean(), 1.0);
    }
    EXPECT_EQ(p, (BetaPosterior{1.0 + ones, 1.0 + zeros}));
  }
}

TEST(BeliefState, ExpectedReward) {
  BeliefState b(2);
  EXPECT_DOUBLE_EQ(expected_reward(b, 0), 0.5);
  b.assign(Action::env(0), {2, 1});
  EXPECT_DOUBLE_EQ(expected_reward(b, 0), 0.5);  // m_θ = 1/2 makes any m_φ give 1/2
  EXPECT_DOUBLE_EQ(alignment_reward(1.0, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(alignment_reward(0.5, 0.9), 0.5);
}

TEST(BeliefState, ApplyTouchesOneCoordinate) {
  BeliefState b(4);
  const BeliefState prior = b;
  b = apply(b, Action::env(0), 1);
  EXPECT_EQ(b.env(0), (BetaPosterior{2, 1}));
  EXPECT_EQ(b.pref(), prior.pref());
  EXPECT_EQ(b.t(), 1u);

  BeliefState c = apply(prior, Action::query(3), 0);
  EXPECT_EQ(c.pref(3), (BetaPosterior{1, 2}));
  EXPECT_EQ(c.env(), prior.env());
  EXPECT_EQ(c.t(), 1u);
}

TEST(BeliefState, CountInvariantHoldsAlongRandomSequences) {
  Rng rng(11);
  BeliefState b(5);
  for (int step = 0; step < 500; ++step) {
    const Action a = Action::from_ordinal(rng.below(b.num_actions()), b.arms());
    const double before = total_count(b);
    b.apply(a, static_cast<Observation>(rng.below(2)));
    EXPECT_DOUBLE_EQ(total_count(b), before + 1.0);
    EXPECT_DOUBLE_EQ(total_count(b), static_cast<double>(b.t()));
  }
}

TEST(BeliefState, RejectsInvalidActions) {
  BeliefState b(3);
  EXPECT_THROW(b.apply(Action::env(3), 1), std::out_of_range);
  EXPECT_THROW(b.assign(Action::query(0), {0.5, 1}), std::invalid_argument);
  EXPECT_THROW(BeliefState(0), std::invalid_argument);
}

TEST(Action, OrdinalRoundTrip) {
  for (std::size_t k = 0; k < 10; ++k) EXPECT_EQ(Action::from_ordinal(k, 5).ordinal(5), k);
  EXPECT_EQ(Action::from_ordinal(5, 5), Action::query(0));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
  }
  EXPECT_NE(Rng(42).next_u64(), c.next_u64());
  EXPECT_NE(derive_seed(1, Stream::Instance), derive_seed(1, Stream::Agent));
}

TEST(Rng, BetaMomentsMatch) {
  Rng rng(5);
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 5.0}, {0.7, 0.6}, {40.0, 3.0}}) {
    const int n = 200000;
    double s = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.beta(a, b);
      ASSERT_GE(x, 0.0);
      ASSERT_LE(x, 1.0);
      s += x;
      ss += x * x;
    }
    const double m = s / n;
    const double v = ss / n - m * m;
    const double true_m = a / (a + b);
    const double true_v = a * b / ((a + b) * (a + b) * (a + b + 1));
    EXPECT_NEAR(m, true_m, 5.0 * std::sqrt(true_v / n)) << a << "," << b;
    EXPECT_NEAR(v, true_v, 0.02 * true_v + 1e-5) << a << "," << b;
  }
}

TEST(Rng, BelowIsUniform) {
  Rng rng(9);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 400);
}

}  // namespace
}  // namespace alignbandit
