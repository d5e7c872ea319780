#include <gtest/gtest.h>

#include <boost/math/special_functions/digamma.hpp>

#include "alignbandit/infotheory.hpp"
#include "alignbandit/oracles.hpp"

namespace alignbandit {
namespace {

// Reference values from 30-digit mpmath (digamma and adaptive quadrature).
constexpr double kPsi1 = -0.577215664901533;
constexpr double kPsi2 = 0.422784335098467;
constexpr double kPsiHalf = -1.96351002602142;
constexpr double kMi11 = 0.193147180559945;  // ln 2 − 1/2
constexpr double kMi22 = 0.109813847226612;
constexpr double kMi53 = 0.0582894286341725;
constexpr double kMi5050 = 0.00497500124975011;

TEST(Digamma, ReferenceValues) {
  EXPECT_NEAR(digamma(1.0), kPsi1, 1e-13);
  EXPECT_NEAR(digamma(2.0), kPsi2, 1e-13);
  EXPECT_NEAR(digamma(0.5), kPsiHalf, 1e-13);
}

TEST(Digamma, AgreesWithBoostAcrossRange) {
  for (double x = 0.05; x < 1e6; x *= 1.07) {
    EXPECT_NEAR(digamma(x), boost::math::digamma(x), 1e-10 * std::max(1.0, std::abs(boost::math::digamma(x)))) << x;
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW(digamma(0.0), std::domain_error);
  EXPECT_THROW(digamma(-1.5), std::domain_error);
}

TEST(BetaBernoulliMi, ClosedFormValues) {
  EXPECT_NEAR(beta_bernoulli_mi(1, 1), kMi11, 1e-12);
  EXPECT_NEAR(beta_bernoulli_mi(1, 1), std::log(2.0) - 0.5, 1e-14);
  EXPECT_NEAR(beta_bernoulli_mi(2, 2), kMi22, 1e-12);
  EXPECT_NEAR(beta_bernoulli_mi(5, 3), kMi53, 1e-12);
  EXPECT_NEAR(beta_bernoulli_mi(50, 50), kMi5050, 1e-12);
  EXPECT_THROW(beta_bernoulli_mi(0.0, 1.0), std::domain_error);
}

TEST(BetaBernoulliMi, QuadratureOracleAgrees) {
  for (auto [a, b] : {std::pair{1.0, 1.0}, {5.0, 3.0}, {50.0, 50.0}, {0.6, 0.9}, {1.0, 101.0}}) {
    EXPECT_NEAR(beta_bernoulli_mi(a, b), oracle::beta_bernoulli_mi_quadrature(a, b), 1e-8) << a << "," << b;
  }
  const double q = oracle::beta_bernoulli_mi_quadrature(50, 50);
  EXPECT_GE(q, 1.0 / 400.0);
  EXPECT_LE(q, 1.0 / 200.0);
  EXPECT_NEAR(oracle::beta_bernoulli_mi_quadrature(2, 2), kMi22, 1e-10);
}

TEST(BetaBernoulliMi, BoundsOnIntegerGrid) {
  for (int a = 1; a <= 200; ++a) {
    for (int b = 1; b <= 200; ++b) {
      const double s = a + b;
      const double i = beta_bernoulli_mi(a, b);
      ASSERT_GE(i, 1.0 / (4.0 * s)) << a << "," << b;
      ASSERT_LE(i, 1.0 / (2.0 * s)) << a << "," << b;
    }
  }
}

TEST(BetaBernoulliMi, SymmetricInParameters) {
  for (int a = 1; a < 30; ++a) {
    for (int b = 1; b < 30; ++b) EXPECT_NEAR(beta_bernoulli_mi(a, b), beta_bernoulli_mi(b, a), 1e-15);
  }
}

TEST(InfoGain, PriorAndUpdatedBeliefs) {
  BeliefState b(3);
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_NEAR(info_gain(b, Action::from_ordinal(k, 3)), std::log(2.0) - 0.5, 1e-14);
  }
  b.assign(Action::env(1), {2, 2});
  EXPECT_NEAR(info_gain(b, Action::env(1)), kMi22, 1e-12);
  EXPECT_NEAR(info_gain(b, Action::query(1)), kMi11, 1e-12);
}

// Not monotone per observation (a mean drifting toward 1/2 can raise it), but
// always within the 1/(4s), 1/(2s) envelope.
TEST(InfoGain, StaysWithinEnvelopeAlongObservationSequences) {
  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    BeliefState b(1);
    const double prior = info_gain(b, Action::env(0));
    double g = prior;
    for (int n = 0; n < 300; ++n) {
      b.apply(Action::env(0), static_cast<Observation>(rng.bernoulli(0.15)));
      g = info_gain(b, Action::env(0));
      const double s = b.env(0).alpha + b.env(0).beta;
      EXPECT_GE(g, 1.0 / (4.0 * s));
      EXPECT_LE(g, 1.0 / (2.0 * s));
    }
    EXPECT_LT(g, prior / 50.0);
  }
}

TEST(InfoGain, DecreasesAlongBalancedPath) {
  double previous = beta_bernoulli_mi(1.0, 1.0);
  for (int k = 2; k <= 200; ++k) {
    const double g = beta_bernoulli_mi(k, k);
    EXPECT_LT(g, previous);
    previous = g;
  }
}

TEST(EstimateOptimalReward, SingleArmPrior) {
  BeliefState b(1);
  Rng rng(12);
  const std::size_t m = kDefaultMcSamples;
  EXPECT_NEAR(estimate_optimal_reward(b, m, rng), 0.5, 2.0 / std::sqrt(static_cast<double>(m)));
}

TEST(EstimateOptimalReward, ConcentratedArm) {
  BeliefState b(4);
  b.assign(Action::env(0), {1e6, 1});
  b.assign(Action::query(0), {1e6, 1});
  Rng rng(13);
  EXPECT_NEAR(estimate_optimal_reward(b, kDefaultMcSamples, rng), 1.0, 0.01);
}

TEST(EstimateOptimalReward, SixteenArmPriorMatchesBruteForce) {
  // Independent brute force: 1e6 draws of 16 uniform (φ, θ) pairs.
  Rng oracle_rng(1001);
  const int draws = 1'000'000;
  double sum = 0.0;
  for (int k = 0; k < draws; ++k) {
    double best = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double phi = oracle_rng.uniform();
      const double theta = oracle_rng.uniform();
      best = std::max(best, phi * theta + (1.0 - phi) * (1.0 - theta));
    }
    sum += best;
  }
  const double reference = sum / draws;

  BeliefState b(16);
  Rng rng(14);
  EXPECT_NEAR(estimate_optimal_reward(b, kDefaultMcSamples, rng), reference, 0.01);
}

TEST(EstimateOptimalReward, ImprovingAnArmDoesNotLowerEstimate) {
  BeliefState base(3);
  base.assign(Action::query(0), {200, 1});
  double previous = 0.0;
  for (double alpha : {1.0, 5.0, 50.0, 500.0}) {
    BeliefState b = base;
    b.assign(Action::env(0), {alpha, 1});
    Rng rng(77);
    const double est = estimate_optimal_reward(b, 4096, rng);
    EXPECT_GE(est, previous - 0.01) << alpha;
    previous = est;
  }
}

TEST(EstimateOptimalReward, DeterministicGivenSeed) {
  BeliefState b(5);
  b.apply(Action::env(2), 1);
  Rng r1(5), r2(5);
  EXPECT_EQ(estimate_optimal_reward(b, 100, r1), estimate_optimal_reward(b, 100, r2));
  EXPECT_THROW(estimate_optimal_reward(b, 0, r1), std::invalid_argument);
}

TEST(ExpectedShortfalls, PriorSingleArm) {
  BeliefState b(1);
  const auto d = expected_shortfalls(b, 0.5);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_DOUBLE_EQ(d[0], 0.0);
  EXPECT_DOUBLE_EQ(d[1], 1.5);
}

TEST(ExpectedShortfalls, ClampsAndRanges) {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    BeliefState b(8);
    for (int n = 0; n < 200; ++n) b.apply(Action::from_ordinal(rng.below(16), 8), static_cast<Observation>(rng.below(2)));
    const double r_hat = estimate_optimal_reward(b, 64, rng);
    const auto d = expected_shortfalls(b, r_hat);
    for (std::size_t i = 0; i < 8; ++i) {
      EXPECT_GE(d[i], 0.0);
      EXPECT_LE(d[i], 1.0);
      EXPECT_GE(d[8 + i], 1.0);
      EXPECT_LE(d[8 + i], 2.0);
    }
  }
  BeliefState b(2);
  b.assign(Action::env(1), {9, 1});
  b.assign(Action::query(1), {9, 1});
  const auto d = expected_shortfalls(b, b.expected_reward(1));
  EXPECT_DOUBLE_EQ(d[1], 0.0);
  EXPECT_NEAR(d[0], 0.82 - 0.5, 1e-15);
  const auto low = expected_shortfalls(b, 0.4);
  EXPECT_DOUBLE_EQ(low[0], 0.0);
  EXPECT_DOUBLE_EQ(low[1], 0.0);
  EXPECT_DOUBLE_EQ(low[2], 1.4);
}

}  // namespace
}  // namespace alignbandit
