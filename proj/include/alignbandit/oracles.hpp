#pragma once

// Brute-force reference computations used by the test suites and by the
// `verify` command. Nothing here shares code with the paths it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

namespace alignbandit::oracle {

inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

// I(X; θ) = h_b(E[θ]) − E[h_b(θ)] with θ ~ beta(α, β), the expectation by
// tanh-sinh quadrature on each side of the mean. Throws when the error
// estimate exceeds `tolerance`.
inline double beta_bernoulli_mi_quadrature(double alpha, double beta, double tolerance = 1e-10) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("beta_bernoulli_mi_quadrature: parameters must be positive");
  }
  const double log_norm = std::lgamma(alpha + beta) - std::lgamma(alpha) - std::lgamma(beta);
  auto integrand = [&](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double log_density = log_norm + (alpha - 1.0) * std::log(x) + (beta - 1.0) * std::log1p(-x);
    return std::exp(log_density) * binary_entropy(x);
  };
  const double m = alpha / (alpha + beta);
  boost::math::quadrature::tanh_sinh<double> integrator(15);
  double err_lo = 0.0;
  double err_hi = 0.0;
  const double lo = integrator.integrate(integrand, 0.0, m, 1e-14, &err_lo);
  const double hi = integrator.integrate(integrand, m, 1.0, 1e-14, &err_hi);
  if (!(err_lo + err_hi <= tolerance)) {
    throw std::runtime_error("beta_bernoulli_mi_quadrature: integration did not converge");
  }
  return binary_entropy(m) - (lo + hi);
}

// Minimum pairwise information ratio with q on a uniform grid of spacing
// `q_step` (q = 1 always included). Singletons are the q ∈ {0, 1} points.
inline double grid_oracle(std::span<const double> deltas, std::span<const double> gains, double q_step) {
  if (!(q_step > 0.0 && q_step <= 0.5)) throw std::invalid_argument("grid_oracle: q_step must be in (0, 0.5]");
  if (deltas.empty() || deltas.size() != gains.size()) throw std::invalid_argument("grid_oracle: bad input sizes");
  const auto steps = static_cast<std::size_t>(std::floor(1.0 / q_step));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    best = std::min(best, deltas[i] * deltas[i] / gains[i]);
    for (std::size_t j = i + 1; j < deltas.size(); ++j) {
      for (std::size_t k = 0; k <= steps; ++k) {
        const double q = static_cast<double>(k) * q_step;
        const double d = q * deltas[i] + (1.0 - q) * deltas[j];
        const double g = q * gains[i] + (1.0 - q) * gains[j];
        best = std::min(best, d * d / g);
      }
    }
  }
  return best;
}

}  // namespace alignbandit::oracle
