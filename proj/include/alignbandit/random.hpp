#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <boost/random/normal_distribution.hpp>

namespace alignbandit {

// splitmix64 finalizer. Used for every seed derivation in the library.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Named child streams of one episode seed.
enum class Stream : std::uint64_t {
  Instance = 1,
  Observation = 2,
  Agent = 3,
};

// Child stream seed: the stream id is spread by the golden-ratio constant,
// XOR-folded into the parent seed, and finalized with mix64.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream_id) noexcept {
  return mix64(seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, Stream stream) noexcept {
  return derive_seed(seed, static_cast<std::uint64_t>(stream));
}

// xoshiro256++ (Blackman & Vigna), state filled from a splitmix64 sequence.
// Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    for (auto& word : state_) {
      word = mix64(seed);
      seed += 0x9E3779B97F4A7C15ULL;
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~result_type{0}; }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = std::rotl(state_[3], 45);
    return result;
  }

 private:
  std::array<std::uint64_t, 4> state_{};
};

// Random source with implementation-independent distributions.
//
// Distributions do not come from <random>: the standard leaves their
// algorithms to the implementation. Here a draw depends only on the engine
// sequence and the platform libm.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  // Uniform integer in [0, n), n >= 1. Lemire's nearly-divisionless method.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal. Boost's ziggurat sampler is a fixed algorithm, so its
  // output depends only on the engine sequence.
  double normal() { return normal_(engine_); }

  // Gamma(shape, 1). Marsaglia-Tsang squeeze for shape >= 1; shape < 1 uses
  // the Gamma(shape + 1) * U^(1/shape) boost.
  double gamma(double shape) { return gamma(GammaParams(shape)); }

  double beta(double a, double b) { return beta(BetaParams(a, b)); }

  // Precomputed constants for repeated draws from one distribution.
  struct GammaParams {
    explicit GammaParams(double shape) : shape(shape) {
      if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
      const double s = shape < 1.0 ? shape + 1.0 : shape;
      d = s - 1.0 / 3.0;
      c = 1.0 / std::sqrt(9.0 * d);
    }
    double shape;
    double d;
    double c;
  };

  struct BetaParams {
    BetaParams(double a, double b) : a(a), b(b) {}
    GammaParams a;
    GammaParams b;
  };

  double gamma(const GammaParams& p) {
    if (p.shape == 1.0) return -std::log(uniform_open());
    double g = marsaglia_tsang(p.d, p.c);
    if (p.shape < 1.0) g *= std::pow(uniform_open(), 1.0 / p.shape);
    return g;
  }

  double beta(const BetaParams& p) {
    if (p.a.shape == 1.0 && p.b.shape == 1.0) return uniform();
    const double x = gamma(p.a);
    const double y = gamma(p.b);
    return x / (x + y);
  }

 private:
  double marsaglia_tsang(double d, double c) {
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform_open();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  Xoshiro256pp engine_;
  boost::random::normal_distribution<double> normal_;
};

}  // namespace alignbandit
