// Copyright 2026 The Dichotomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DICHOTOMY_RANDOM_HPP
#define DICHOTOMY_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

namespace dichotomy {

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// A seeded, splittable random stream.
///
/// The engine (mt19937_64) is fully specified by the standard and every
/// variate below is generated by code in this file, so a (seed, stream id)
/// pair yields the same sequence on every platform. Streams are not
/// thread-safe; give each worker its own via split().
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed), stream_id_(stream_id), engine_(derive(seed, stream_id)) {}

  /// Independent child stream; deterministic in (parent seed, parent id, child).
  [[nodiscard]] RandomStream split(std::uint64_t child) const {
    return RandomStream(derive(seed_, stream_id_), child);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>(engine_() >> 11) + 0.5) * kScale;
  }

  /// Uniform integer in [0, bound), Lemire's multiply-and-reject.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomStream::below: zero bound");
    std::uint64_t x = engine_();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = engine_();
        m = static_cast<__uint128_t>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Standard normal (Marsaglia polar method, no cached second variate).
  double normal() {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  /// ln of a Gamma(shape, 1) draw.
  ///
  /// Marsaglia–Tsang for shape ≥ 1; for shape < 1 the boost
  /// G(a) = G(a+1)·U^(1/a) is applied in log space so tiny shapes do not
  /// underflow to zero.
  double log_gamma_variate(double shape) {
    if (!(shape > 0.0)) throw std::domain_error("log_gamma_variate: shape must be positive");
    if (shape < 1.0) {
      return log_gamma_variate(shape + 1.0) + std::log(uniform()) / shape;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = 0.0;
      double v = 0.0;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double log_u = std::log(uniform());
      if (log_u < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return std::log(d) + std::log(v);
      }
    }
  }

  /// Beta(a, b) via the ratio of two gamma draws, formed in log space.
  double beta(double a, double b) {
    const double lx = log_gamma_variate(a);
    const double ly = log_gamma_variate(b);
    return 1.0 / (1.0 + std::exp(ly - lx));
  }

  /// Binomial(n, p). Inversion by sequential search on the smaller tail
  /// probability; expected cost O(n·min(p, 1−p)).
  std::uint64_t binomial(std::uint64_t n, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial: p outside [0, 1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    const bool flip = p > 0.5;
    const double q = flip ? 1.0 - p : p;
    std::uint64_t k = 0;
    if (static_cast<double>(n) * q < 30.0) {
      // Inversion on the pmf recurrence.
      const double ratio = q / (1.0 - q);
      double pmf = std::exp(static_cast<double>(n) * std::log1p(-q));
      double u = uniform();
      while (u > pmf && k < n) {
        u -= pmf;
        pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
        ++k;
      }
    } else {
      // Sum of geometric gaps: the count of successes before position n.
      const double log_fail = std::log1p(-q);
      std::uint64_t position = 0;
      for (;;) {
        const double gap = std::floor(std::log(uniform()) / log_fail);
        if (gap >= static_cast<double>(n - position)) break;
        position += static_cast<std::uint64_t>(gap) + 1;
        ++k;
        if (position >= n) break;
      }
    }
    return flip ? n - k : k;
  }

 private:
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream_id) {
    return detail::splitmix64(detail::splitmix64(seed) ^
                              detail::splitmix64(stream_id + 0x632be59bd9b4e019ULL));
  }

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace dichotomy

#endif  // DICHOTOMY_RANDOM_HPP
