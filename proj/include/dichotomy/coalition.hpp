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

#ifndef DICHOTOMY_COALITION_HPP
#define DICHOTOMY_COALITION_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dichotomy/numerics.hpp"
#include "dichotomy/random.hpp"
#include "dichotomy/subset.hpp"

namespace dichotomy {

/// Beta-Binomial opportunity model over the random employed set S ⊆ N.
///
/// p ~ Beta(θ, ρ), |S| ~ Binomial(n, p), and S uniform among subsets of that
/// size. Every subset of size t then has probability β(θ+t, ρ+n−t)/β(θ, ρ).
/// Immutable after construction.
class CoalitionModel {
 public:
  CoalitionModel(std::size_t n, double theta, double rho) : n_(n), theta_(theta), rho_(rho) {
    if (n == 0) throw std::domain_error("CoalitionModel: n must be at least 1");
    if (!(theta > 0.0) || !(rho > 0.0) || !std::isfinite(theta) || !std::isfinite(rho)) {
      throw std::domain_error("CoalitionModel: theta and rho must be positive and finite");
    }
    log_beta_prior_ = numerics::log_beta(theta, rho);
  }

  std::size_t n() const { return n_; }
  double theta() const { return theta_; }
  double rho() const { return rho_; }

  /// Prior mean of the employment rate, θ/(θ+ρ); also P(i ∈ S) for every i.
  double prior_mean() const { return theta_ / (theta_ + rho_); }

  /// ln P(S = T) for any T with |T| = t.
  double log_subset_probability(std::size_t t) const {
    if (t > n_) throw std::out_of_range("log_subset_probability: size exceeds n");
    const double nd = static_cast<double>(n_);
    const double td = static_cast<double>(t);
    return numerics::log_beta(theta_ + td, rho_ + nd - td) - log_beta_prior_;
  }

  /// P(S = T) for each size t = 0..n.
  std::vector<double> subset_probabilities() const {
    std::vector<double> out(n_ + 1);
    for (std::size_t t = 0; t <= n_; ++t) out[t] = std::exp(log_subset_probability(t));
    return out;
  }

 private:
  std::size_t n_;
  double theta_;
  double rho_;
  double log_beta_prior_ = 0.0;
};

/// Posterior law of the employment rate after observing |S| = s:
/// Beta(a, b) with a = θ+s, b = ρ+n−s.
struct PosteriorRate {
  double a;
  double b;
  double omega;  ///< observed employment rate s/n

  /// Posterior from a real-valued employment count. The policy algebra treats
  /// s = nω as real, so s need not be integral here.
  static PosteriorRate from_counts(double theta, double rho, double n, double s) {
    PosteriorRate post{theta + s, rho + n - s, s / n};
    post.validate();
    return post;
  }

  void validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
      throw std::domain_error("PosteriorRate: shape parameters must be positive");
    }
    if (!(omega >= 0.0 && omega <= 1.0)) {
      throw std::domain_error("PosteriorRate: omega must lie in [0, 1]");
    }
  }
};

inline double log_size_pmf(const CoalitionModel& model, std::size_t s) {
  if (s > model.n()) {
    throw std::out_of_range("size_pmf: s = " + std::to_string(s) + " outside [0, " +
                            std::to_string(model.n()) + "]");
  }
  return numerics::log_binomial(model.n(), s) + model.log_subset_probability(s);
}

/// P(|S| = s) = C(n, s) β(θ+s, ρ+n−s)/β(θ, ρ).
inline double size_pmf(const CoalitionModel& model, std::size_t s) {
  return std::exp(log_size_pmf(model, s));
}

/// The whole size law, P(|S| = s) for s = 0..n.
inline std::vector<double> size_distribution(const CoalitionModel& model) {
  std::vector<double> out(model.n() + 1);
  for (std::size_t s = 0; s <= model.n(); ++s) out[s] = size_pmf(model, s);
  return out;
}

/// P(S = T). Depends on T only through |T|.
inline double subset_pmf(const CoalitionModel& model, const Subset& subset) {
  if (subset.universe() > model.n()) {
    for (Player p : subset.members()) {
      if (p >= model.n()) {
        throw std::out_of_range("subset_pmf: player " + std::to_string(p) +
                                " is not in a model of " + std::to_string(model.n()) +
                                " players");
      }
    }
  }
  return std::exp(model.log_subset_probability(subset.size()));
}

/// Draws S by the three-layer construction: p ~ Beta(θ, ρ), then
/// s ~ Binomial(n, p), then a uniformly random s-subset.
inline Subset sample_subset(const CoalitionModel& model, RandomStream& stream) {
  const std::size_t n = model.n();
  const double p = stream.beta(model.theta(), model.rho());
  const auto s = static_cast<std::size_t>(stream.binomial(n, p));
  Subset out(n);
  if (s == 0) return out;
  if (s == n) return Subset::full(n);
  if (out.uses_mask()) {
    // Partial Fisher–Yates over the player indices.
    Player order[Subset::kMaskLimit];
    std::iota(order, order + n, Player{0});
    std::uint32_t mask = 0;
    for (std::size_t k = 0; k < s; ++k) {
      const std::size_t j = k + stream.below(n - k);
      std::swap(order[k], order[j]);
      mask |= 1u << order[k];
    }
    return Subset::from_mask(n, mask);
  }
  // Floyd's algorithm on the smaller of the set and its complement.
  const bool complement = s > n / 2;
  const std::size_t draw = complement ? n - s : s;
  std::vector<char> chosen(n, 0);
  for (std::size_t j = n - draw; j < n; ++j) {
    const auto t = static_cast<std::size_t>(stream.below(j + 1));
    if (chosen[t]) {
      chosen[j] = 1;
    } else {
      chosen[t] = 1;
    }
  }
  std::vector<Player> members;
  members.reserve(s);
  for (std::size_t i = 0; i < n; ++i) {
    if ((chosen[i] != 0) != complement) members.push_back(static_cast<Player>(i));
  }
  return Subset(n, members);
}

/// Posterior Beta(θ+s, ρ+n−s) after observing an employment count s.
inline PosteriorRate posterior(const CoalitionModel& model, std::size_t s) {
  if (s > model.n()) {
    throw std::out_of_range("posterior: s = " + std::to_string(s) + " outside [0, " +
                            std::to_string(model.n()) + "]");
  }
  const double n = static_cast<double>(model.n());
  const double sd = static_cast<double>(s);
  return PosteriorRate{model.theta() + sd, model.rho() + n - sd, sd / n};
}

/// Calls fn(Subset) for each of the 2^n subsets in mask order.
///
/// Cost is 2^n; n is capped at Subset::kMaskLimit and anything beyond ~20
/// players is slow enough that callers should prefer closed forms or sampling.
template <typename Fn>
void for_each_subset(std::size_t n, Fn&& fn) {
  if (n > Subset::kMaskLimit) {
    throw std::length_error("for_each_subset: n exceeds the enumeration cap of " +
                            std::to_string(Subset::kMaskLimit));
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t m = 0; m < count; ++m) {
    fn(Subset::from_mask(n, static_cast<std::uint32_t>(m)));
  }
}

}  // namespace dichotomy

#endif  // DICHOTOMY_COALITION_HPP
