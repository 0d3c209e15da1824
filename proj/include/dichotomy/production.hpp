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

#ifndef DICHOTOMY_PRODUCTION_HPP
#define DICHOTOMY_PRODUCTION_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dichotomy/errors.hpp"
#include "dichotomy/subset.hpp"

namespace dichotomy {

/// Largest n for which a game is stored or enumerated as a 2^n table.
inline constexpr std::size_t kEnumerationCap = 24;

namespace games {

/// v(T) stored for every T, indexed by bitmask.
struct DenseTable {
  std::vector<double> values;
};

/// v(T) = by_size[|T|].
struct SizeSymmetric {
  std::vector<double> by_size;
};

/// v(T) = 1 iff Σ_{i∈T} w_i ≥ quota.
struct WeightedVoting {
  std::vector<double> weights;
  double quota;
};

/// v(T) = 1 iff |T| ≥ k (a k-out-of-n redundant system).
struct KOutOfN {
  std::size_t n;
  std::size_t k;
};

/// v(T) = Σ_{i∈T} w_i.
struct Additive {
  std::vector<double> values;
};

}  // namespace games

/// Characteristic function v on subsets of {0, …, n−1} with v(∅) = 0.
///
/// Closed-form families never materialize 2^n values, so they scale to large
/// n; the dense table exists for brute-force work and arbitrary games.
class Game {
 public:
  using Body = std::variant<games::DenseTable, games::SizeSymmetric, games::WeightedVoting,
                            games::KOutOfN, games::Additive>;

  static Game dense(std::vector<double> values) {
    const std::size_t size = values.size();
    if (size < 2 || !std::has_single_bit(size)) {
      throw std::invalid_argument("dense game: table size must be 2^n with n >= 1");
    }
    const auto n = static_cast<std::size_t>(std::countr_zero(size));
    if (n > kEnumerationCap) {
      throw capacity_error("dense game: n = " + std::to_string(n) + " exceeds the cap of " +
                           std::to_string(kEnumerationCap));
    }
    if (values[0] != 0.0) throw std::invalid_argument("dense game: v(empty set) must be 0");
    require_finite(values, "dense game");
    return Game(n, games::DenseTable{std::move(values)});
  }

  static Game size_symmetric(std::vector<double> by_size) {
    if (by_size.size() < 2) throw std::invalid_argument("size-symmetric game: need n >= 1");
    if (by_size[0] != 0.0) throw std::invalid_argument("size-symmetric game: v(empty set) must be 0");
    require_finite(by_size, "size-symmetric game");
    const std::size_t n = by_size.size() - 1;
    return Game(n, games::SizeSymmetric{std::move(by_size)});
  }

  static Game weighted_voting(std::vector<double> weights, double quota) {
    if (weights.empty()) throw std::invalid_argument("weighted voting: need n >= 1");
    require_finite(weights, "weighted voting");
    for (double w : weights) {
      if (w < 0.0) throw std::invalid_argument("weighted voting: weights must be non-negative");
    }
    if (!(quota > 0.0) || !std::isfinite(quota)) {
      throw std::invalid_argument("weighted voting: quota must be positive");
    }
    const std::size_t n = weights.size();
    return Game(n, games::WeightedVoting{std::move(weights), quota});
  }

  static Game k_out_of_n(std::size_t n, std::size_t k) {
    if (n == 0 || k == 0 || k > n) throw std::invalid_argument("k-out-of-n: need 1 <= k <= n");
    return Game(n, games::KOutOfN{n, k});
  }

  /// Simple majority: passes iff more than half the players are in T.
  static Game majority(std::size_t n) { return k_out_of_n(n, n / 2 + 1); }

  /// Unanimity on N: v(T) = 1 iff T = N.
  static Game unanimity(std::size_t n) { return k_out_of_n(n, n); }

  static Game additive(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("additive game: need n >= 1");
    require_finite(values, "additive game");
    const std::size_t n = values.size();
    return Game(n, games::Additive{std::move(values)});
  }

  std::size_t n() const { return n_; }
  const Body& body() const { return body_; }

  /// True when v(T) depends on T only through |T|.
  bool is_size_symmetric() const {
    return std::holds_alternative<games::SizeSymmetric>(body_) ||
           std::holds_alternative<games::KOutOfN>(body_);
  }

  /// v at coalition size t; only for size-symmetric games.
  double value_at_size(std::size_t t) const {
    if (t > n_) throw std::out_of_range("value_at_size: t exceeds n");
    if (const auto* s = std::get_if<games::SizeSymmetric>(&body_)) return s->by_size[t];
    if (const auto* k = std::get_if<games::KOutOfN>(&body_)) return t >= k->k ? 1.0 : 0.0;
    throw std::logic_error("value_at_size: game is not size-symmetric");
  }

  double operator()(const Subset& coalition) const;

  /// v evaluated at a bitmask; n ≤ Subset::kMaskLimit.
  double at_mask(std::uint32_t mask) const;

  /// Values in {0, 1} everywhere.
  bool is_binary() const;

  /// Nondecreasing under set inclusion.
  bool is_monotone() const;

  std::string family() const {
    return std::visit(
        [](const auto& b) -> std::string {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, games::DenseTable>) return "dense";
          if constexpr (std::is_same_v<B, games::SizeSymmetric>) return "size_symmetric";
          if constexpr (std::is_same_v<B, games::WeightedVoting>) return "weighted_voting";
          if constexpr (std::is_same_v<B, games::KOutOfN>) return "k_out_of_n";
          if constexpr (std::is_same_v<B, games::Additive>) return "additive";
        },
        body_);
  }

 private:
  Game(std::size_t n, Body body) : n_(n), body_(std::move(body)) {}

  static void require_finite(std::span<const double> xs, const char* what) {
    for (double x : xs) {
      if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + ": non-finite value");
    }
  }

  std::size_t n_;
  Body body_;
};

inline double Game::at_mask(std::uint32_t mask) const {
  if (n_ > Subset::kMaskLimit) throw std::logic_error("Game::at_mask: n exceeds the bitmask regime");
  return std::visit(
      [&](const auto& b) -> double {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, games::DenseTable>) {
          return b.values[mask];
        } else if constexpr (std::is_same_v<B, games::SizeSymmetric>) {
          return b.by_size[static_cast<std::size_t>(std::popcount(mask))];
        } else if constexpr (std::is_same_v<B, games::KOutOfN>) {
          return static_cast<std::size_t>(std::popcount(mask)) >= b.k ? 1.0 : 0.0;
        } else {
          const auto& w = [&]() -> const std::vector<double>& {
            if constexpr (std::is_same_v<B, games::Additive>) {
              return b.values;
            } else {
              return b.weights;
            }
          }();
          double sum = 0.0;
          for (std::uint32_t m = mask; m != 0; m &= m - 1) sum += w[std::countr_zero(m)];
          if constexpr (std::is_same_v<B, games::Additive>) {
            return sum;
          } else {
            return sum >= b.quota ? 1.0 : 0.0;
          }
        }
      },
      body_);
}

inline double Game::operator()(const Subset& coalition) const {
  if (coalition.universe() != n_) {
    // Re-home the members; throws out_of_range for an index outside N.
    const auto members = coalition.members();
    return (*this)(Subset(n_, members));
  }
  if (coalition.uses_mask()) return at_mask(coalition.mask());
  const std::size_t t = coalition.size();
  return std::visit(
      [&](const auto& b) -> double {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, games::DenseTable>) {
          throw std::logic_error("dense games are capped below the list regime");
        } else if constexpr (std::is_same_v<B, games::SizeSymmetric>) {
          return b.by_size[t];
        } else if constexpr (std::is_same_v<B, games::KOutOfN>) {
          return t >= b.k ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<B, games::Additive>) {
          double sum = 0.0;
          for (Player p : coalition.members()) sum += b.values[p];
          return sum;
        } else {
          double sum = 0.0;
          for (Player p : coalition.members()) sum += b.weights[p];
          return sum >= b.quota ? 1.0 : 0.0;
        }
      },
      body_);
}

/// v(T); v(∅) = 0 for every representation.
inline double evaluate(const Game& game, const Subset& coalition) { return game(coalition); }

/// Fills toggled[i] = v(S Δ {i}) for every player and returns v(S).
///
/// One pass per coalition; the Monte Carlo estimators call this per draw.
inline double toggled_values(const Game& game, const Subset& coalition, std::span<double> toggled) {
  const std::size_t n = game.n();
  if (toggled.size() != n) throw std::invalid_argument("toggled_values: span size must equal n");
  if (coalition.universe() != n) throw std::out_of_range("toggled_values: universe mismatch");
  const std::size_t t = coalition.size();
  return std::visit(
      [&](const auto& b) -> double {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, games::DenseTable>) {
          const std::uint32_t m = coalition.mask();
          for (std::size_t i = 0; i < n; ++i) toggled[i] = b.values[m ^ (1u << i)];
          return b.values[m];
        } else if constexpr (std::is_same_v<B, games::SizeSymmetric> ||
                             std::is_same_v<B, games::KOutOfN>) {
          const double down = t > 0 ? game.value_at_size(t - 1) : 0.0;
          const double up = t < n ? game.value_at_size(t + 1) : 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            toggled[i] = coalition.contains(static_cast<Player>(i)) ? down : up;
          }
          return game.value_at_size(t);
        } else {
          const auto& w = [&]() -> const std::vector<double>& {
            if constexpr (std::is_same_v<B, games::Additive>) {
              return b.values;
            } else {
              return b.weights;
            }
          }();
          double sum = 0.0;
          for (Player p : coalition.members()) sum += w[p];
          for (std::size_t i = 0; i < n; ++i) {
            const double s = coalition.contains(static_cast<Player>(i)) ? sum - w[i] : sum + w[i];
            if constexpr (std::is_same_v<B, games::Additive>) {
              toggled[i] = s;
            } else {
              toggled[i] = s >= b.quota ? 1.0 : 0.0;
            }
          }
          if constexpr (std::is_same_v<B, games::Additive>) {
            return sum;
          } else {
            return sum >= b.quota ? 1.0 : 0.0;
          }
        }
      },
      game.body());
}

/// All 2^n values of v indexed by bitmask (n ≤ kEnumerationCap).
inline std::vector<double> tabulate(const Game& game) {
  const std::size_t n = game.n();
  if (n > kEnumerationCap) {
    throw capacity_error("tabulate: n = " + std::to_string(n) + " exceeds the enumeration cap of " +
                         std::to_string(kEnumerationCap));
  }
  if (const auto* d = std::get_if<games::DenseTable>(&game.body())) return d->values;
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> out(count);
  if (const auto* w = std::get_if<games::WeightedVoting>(&game.body())) {
    // Weight sums by lowest-bit recursion, then threshold in place.
    out[0] = 0.0;
    for (std::size_t m = 1; m < count; ++m) {
      out[m] = out[m & (m - 1)] + w->weights[std::countr_zero(m)];
    }
    for (double& x : out) x = x >= w->quota ? 1.0 : 0.0;
    return out;
  }
  if (const auto* a = std::get_if<games::Additive>(&game.body())) {
    out[0] = 0.0;
    for (std::size_t m = 1; m < count; ++m) {
      out[m] = out[m & (m - 1)] + a->values[std::countr_zero(m)];
    }
    return out;
  }
  for (std::size_t m = 0; m < count; ++m) {
    out[m] = game.value_at_size(static_cast<std::size_t>(std::popcount(m)));
  }
  return out;
}

inline bool Game::is_binary() const {
  auto binary = [](double x) { return x == 0.0 || x == 1.0; };
  return std::visit(
      [&](const auto& b) -> bool {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, games::DenseTable>) {
          return std::all_of(b.values.begin(), b.values.end(), binary);
        } else if constexpr (std::is_same_v<B, games::SizeSymmetric>) {
          return std::all_of(b.by_size.begin(), b.by_size.end(), binary);
        } else if constexpr (std::is_same_v<B, games::Additive>) {
          const auto ones = std::count(b.values.begin(), b.values.end(), 1.0);
          const auto zeros = std::count(b.values.begin(), b.values.end(), 0.0);
          return ones <= 1 && static_cast<std::size_t>(ones + zeros) == b.values.size();
        } else {
          return true;
        }
      },
      body_);
}

inline bool Game::is_monotone() const {
  return std::visit(
      [&](const auto& b) -> bool {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, games::DenseTable>) {
          const std::size_t count = b.values.size();
          for (std::size_t m = 0; m < count; ++m) {
            for (std::size_t i = 0; i < n_; ++i) {
              const std::size_t bit = std::size_t{1} << i;
              if (!(m & bit) && b.values[m | bit] < b.values[m]) return false;
            }
          }
          return true;
        } else if constexpr (std::is_same_v<B, games::SizeSymmetric>) {
          return std::is_sorted(b.by_size.begin(), b.by_size.end());
        } else if constexpr (std::is_same_v<B, games::Additive>) {
          return std::all_of(b.values.begin(), b.values.end(), [](double w) { return w >= 0.0; });
        } else {
          return true;
        }
      },
      body_);
}

namespace detail {

inline void check_pair(const Game& game, Player i, Player j) {
  if (i == j) throw std::invalid_argument("player pair must be distinct");
  if (i >= game.n() || j >= game.n()) throw std::out_of_range("player index outside the game");
}

// Does some R ⊆ N \ {i, j} have lo ≤ Σ_R w < hi?
inline bool weight_sum_in_window(const std::vector<double>& weights, Player i, Player j, double lo,
                                 double hi) {
  std::vector<double> others;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (k != i && k != j) others.push_back(weights[k]);
  }
  if (others.size() <= kEnumerationCap) {
    const std::size_t count = std::size_t{1} << others.size();
    std::vector<double> sums(count, 0.0);
    for (std::size_t m = 1; m < count; ++m) {
      sums[m] = sums[m & (m - 1)] + others[std::countr_zero(m)];
      if (sums[m] >= lo && sums[m] < hi) return true;
    }
    return 0.0 >= lo && 0.0 < hi;
  }
  // Reachable integer sums for integral weights.
  double total = 0.0;
  for (double w : others) {
    if (w != std::floor(w)) {
      throw capacity_error("uniformly_outperforms: non-integral weights beyond the enumeration cap");
    }
    total += w;
  }
  if (total > 1e7) throw capacity_error("uniformly_outperforms: total weight too large for the sum table");
  std::vector<char> reachable(static_cast<std::size_t>(total) + 1, 0);
  reachable[0] = 1;
  std::size_t top = 0;
  for (double w : others) {
    const auto wi = static_cast<std::size_t>(w);
    for (std::size_t s = top + 1; s-- > 0;) {
      if (reachable[s]) reachable[s + wi] = 1;
    }
    top += wi;
  }
  for (std::size_t s = 0; s <= top; ++s) {
    const double sd = static_cast<double>(s);
    if (reachable[s] && sd >= lo && sd < hi) return true;
  }
  return false;
}

}  // namespace detail

/// i uniformly outperforms j: for every T ⊆ N∖{i,j},
/// v(T∪{i}) − v(T) ≥ v(T∪{j}) − v(T), and for every T ∋ i, j,
/// v(T) − v(T∖{i}) ≥ v(T) − v(T∖{j}). Ties count as outperforming.
inline bool uniformly_outperforms(const Game& game, Player i, Player j) {
  detail::check_pair(game, i, j);
  return std::visit(
      [&](const auto& b) -> bool {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, games::SizeSymmetric> || std::is_same_v<B, games::KOutOfN>) {
          return true;
        } else if constexpr (std::is_same_v<B, games::Additive>) {
          return b.values[i] >= b.values[j];
        } else if constexpr (std::is_same_v<B, games::WeightedVoting>) {
          if (b.weights[i] >= b.weights[j]) return true;
          // j beats i on some T exactly when q − w_j ≤ Σ_T w < q − w_i.
          return !detail::weight_sum_in_window(b.weights, i, j, b.quota - b.weights[j],
                                               b.quota - b.weights[i]);
        } else {
          const std::size_t n = game.n();
          const std::uint32_t bi = 1u << i;
          const std::uint32_t bj = 1u << j;
          const std::uint32_t count = static_cast<std::uint32_t>(std::size_t{1} << n);
          for (std::uint32_t m = 0; m < count; ++m) {
            if (m & (bi | bj)) continue;
            const double base = b.values[m];
            if (b.values[m | bi] - base < b.values[m | bj] - base) return false;
            const std::uint32_t both = m | bi | bj;
            const double top = b.values[both];
            if (top - b.values[both & ~bi] < top - b.values[both & ~bj]) return false;
          }
          return true;
        }
      },
      game.body());
}

/// i and j are symmetric in v: each uniformly outperforms the other.
inline bool is_symmetric_pair(const Game& game, Player i, Player j) {
  return uniformly_outperforms(game, i, j) && uniformly_outperforms(game, j, i);
}

/// Dense game from {"n": int, "values": [2^n reals ordered by bitmask]}.
inline Game dense_game_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("values")) {
    throw std::invalid_argument("dense game JSON: expected an object with \"n\" and \"values\"");
  }
  const auto n = doc.at("n").get<std::int64_t>();
  if (n < 1 || n > static_cast<std::int64_t>(kEnumerationCap)) {
    throw capacity_error("dense game JSON: n must lie in [1, " + std::to_string(kEnumerationCap) + "]");
  }
  auto values = doc.at("values").get<std::vector<double>>();
  if (values.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("dense game JSON: expected 2^n values");
  }
  return Game::dense(std::move(values));
}

inline nlohmann::json dense_game_to_json(const Game& game) {
  return nlohmann::json{{"n", game.n()}, {"values", tabulate(game)}};
}

inline Game load_dense_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file: " + path);
  return dense_game_from_json(nlohmann::json::parse(in));
}

}  // namespace dichotomy

#endif  // DICHOTOMY_PRODUCTION_HPP
