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

#ifndef DICHOTOMY_DVALUE_HPP
#define DICHOTOMY_DVALUE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dichotomy/coalition.hpp"
#include "dichotomy/errors.hpp"
#include "dichotomy/parallel.hpp"
#include "dichotomy/production.hpp"
#include "dichotomy/random.hpp"

namespace dichotomy {

enum class ValuationMethod { Exact, MonteCarlo };

/// Dichotomous valuation: γ_i (expected marginal gain when employed) and
/// λ_i (expected marginal loss when unemployed) for every player.
struct DValuation {
  std::vector<double> gamma;
  std::vector<double> lambda;
  double aggregate_gamma = 0.0;
  double aggregate_lambda = 0.0;
  double expected_production = 0.0;
  ValuationMethod method = ValuationMethod::Exact;

  // Monte Carlo only.
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> gamma_se;
  std::vector<double> lambda_se;
  double aggregate_gamma_se = 0.0;
  double aggregate_lambda_se = 0.0;
  double expected_production_se = 0.0;
};

namespace detail {

// M_t = P(S = T)·Σ_{|T|=t} v(T) for t = 0..n. Both aggregate closed forms and the
// expected production are linear in these masses.
inline std::vector<double> size_masses(const CoalitionModel& model, const Game& game) {
  const std::size_t n = model.n();
  if (game.n() != n) throw std::invalid_argument("model and game disagree on n");
  std::vector<double> mass(n + 1, 0.0);
  if (game.is_size_symmetric()) {
    for (std::size_t t = 0; t <= n; ++t) {
      const double u = game.value_at_size(t);
      if (u != 0.0) mass[t] = size_pmf(model, t) * u;
    }
    return mass;
  }
  if (const auto* a = std::get_if<games::Additive>(&game.body())) {
    // Σ_{|T|=t} Σ_{i∈T} w_i = C(n−1, t−1)·W, so M_t = P(|S|=t)·(t/n)·W.
    const double total = std::accumulate(a->values.begin(), a->values.end(), 0.0);
    const double nd = static_cast<double>(n);
    for (std::size_t t = 1; t <= n; ++t) {
      mass[t] = size_pmf(model, t) * (static_cast<double>(t) / nd) * total;
    }
    return mass;
  }
  const auto values = tabulate(game);  // capacity_error beyond the cap
  std::vector<double> by_size(n + 1, 0.0);
  for (std::size_t m = 0; m < values.size(); ++m) by_size[std::popcount(m)] += values[m];
  for (std::size_t t = 0; t <= n; ++t) {
    if (by_size[t] != 0.0) mass[t] = std::exp(model.log_subset_probability(t)) * by_size[t];
  }
  return mass;
}

inline void require_model_matches(const CoalitionModel& model, const Game& game) {
  if (model.n() != game.n()) {
    throw std::invalid_argument("model has n = " + std::to_string(model.n()) + " but game has n = " +
                                std::to_string(game.n()));
  }
}

}  // namespace detail

/// E[v(S)] = Σ_T P(S = T) v(T).
inline double expected_production(const CoalitionModel& model, const Game& game) {
  detail::require_model_matches(model, game);
  const auto mass = detail::size_masses(model, game);
  return std::accumulate(mass.begin(), mass.end(), 0.0);
}

/// Σ_i γ_i by the closed form: n·P(S=N)·v(N) plus, for T ≠ N, the weight
/// (t(θ+ρ−1) − nθ)/(ρ+n−t−1) on P(S=T)·v(T).
inline double aggregate_gamma_formula(const CoalitionModel& model, const Game& game) {
  detail::require_model_matches(model, game);
  const auto mass = detail::size_masses(model, game);
  const std::size_t n = model.n();
  const double nd = static_cast<double>(n);
  const double theta = model.theta();
  const double rho = model.rho();
  double total = nd * mass[n];
  for (std::size_t t = 0; t < n; ++t) {
    if (mass[t] == 0.0) continue;
    const double td = static_cast<double>(t);
    const double denom = rho + nd - td - 1.0;
    if (denom == 0.0) {
      throw singular_error("aggregate_gamma_formula: rho + n - t - 1 = 0 at t = " + std::to_string(t));
    }
    total += (td * (theta + rho - 1.0) - nd * theta) / denom * mass[t];
  }
  return total;
}

/// Σ_i λ_i by the closed form: weight (t(θ+ρ−1) − n(θ−1))/(θ+t−1) on
/// P(S=T)·v(T); the T = ∅ term vanishes with v(∅) = 0.
inline double aggregate_lambda_formula(const CoalitionModel& model, const Game& game) {
  detail::require_model_matches(model, game);
  const auto mass = detail::size_masses(model, game);
  const std::size_t n = model.n();
  const double nd = static_cast<double>(n);
  const double theta = model.theta();
  const double rho = model.rho();
  double total = 0.0;
  for (std::size_t t = 1; t <= n; ++t) {
    if (mass[t] == 0.0) continue;
    const double td = static_cast<double>(t);
    const double denom = theta + td - 1.0;
    if (denom == 0.0) {
      throw singular_error("aggregate_lambda_formula: theta + t - 1 = 0 at t = " + std::to_string(t));
    }
    total += (td * (theta + rho - 1.0) - nd * (theta - 1.0)) / denom * mass[t];
  }
  return total;
}

/// Exact D-value.
///
/// Size-symmetric games and additive games use closed forms for any n. Other
/// games are tabulated (n ≤ kEnumerationCap) and summed as
///   γ_i = Σ_{T∋i} P_t v(T) − Σ_{Z∌i} P_{|Z|+1} v(Z),
///   λ_i = Σ_{T∋i} P_{t−1} v(T) − Σ_{Z∌i} P_{|Z|} v(Z),
/// with P_t the probability of one subset of size t.
inline DValuation exact_valuation(const CoalitionModel& model, const Game& game) {
  detail::require_model_matches(model, game);
  const std::size_t n = model.n();
  const double nd = static_cast<double>(n);
  DValuation out;
  out.method = ValuationMethod::Exact;
  out.gamma.assign(n, 0.0);
  out.lambda.assign(n, 0.0);

  if (game.is_size_symmetric()) {
    // Every player is in a size-t coalition with probability t/n.
    const auto pmf = size_distribution(model);
    double g = 0.0;
    double l = 0.0;
    for (std::size_t t = 0; t <= n; ++t) {
      const double td = static_cast<double>(t);
      const double u = game.value_at_size(t);
      if (t > 0) g += td / nd * pmf[t] * (u - game.value_at_size(t - 1));
      if (t < n) l += (nd - td) / nd * pmf[t] * (game.value_at_size(t + 1) - u);
    }
    std::fill(out.gamma.begin(), out.gamma.end(), g);
    std::fill(out.lambda.begin(), out.lambda.end(), l);
  } else if (const auto* a = std::get_if<games::Additive>(&game.body())) {
    const double in = model.prior_mean();
    const double out_prob = model.rho() / (model.theta() + model.rho());
    for (std::size_t i = 0; i < n; ++i) {
      out.gamma[i] = a->values[i] * in;
      out.lambda[i] = a->values[i] * out_prob;
    }
  } else {
    const auto values = tabulate(game);
    const auto p = model.subset_probabilities();
    // with_i[i][t] = Σ_{|T|=t, T∋i} v(T); by_size[t] = Σ_{|T|=t} v(T).
    std::vector<double> with_i(n * (n + 1), 0.0);
    std::vector<double> by_size(n + 1, 0.0);
    for (std::uint32_t m = 0; m < values.size(); ++m) {
      const double v = values[m];
      if (v == 0.0) continue;
      const auto t = static_cast<std::size_t>(std::popcount(m));
      by_size[t] += v;
      for (std::uint32_t r = m; r != 0; r &= r - 1) {
        with_i[static_cast<std::size_t>(std::countr_zero(r)) * (n + 1) + t] += v;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      double g = 0.0;
      double l = 0.0;
      for (std::size_t t = 0; t <= n; ++t) {
        const double in = with_i[i * (n + 1) + t];
        const double excluded = by_size[t] - in;
        if (t >= 1) {
          g += p[t] * in;
          l += p[t - 1] * in;
        }
        if (t < n) g -= p[t + 1] * excluded;
        l -= p[t] * excluded;
      }
      out.gamma[i] = g;
      out.lambda[i] = l;
    }
  }
  out.aggregate_gamma = std::accumulate(out.gamma.begin(), out.gamma.end(), 0.0);
  out.aggregate_lambda = std::accumulate(out.lambda.begin(), out.lambda.end(), 0.0);
  out.expected_production = expected_production(model, game);
  return out;
}

namespace detail {

// Running mean and sum of squared deviations per entry (Welford), mergeable
// with Chan's pairwise update.
struct MomentAccumulator {
  std::uint64_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;

  explicit MomentAccumulator(std::size_t width = 0) : mean(width, 0.0), m2(width, 0.0) {}

  void add(std::span<const double> x) {
    ++count;
    const double inv = 1.0 / static_cast<double>(count);
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double delta = x[k] - mean[k];
      mean[k] += delta * inv;
      m2[k] += delta * (x[k] - mean[k]);
    }
  }

  void merge(const MomentAccumulator& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double total = na + nb;
    for (std::size_t k = 0; k < mean.size(); ++k) {
      const double delta = other.mean[k] - mean[k];
      mean[k] += delta * nb / total;
      m2[k] += other.m2[k] + delta * delta * na * nb / total;
    }
    count += other.count;
  }

  double std_error(std::size_t k) const {
    if (count < 2) return 0.0;
    const double nd = static_cast<double>(count);
    return std::sqrt(m2[k] / (nd - 1.0)) / std::sqrt(nd);
  }
};

// Pairwise merge in block order; the tree shape depends only on the block count.
inline MomentAccumulator tree_reduce(std::vector<MomentAccumulator>& parts) {
  if (parts.empty()) return MomentAccumulator{};
  for (std::size_t stride = 1; stride < parts.size(); stride *= 2) {
    for (std::size_t k = 0; k + stride < parts.size(); k += 2 * stride) {
      parts[k].merge(parts[k + stride]);
    }
  }
  return parts.front();
}

}  // namespace detail

/// Samples per independent random stream in mc_valuation.
inline constexpr std::uint64_t kMonteCarloBlock = 4096;

/// Monte Carlo D-value from `samples` draws of S.
///
/// Per draw, γ_i accumulates v(S) − v(S∖{i}) for i ∈ S and λ_i accumulates
/// v(S∪{i}) − v(S) for i ∉ S. Draws are cut into fixed blocks with one stream
/// each and merged in block order, so the output is bit-identical for any
/// thread count.
inline DValuation mc_valuation(const CoalitionModel& model, const Game& game, std::uint64_t samples,
                               std::uint64_t seed, std::size_t threads = 0) {
  detail::require_model_matches(model, game);
  if (samples == 0) throw std::invalid_argument("mc_valuation: samples must be at least 1");
  const std::size_t n = model.n();
  // Entries: γ_0..γ_{n−1}, λ_0..λ_{n−1}, v(S), Σγ, Σλ.
  const std::size_t width = 2 * n + 3;
  const std::uint64_t blocks = (samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<detail::MomentAccumulator> parts(blocks, detail::MomentAccumulator(width));

  parallel_for(static_cast<std::size_t>(blocks), resolve_threads(threads), [&](std::size_t b) {
    RandomStream stream(seed, b);
    const std::uint64_t begin = b * kMonteCarloBlock;
    const std::uint64_t end = std::min(samples, begin + kMonteCarloBlock);
    std::vector<double> toggled(n);
    std::vector<double> row(width);
    auto& acc = parts[b];
    for (std::uint64_t k = begin; k < end; ++k) {
      const Subset s = sample_subset(model, stream);
      const double v = toggled_values(game, s, toggled);
      double sum_gain = 0.0;
      double sum_loss = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (s.contains(static_cast<Player>(i))) {
          row[i] = v - toggled[i];
          row[n + i] = 0.0;
          sum_gain += row[i];
        } else {
          row[i] = 0.0;
          row[n + i] = toggled[i] - v;
          sum_loss += row[n + i];
        }
      }
      row[2 * n] = v;
      row[2 * n + 1] = sum_gain;
      row[2 * n + 2] = sum_loss;
      acc.add(row);
    }
  });

  const auto total = detail::tree_reduce(parts);
  DValuation out;
  out.method = ValuationMethod::MonteCarlo;
  out.samples = samples;
  out.seed = seed;
  out.gamma.assign(total.mean.begin(), total.mean.begin() + static_cast<std::ptrdiff_t>(n));
  out.lambda.assign(total.mean.begin() + static_cast<std::ptrdiff_t>(n),
                    total.mean.begin() + static_cast<std::ptrdiff_t>(2 * n));
  out.gamma_se.resize(n);
  out.lambda_se.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.gamma_se[i] = total.std_error(i);
    out.lambda_se[i] = total.std_error(n + i);
  }
  out.expected_production = total.mean[2 * n];
  out.expected_production_se = total.std_error(2 * n);
  out.aggregate_gamma = std::accumulate(out.gamma.begin(), out.gamma.end(), 0.0);
  out.aggregate_lambda = std::accumulate(out.lambda.begin(), out.lambda.end(), 0.0);
  out.aggregate_gamma_se = total.std_error(2 * n + 1);
  out.aggregate_lambda_se = total.std_error(2 * n + 2);
  return out;
}

struct OrderingReport {
  Player i = 0;
  Player j = 0;
  bool outperforms = false;
  bool gamma_dominates = false;  ///< γ_i ≥ γ_j
  bool lambda_dominates = false;  ///< λ_i ≥ λ_j
  double gamma_i = 0.0;
  double gamma_j = 0.0;
  double lambda_i = 0.0;
  double lambda_j = 0.0;
};

/// Checks the ordering consequence of uniform outperformance: if i uniformly
/// outperforms j then γ_i ≥ γ_j and λ_i ≥ λ_j. A violation beyond rounding
/// throws invariant_error.
inline OrderingReport ordering_check(const CoalitionModel& model, const Game& game, Player i, Player j,
                                     const DValuation* precomputed = nullptr) {
  OrderingReport report;
  report.i = i;
  report.j = j;
  report.outperforms = uniformly_outperforms(game, i, j);
  DValuation local;
  if (precomputed == nullptr) {
    local = exact_valuation(model, game);
    precomputed = &local;
  }
  const auto& val = *precomputed;
  report.gamma_i = val.gamma[i];
  report.gamma_j = val.gamma[j];
  report.lambda_i = val.lambda[i];
  report.lambda_j = val.lambda[j];
  // Equal marginals cancel only up to rounding in the two-sum form.
  const double scale = 1e-12 * std::max({1.0, std::fabs(report.gamma_i), std::fabs(report.gamma_j),
                                         std::fabs(report.lambda_i), std::fabs(report.lambda_j)});
  report.gamma_dominates = report.gamma_i >= report.gamma_j - scale;
  report.lambda_dominates = report.lambda_i >= report.lambda_j - scale;
  if (report.outperforms && !(report.gamma_dominates && report.lambda_dominates)) {
    std::ostringstream os;
    os.precision(17);
    os << "ordering_check: player " << i << " uniformly outperforms " << j
       << " but gamma = (" << report.gamma_i << ", " << report.gamma_j << "), lambda = ("
       << report.lambda_i << ", " << report.lambda_j << ")";
    throw invariant_error(os.str());
  }
  return report;
}

inline nlohmann::json to_json(const DValuation& val) {
  nlohmann::json doc;
  doc["method"] = val.method == ValuationMethod::Exact ? "exact" : "monte_carlo";
  doc["gamma"] = val.gamma;
  doc["lambda"] = val.lambda;
  doc["aggregate_gamma"] = val.aggregate_gamma;
  doc["aggregate_lambda"] = val.aggregate_lambda;
  doc["expected_production"] = val.expected_production;
  if (val.method == ValuationMethod::MonteCarlo) {
    doc["samples"] = val.samples;
    doc["seed"] = val.seed;
    doc["std_error"] = {{"gamma", val.gamma_se},
                        {"lambda", val.lambda_se},
                        {"aggregate_gamma", val.aggregate_gamma_se},
                        {"aggregate_lambda", val.aggregate_lambda_se},
                        {"expected_production", val.expected_production_se}};
  }
  return doc;
}

}  // namespace dichotomy

#endif  // DICHOTOMY_DVALUE_HPP
