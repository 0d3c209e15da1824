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

#ifndef DICHOTOMY_APPS_HPP
#define DICHOTOMY_APPS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "dichotomy/coalition.hpp"
#include "dichotomy/dvalue.hpp"
#include "dichotomy/production.hpp"

namespace dichotomy {

/// Split of v(S): (1−τ)v(S) among the employed, (τ−δ)v(S) among the
/// unemployed, δv(S) held in reserve.
struct OutcomeShares {
  double per_employed = 0.0;
  double per_unemployed = 0.0;
  double reserve = 0.0;
};

inline OutcomeShares outcome_shares(std::uint64_t n, std::uint64_t s, double tau, double delta,
                                    double production_value) {
  if (s < 1 || s + 1 > n) throw std::out_of_range("outcome_shares: s must lie in [1, n-1]");
  const double sd = static_cast<double>(s);
  const double ud = static_cast<double>(n - s);
  return {(1.0 - tau) * production_value / sd, (tau - delta) * production_value / ud,
          delta * production_value};
}

/// Per-player power γ_i + λ_i in a monotone 0/1 game.
struct VotingPower {
  std::vector<double> power;
  std::vector<double> std_error;  ///< empty for exact results
  ValuationMethod method = ValuationMethod::Exact;
  DValuation valuation;
};

struct MonteCarloOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

/// Exact for n ≤ kEnumerationCap and for size-symmetric games; Monte Carlo
/// otherwise, with standard errors of γ_i + λ_i taken as √(se_γ² + se_λ²).
inline VotingPower voting_power(const CoalitionModel& model, const Game& game,
                                const MonteCarloOptions& mc = {}) {
  if (!game.is_binary()) throw std::invalid_argument("voting_power: game values must lie in {0, 1}");
  if (!game.is_monotone()) throw std::invalid_argument("voting_power: game must be monotone");
  VotingPower out;
  const bool exact = game.n() <= kEnumerationCap || game.is_size_symmetric() ||
                     std::holds_alternative<games::Additive>(game.body());
  out.valuation = exact ? exact_valuation(model, game)
                        : mc_valuation(model, game, mc.samples, mc.seed, mc.threads);
  out.method = out.valuation.method;
  const std::size_t n = game.n();
  out.power.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.power[i] = out.valuation.gamma[i] + out.valuation.lambda[i];
  if (!exact) {
    // Upper bound: γ_i and λ_i draws are never both nonzero, so their
    // covariance is non-positive.
    out.std_error.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.std_error[i] = std::hypot(out.valuation.gamma_se[i], out.valuation.lambda_se[i]);
    }
  }
  return out;
}

/// Upfront premium per policyholder, (1+δ̃)·E[v(S)]/n, i.e. (1−δ)E[v(S)]/n
/// with δ = −δ̃.
inline double insurance_premium(const CoalitionModel& model, const Game& game, double surcharge) {
  const double delta = -surcharge;
  return (1.0 - delta) * expected_production(model, game) / static_cast<double>(game.n());
}

namespace curves {

/// g(x) = slope·x.
struct Linear {
  double slope;
};

/// g(x) = scale·x^exponent.
struct Power {
  double exponent;
  double scale = 1.0;
};

/// Piecewise-linear interpolation of (x, y) knots, x strictly increasing.
struct Table {
  std::vector<double> x;
  std::vector<double> y;
};

}  // namespace curves

/// Nondecreasing congestion cost g on x ≥ 0.
class CostCurve {
 public:
  using Body = std::variant<curves::Linear, curves::Power, curves::Table>;

  static CostCurve linear(double slope) {
    if (!(slope >= 0.0) || !std::isfinite(slope)) throw std::invalid_argument("linear cost: slope must be >= 0");
    return CostCurve(curves::Linear{slope});
  }

  static CostCurve power(double exponent, double scale = 1.0) {
    if (!(exponent >= 0.0) || !(scale >= 0.0) || !std::isfinite(exponent) || !std::isfinite(scale)) {
      throw std::invalid_argument("power cost: exponent and scale must be >= 0");
    }
    return CostCurve(curves::Power{exponent, scale});
  }

  static CostCurve table(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2) {
      throw std::invalid_argument("table cost: need at least two (x, y) knots of equal length");
    }
    for (std::size_t k = 1; k < x.size(); ++k) {
      if (!(x[k] > x[k - 1])) throw std::invalid_argument("table cost: x must be strictly increasing");
      if (y[k] < y[k - 1]) throw std::invalid_argument("table cost: g must be nondecreasing");
    }
    return CostCurve(curves::Table{std::move(x), std::move(y)});
  }

  const Body& body() const { return body_; }

  bool is_tabulated() const { return std::holds_alternative<curves::Table>(body_); }

  /// g(x). For tables, x outside the knot range is a domain error and
  /// `interpolated` reports whether x fell strictly between knots.
  double operator()(double x, bool* interpolated = nullptr) const {
    if (interpolated != nullptr) *interpolated = false;
    if (!(x >= 0.0)) throw std::domain_error("cost curve: volume must be non-negative");
    if (const auto* l = std::get_if<curves::Linear>(&body_)) return l->slope * x;
    if (const auto* p = std::get_if<curves::Power>(&body_)) return p->scale * std::pow(x, p->exponent);
    const auto& t = std::get<curves::Table>(body_);
    if (x < t.x.front() || x > t.x.back()) {
      throw std::domain_error("cost curve: volume " + std::to_string(x) + " outside the tabulated range [" +
                              std::to_string(t.x.front()) + ", " + std::to_string(t.x.back()) + "]");
    }
    const auto it = std::lower_bound(t.x.begin(), t.x.end(), x);
    const auto k = static_cast<std::size_t>(it - t.x.begin());
    if (*it == x) return t.y[k];
    if (interpolated != nullptr) *interpolated = true;
    const double w = (x - t.x[k - 1]) / (t.x[k] - t.x[k - 1]);
    return t.y[k - 1] + w * (t.y[k] - t.y[k - 1]);
  }

 private:
  explicit CostCurve(Body body) : body_(std::move(body)) {}
  Body body_;
};

struct TollScenario {
  std::uint64_t n = 0;  ///< cars on the segment
  double omega = 0.0;   ///< fraction of solo drivers
  CostCurve g = CostCurve::linear(0.0);
};

struct TollResult {
  double toll = 0.0;                ///< ξ = g(n(1−ω))
  double production = 0.0;          ///< v(S) = n·g(n) − n(1−ω)·g(n(1−ω)) − nω·ξ
  double per_capita = 0.0;          ///< v(S)/n
  double identity_residual = 0.0;   ///< |v(S)/n − (g(n) − g(n(1−ω)))|, relative
  bool interpolated = false;        ///< some g value came from between table knots
  std::string interpolation;        ///< "piecewise_linear" for tables, "none" otherwise
};

/// Toll that equalizes per-capita outcomes between solo drivers and carpools.
inline TollResult highway_toll(const TollScenario& sc) {
  if (sc.n < 1) throw std::domain_error("toll scenario: n must be at least 1");
  if (!(sc.omega >= 0.0 && sc.omega <= 1.0)) throw std::domain_error("toll scenario: omega must lie in [0, 1]");
  const double n = static_cast<double>(sc.n);
  const double pooled = n * (1.0 - sc.omega);
  bool interp_full = false;
  bool interp_pooled = false;
  const double g_full = sc.g(n, &interp_full);
  const double g_pooled = sc.g(pooled, &interp_pooled);
  TollResult r;
  r.toll = g_pooled;
  r.production = n * g_full - pooled * g_pooled - n * sc.omega * r.toll;
  r.per_capita = r.production / n;
  const double expected = g_full - g_pooled;
  const double scale = std::max({1.0, std::fabs(g_full), std::fabs(g_pooled)});
  r.identity_residual = std::fabs(r.per_capita - expected) / scale;
  r.interpolated = interp_full || interp_pooled;
  r.interpolation = sc.g.is_tabulated() ? "piecewise_linear" : "none";
  return r;
}

/// {"type": "linear", "slope": a} | {"type": "power", "exponent": p, "scale": c}
/// | {"type": "table", "x": [...], "y": [...]}.
inline CostCurve cost_curve_from_json(const nlohmann::json& doc) {
  const auto type = doc.at("type").get<std::string>();
  if (type == "linear") return CostCurve::linear(doc.at("slope").get<double>());
  if (type == "power") return CostCurve::power(doc.at("exponent").get<double>(), doc.value("scale", 1.0));
  if (type == "table") {
    return CostCurve::table(doc.at("x").get<std::vector<double>>(), doc.at("y").get<std::vector<double>>());
  }
  throw std::invalid_argument("cost curve: unknown type '" + type + "'");
}

/// {"n": int, "omega": real, "g": {...}}.
inline TollScenario toll_scenario_from_json(const nlohmann::json& doc) {
  const auto n = doc.at("n").get<std::int64_t>();
  if (n < 1) throw std::domain_error("toll scenario: n must be at least 1");
  TollScenario sc;
  sc.n = static_cast<std::uint64_t>(n);
  sc.omega = doc.at("omega").get<double>();
  sc.g = cost_curve_from_json(doc.at("g"));
  return sc;
}

inline TollScenario load_toll_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open toll scenario: " + path);
  return toll_scenario_from_json(nlohmann::json::parse(in));
}

}  // namespace dichotomy

#endif  // DICHOTOMY_APPS_HPP
