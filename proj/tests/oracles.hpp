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

#ifndef DICHOTOMY_TESTS_ORACLES_HPP
#define DICHOTOMY_TESTS_ORACLES_HPP

// Independent reference computations. Nothing here calls the library's
// valuation or special-function code; enumeration works straight from the
// definitions, and the quadrature uses boost tanh_sinh on the raw density.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

namespace oracle {

/// P(S = T) for |T| = t, by boost's beta function.
inline double subset_probability(std::size_t n, double theta, double rho, std::size_t t) {
  return boost::math::beta(theta + t, rho + n - t) / boost::math::beta(theta, rho);
}

struct Valuation {
  std::vector<double> gamma;
  std::vector<double> lambda;
  double expected = 0.0;
};

/// γ_i = Σ_{T∋i} P(T)[v(T) − v(T∖i)] and λ_i = Σ_{T∌i} P(T)[v(T∪i) − v(T)].
inline Valuation definitional(const std::vector<double>& v, double theta, double rho) {
  const std::size_t n = static_cast<std::size_t>(std::countr_zero(v.size()));
  Valuation out{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), 0.0};
  std::vector<double> p(n + 1);
  for (std::size_t t = 0; t <= n; ++t) p[t] = subset_probability(n, theta, rho, t);
  for (std::uint32_t m = 0; m < v.size(); ++m) {
    const double pm = p[std::popcount(m)];
    out.expected += pm * v[m];
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bit = 1u << i;
      if (m & bit) {
        out.gamma[i] += pm * (v[m] - v[m & ~bit]);
      } else {
        out.lambda[i] += pm * (v[m | bit] - v[m]);
      }
    }
  }
  return out;
}

/// Uniform random table on [-1, 2] with v(∅) = 0.
inline std::vector<double> random_table(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  std::vector<double> v(std::size_t{1} << n);
  for (std::size_t m = 1; m < v.size(); ++m) v[m] = u(rng);
  return v;
}

/// Random monotone table: each coalition adds a non-negative increment to
/// the best of its maximal proper subsets.
inline std::vector<double> random_monotone_table(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(std::size_t{1} << n, 0.0);
  for (std::size_t m = 1; m < v.size(); ++m) {
    double best = 0.0;
    for (std::size_t r = m; r != 0; r &= r - 1) best = std::max(best, v[m & ~(r & (~r + 1))]);
    v[m] = best + (u(rng) < 0.3 ? 0.0 : u(rng));
  }
  return v;
}

/// ∫_lo^hi f(x)·x^(a−1)(1−x)^(b−1)/β(a,b) dx by tanh_sinh.
template <typename F>
double beta_integral(F f, double a, double b, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double lb = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  auto g = [&](double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return f(x) * std::exp((a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - lb);
  };
  return ts.integrate(g, lo, hi);
}

}  // namespace oracle

#endif  // DICHOTOMY_TESTS_ORACLES_HPP
