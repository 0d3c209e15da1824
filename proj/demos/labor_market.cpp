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

// A small labor market end to end: pick a tax rule for an observed
// employment rate, recover the prior it implies, and look at the posterior
// and at how a redundant production process values its workers.

#include <cstdio>

#include "dichotomy/dichotomy.hpp"

int main() {
  using namespace dichotomy;
  const std::uint64_t n = 10000;
  const double omega = 0.95;
  const double delta = 0.2;

  const double tau = tax_rule_with_offset(static_cast<double>(n), omega, delta, 2.0);
  const auto sol = solve_theta_rho(n, omega, delta, tau);
  std::printf("tau = %.6f (limit rule %.6f)\n", tau, asymptotic_tax_rule(omega, delta));
  std::printf("theta = %.4f, rho = %.4f, valid = %s\n", sol.theta, sol.rho, sol.valid ? "yes" : "no");

  const auto post = posterior_from_policy(n, omega, delta, tau);
  const auto s = summarize(post);
  std::printf("posterior mean %.8f, sd %.3e, median %.8f, MAD %.3e\n", s.mean, std::sqrt(s.variance),
              s.median, s.mad);

  // Nine workers, any five of whom can run the plant.
  const CoalitionModel model(9, 2.0, 1.0);
  const auto val = exact_valuation(model, Game::k_out_of_n(9, 5));
  std::printf("k-out-of-n: gamma = %.6f, lambda = %.6f per worker, E[v(S)] = %.6f\n", val.gamma[0],
              val.lambda[0], val.expected_production);

  const auto shares = outcome_shares(100, 95, asymptotic_tax_rule(omega, delta), delta, 1000.0);
  std::printf("equal outcome: employed %.4f, unemployed %.4f, reserve %.2f\n", shares.per_employed,
              shares.per_unemployed, shares.reserve);
  return 0;
}
