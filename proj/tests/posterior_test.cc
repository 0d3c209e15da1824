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

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "dichotomy/errors.hpp"
#include "dichotomy/io/csv.hpp"
#include "dichotomy/posterior.hpp"
#include "oracles.hpp"

namespace dichotomy {
namespace {

PosteriorRate rate(double a, double b) { return {a, b, a / (a + b)}; }

double rel(double x, double ref) { return std::fabs(x - ref) / std::fabs(ref); }

TEST(Summary, SymmetricPosterior) {
  const auto s = summarize(rate(7.5, 7.5));
  EXPECT_DOUBLE_EQ(s.mean, 0.5);
  EXPECT_NEAR(s.median, 0.5, 1e-13);
  EXPECT_NEAR(s.lower_semivariance, s.upper_semivariance, 1e-15);
  EXPECT_NEAR(s.lower_semivariance, s.variance / 2, 1e-15);
}

TEST(Summary, ClosedFormVariance) {
  const auto p = PosteriorRate::from_counts(1, 1, 10, 5);
  EXPECT_EQ(p.a, 6);
  EXPECT_EQ(p.b, 6);
  EXPECT_NEAR(posterior_variance(p), 1.0 / 52, 1e-16);
  ASSERT_TRUE(posterior_mode(p).has_value());
  EXPECT_DOUBLE_EQ(*posterior_mode(p), 0.5);
}

TEST(Summary, ModeUndefinedAtSmallShapes) {
  EXPECT_FALSE(posterior_mode(rate(1.0, 3.0)).has_value());
  EXPECT_FALSE(posterior_mode(rate(3.0, 0.5)).has_value());
  EXPECT_FALSE(summarize(rate(0.5, 0.5)).mode.has_value());
  EXPECT_NEAR(*posterior_mode(rate(6, 4)), 5.0 / 8, 1e-16);
}

TEST(Moments, MatchQuadrature) {
  for (auto [a, b] : {std::pair{6.0, 4.0}, {2.5, 9.0}, {40.0, 13.0}}) {
    for (unsigned k = 1; k <= 6; ++k) {
      const double q = oracle::beta_integral([k](double x) { return std::pow(x, k); }, a, b, 0, 1);
      EXPECT_LT(rel(raw_moment(rate(a, b), k), q), 1e-10) << a << " " << b << " k=" << k;
    }
  }
}

TEST(Semivariances, MatchQuadrature) {
  for (auto [a, b] : {std::pair{6.0, 4.0}, {2.0, 30.0}, {300.0, 120.0}, {0.7, 1.4}}) {
    const auto p = rate(a, b);
    const double mu = posterior_mean(p);
    const auto sq = [mu](double x) { return (x - mu) * (x - mu); };
    const auto semi = semivariances(p);
    EXPECT_LT(rel(semi.lower, oracle::beta_integral(sq, a, b, 0, mu)), 1e-10) << a << " " << b;
    EXPECT_LT(rel(semi.upper, oracle::beta_integral(sq, a, b, mu, 1)), 1e-10) << a << " " << b;
    EXPECT_LT(rel(semi.lower + semi.upper, posterior_variance(p)), 1e-10);
  }
  EXPECT_NEAR(semivariances(rate(6, 4)).lower, 0.01162416425890909090909091, 1e-15);
}

TEST(Mad, MatchesQuadrature) {
  for (auto [a, b] : {std::pair{50.0, 70.0}, {30.0, 30.0}, {1000.0, 31.0}, {3.0, 5.0}}) {
    const auto p = rate(a, b);
    const double mu = posterior_mean(p);
    const auto ab = [mu](double x) { return std::fabs(x - mu); };
    const double q = oracle::beta_integral(ab, a, b, 0, mu) + oracle::beta_integral(ab, a, b, mu, 1);
    EXPECT_LT(rel(mad_closed_form(p), q), 1e-9) << a << " " << b;
  }
  EXPECT_NEAR(mad_closed_form(rate(50, 70)), 0.03583133415072281481973758, 1e-15);
}

TEST(Mad, UniformCaseDecidesTheReading) {
  // E|U − 1/2| = 1/4. The variant without the trailing (a+b) gives 1/2.
  EXPECT_NEAR(mad_closed_form(rate(1, 1)), 0.25, 1e-15);
  EXPECT_NEAR(mad_printed_form(rate(1, 1)), 0.5, 1e-15);
  EXPECT_NEAR(mad_printed_form(rate(50, 70)), 120 * mad_closed_form(rate(50, 70)), 1e-13);
}

TEST(Mad, RatioTendsToTwoOverPi) {
  const auto p = rate(1e4, 1e4);
  const double m = mad_closed_form(p);
  EXPECT_NEAR(m * m / posterior_variance(p), 2 / std::numbers::pi, 1e-3);
  const auto huge = rate(3e12, 1e12);
  EXPECT_TRUE(std::isfinite(mad_closed_form(huge)));
}

TEST(Median, MatchesReferenceAndBrackets) {
  EXPECT_NEAR(posterior_median(rate(6, 4)), 0.6069151671893704882404139, 1e-12);
  for (auto [a, b] : {std::pair{6.0, 4.0}, {2.0, 30.0}, {1.5, 1.2}, {5e5, 2e5}}) {
    const auto p = rate(a, b);
    const double med = posterior_median(p);
    const double mu = posterior_mean(p), mo = *posterior_mode(p);
    EXPECT_GE(med, std::min(mu, mo) - 1e-13);
    EXPECT_LE(med, std::max(mu, mo) + 1e-13);
    EXPECT_NEAR(beta_cdf(med, a, b), 0.5, 1e-10);
  }
}

TEST(BetaCdf, QuadratureAgreesWithSeries) {
  for (auto [x, a, b] : {std::tuple{0.3, 5.0, 7.0}, {0.61, 600.0, 400.0}, {0.2, 0.5, 3.0}}) {
    EXPECT_NEAR(beta_cdf_quadrature(x, a, b), beta_cdf(x, a, b), 1e-10);
  }
  EXPECT_NEAR(beta_cdf(0.3, 5, 7), 0.2103046173, 1e-10);
}

TEST(PolicyPosterior, ValidAndInfeasible) {
  const auto p = posterior_from_policy(1000, 0.9, 0.1, 0.5);
  EXPECT_NEAR(p.omega, 0.9, 1e-15);
  EXPECT_THROW(posterior_from_policy(1000, 0.9, 0.1, 0.1), infeasible_error);
}

const std::vector<std::uint64_t> kNs{1'000, 10'000, 100'000, 1'000'000};

TEST(Reports, DegenerateLimit) {
  const auto rep = verify_degenerate_limit(0.9, 0.1, 0.5, kNs);
  EXPECT_TRUE(rep.passed()) << rep.first_failure()->name;
  EXPECT_EQ(rep.rows.size(), 4u);
  EXPECT_LT(rep.rows.back().abs_error, rep.rows.front().abs_error);
  EXPECT_THROW(verify_degenerate_limit(0.9, 0.1, asymptotic_tax_rule(0.9, 0.1), kNs), std::domain_error);
  EXPECT_THROW(verify_degenerate_limit(0.9, 0.1, 1.0, kNs), std::domain_error);
  const std::vector<std::uint64_t> bad{10, 5};
  EXPECT_THROW(verify_degenerate_limit(0.9, 0.1, 0.5, bad), std::invalid_argument);
}

TEST(Reports, AsymptoticVariance) {
  const auto rep = verify_asymptotic_variance(0.9, 0.1, 0.5, kNs);
  EXPECT_TRUE(rep.passed());
  EXPECT_NEAR(rep.rows.back().target, 0.0279, 1e-12);
  EXPECT_NEAR(rep.rows.back().n_var, 0.0279, 1e-4);
}

TEST(Reports, VarianceVanishesAsDeltaShrinks) {
  double prev = 1.0;
  for (double gap : {0.2, 0.05, 0.01}) {
    const double tau = asymptotic_tax_rule(0.9, 0.1) + gap;
    const auto rep = verify_asymptotic_variance(0.9, 0.1, tau, kNs);
    EXPECT_LT(rep.rows.back().n_var, prev);
    prev = rep.rows.back().n_var;
  }
}

TEST(Reports, OffsetRule) {
  const auto rep = verify_offset_rule_variance(0.9, 0.1, 2.0, kNs);
  EXPECT_TRUE(rep.passed()) << rep.first_failure()->detail;
  EXPECT_THROW(verify_offset_rule_variance(0.9, 0.1, 1.0, kNs), std::domain_error);
}

TEST(Reports, SemivarianceSandwich) {
  for (double d : {0.1, 0.3, 0.5}) {
    const double tau = asymptotic_tax_rule(0.8, 0.1) + d;
    const auto rep = verify_semivariance_sandwich(0.8, 0.1, tau, kNs);
    EXPECT_TRUE(rep.passed()) << d;
  }
}

TEST(Reports, MeanExpansion) {
  const auto rep = verify_posterior_mean_expansion(0.9, 0.1, 0.5, kNs);
  EXPECT_TRUE(rep.passed());
  EXPECT_NEAR(rep.rows.back().target, -0.329, 1e-12);
  EXPECT_THROW(verify_posterior_mean_expansion(0.4, 0.1, 0.7, kNs), std::domain_error);
}

TEST(Reports, MeanDecreasesInTau) {
  const double lo = asymptotic_tax_rule(0.75, 0.1);
  double prev = 2.0;
  for (int k = 1; k <= 20; ++k) {
    const double mu = posterior_mean(posterior_from_policy(100'000, 0.75, 0.1, lo + (1 - lo) * k / 21.0));
    EXPECT_LT(mu, prev);
    prev = mu;
  }
}

TEST(Reports, MadRatio) {
  const auto rep = verify_mad_ratio(0.9, 0.1, 0.5, kNs);
  EXPECT_TRUE(rep.passed());
}

TEST(Reports, SlopeHelper) {
  const std::vector<double> x{1, 10, 100}, y{1, 0.1, 0.01};
  EXPECT_NEAR(log_log_slope(x, y), -1.0, 1e-12);
  const std::vector<double> one{1};
  EXPECT_TRUE(std::isnan(log_log_slope(one, one)));
}

TEST(Reports, CsvLayout) {
  const auto rep = verify_asymptotic_variance(0.9, 0.1, 0.5, kNs);
  std::stringstream ss;
  write_report_csv(ss, rep);
  const auto table = io::read_csv(ss);
  for (const char* col : {"n", "theta", "rho", "mean", "variance", "n_var", "lower_semi", "upper_semi", "mad",
                          "target", "abs_error"}) {
    EXPECT_NE(table.column(col), io::CsvTable::npos) << col;
  }
  EXPECT_EQ(table.rows.size(), 4u);
}

}  // namespace
}  // namespace dichotomy
