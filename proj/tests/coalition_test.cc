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
#include <numeric>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <gtest/gtest.h>

#include "dichotomy/coalition.hpp"
#include "dichotomy/numerics.hpp"
#include "oracles.hpp"

namespace dichotomy {
namespace {

TEST(Subset, MaskAndListRegimes) {
  Subset small(5, {0, 3});
  EXPECT_TRUE(small.uses_mask());
  EXPECT_EQ(small.mask(), 0b1001u);
  EXPECT_EQ(small.with(1).size(), 3u);
  EXPECT_FALSE(small.without(3).contains(3));
  EXPECT_THROW(small.insert(5), std::out_of_range);

  Subset big(40, {39, 2, 17, 2});
  EXPECT_FALSE(big.uses_mask());
  EXPECT_EQ(big.members(), (std::vector<Player>{2, 17, 39}));
  EXPECT_TRUE(big.contains(17));
  EXPECT_THROW(big.mask(), std::logic_error);
  EXPECT_EQ(Subset::full(40).size(), 40u);
  EXPECT_EQ(Subset::full(30).mask(), (1u << 30) - 1);
  EXPECT_THROW(Subset::from_mask(3, 0b1000), std::out_of_range);
}

TEST(CoalitionModel, RejectsInvalidParameters) {
  EXPECT_THROW(CoalitionModel(0, 1, 1), std::domain_error);
  EXPECT_THROW(CoalitionModel(3, 0, 1), std::domain_error);
  EXPECT_THROW(CoalitionModel(3, 1, -2), std::domain_error);
  EXPECT_DOUBLE_EQ(CoalitionModel(3, 2, 6).prior_mean(), 0.25);
}

TEST(SizePmf, UniformPriorGivesUniformSizes) {
  EXPECT_NEAR(size_pmf(CoalitionModel(10, 1, 1), 4), 1.0 / 11.0, 1e-15);
  EXPECT_NEAR(size_pmf(CoalitionModel(2, 1, 1), 1), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(size_pmf(CoalitionModel(2, 1, 1), 3), std::out_of_range);
}

TEST(SizePmf, MatchesSubsetEnumeration) {
  const CoalitionModel m(12, 2.5, 4.0);
  double sum7 = 0.0;
  for_each_subset(12, [&](const Subset& s) {
    if (s.size() == 7) sum7 += subset_pmf(m, s);
  });
  EXPECT_NEAR(size_pmf(m, 7), sum7, 1e-14);
  const auto law = size_distribution(m);
  EXPECT_NEAR(std::accumulate(law.begin(), law.end(), 0.0), 1.0, 1e-12);
}

TEST(SubsetPmf, TwoPlayerUniform) {
  const CoalitionModel m(2, 1, 1);
  EXPECT_NEAR(subset_pmf(m, Subset(2)), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(subset_pmf(m, Subset(2, {0})), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(subset_pmf(m, Subset(2, {0, 1})), 1.0 / 3.0, 1e-15);
  EXPECT_THROW(subset_pmf(m, Subset(4, {3})), std::out_of_range);
}

TEST(SubsetPmf, AgreesWithBoostBetaAndSumsToOne) {
  for (std::size_t n : {1, 5, 9, 14}) {
    const CoalitionModel m(n, 0.7, 3.2);
    std::vector<double> logs;
    for_each_subset(n, [&](const Subset& s) {
      const double p = subset_pmf(m, s);
      EXPECT_NEAR(p, oracle::subset_probability(n, 0.7, 3.2, s.size()), 1e-13 * p);
      logs.push_back(m.log_subset_probability(s.size()));
    });
    EXPECT_NEAR(numerics::log_sum_exp(logs), 0.0, 1e-12) << n;
  }
}

TEST(SubsetPmf, Exchangeable) {
  const CoalitionModel m(8, 1.5, 2.5);
  EXPECT_DOUBLE_EQ(subset_pmf(m, Subset(8, {0, 1, 2})), subset_pmf(m, Subset(8, {7, 3, 5})));
  EXPECT_NEAR(size_pmf(CoalitionModel(12, 2.5, 4), 7) / std::exp(numerics::log_binomial(12, 7)),
              subset_pmf(CoalitionModel(12, 2.5, 4), Subset(12, {0, 1, 2, 3, 4, 5, 6})), 1e-15);
}

TEST(SampleSubset, EmptySetFrequency) {
  const CoalitionModel m(2, 1, 1);
  RandomStream rs(2024);
  const int draws = 1'000'000;
  int empty = 0;
  for (int k = 0; k < draws; ++k) empty += sample_subset(m, rs).empty();
  const double p = 1.0 / 3.0;
  const double se = std::sqrt(p * (1 - p) / draws);
  EXPECT_NEAR(static_cast<double>(empty) / draws, p, 4 * se);
}

TEST(SampleSubset, SinglePlayerMarginal) {
  const CoalitionModel m(1, 0.4, 1.3);
  RandomStream rs(5);
  const int draws = 400'000;
  int in = 0;
  for (int k = 0; k < draws; ++k) in += sample_subset(m, rs).contains(0);
  const double p = m.prior_mean();
  EXPECT_NEAR(static_cast<double>(in) / draws, p, 4 * std::sqrt(p * (1 - p) / draws));
}

TEST(SampleSubset, SizeHistogramChiSquared) {
  const CoalitionModel m(12, 2.5, 4.0);
  RandomStream rs(99);
  const int draws = 200'000;
  std::vector<double> counts(13, 0.0);
  for (int k = 0; k < draws; ++k) counts[sample_subset(m, rs).size()] += 1;
  double chi2 = 0.0;
  for (std::size_t s = 0; s <= 12; ++s) {
    const double expected = draws * size_pmf(m, s);
    chi2 += (counts[s] - expected) * (counts[s] - expected) / expected;
  }
  const boost::math::chi_squared dist(12);
  EXPECT_LT(chi2, boost::math::quantile(dist, 0.999));
}

TEST(SampleSubset, UniformWithinSizeForLargeUniverse) {
  // List regime: each player's inclusion frequency matches θ/(θ+ρ).
  const CoalitionModel m(50, 3.0, 1.0);
  RandomStream rs(17);
  const int draws = 40'000;
  std::vector<int> hits(50, 0);
  for (int k = 0; k < draws; ++k) {
    for (Player p : sample_subset(m, rs).members()) ++hits[p];
  }
  for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / draws, 0.75, 0.02);
}

TEST(RandomStream, DeterministicAndSplittable) {
  RandomStream a(7, 3), b(7, 3);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a.next_u64(), b.next_u64());
  RandomStream c = RandomStream(7).split(1), d = RandomStream(7).split(2);
  EXPECT_NE(c.next_u64(), d.next_u64());
}

TEST(RandomStream, BetaSamplerSmallShapes) {
  RandomStream rs(11);
  const double a = 0.2, b = 0.5;
  const int draws = 400'000;
  double sum = 0.0;
  for (int k = 0; k < draws; ++k) {
    const double x = rs.beta(a, b);
    ASSERT_GE(x, 0.0);
    ASSERT_LE(x, 1.0);
    sum += x;
  }
  const double mean = a / (a + b);
  const double sd = std::sqrt(a * b / ((a + b) * (a + b) * (a + b + 1)));
  EXPECT_NEAR(sum / draws, mean, 5 * sd / std::sqrt(draws));
}

TEST(RandomStream, BinomialMoments) {
  RandomStream rs(3);
  for (double p : {0.01, 0.3, 0.97}) {
    const std::uint64_t n = 500;
    const int draws = 100'000;
    double sum = 0.0;
    for (int k = 0; k < draws; ++k) sum += static_cast<double>(rs.binomial(n, p));
    EXPECT_NEAR(sum / draws, n * p, 5 * std::sqrt(n * p * (1 - p) / draws)) << p;
  }
}

TEST(Posterior, Substitution) {
  const auto p = posterior(CoalitionModel(10, 1, 1), 5);
  EXPECT_EQ(p.a, 6);
  EXPECT_EQ(p.b, 6);
  EXPECT_EQ(p.omega, 0.5);
  const auto q = posterior(CoalitionModel(10000, 2, 3), 9500);
  EXPECT_EQ(q.a, 9502);
  EXPECT_EQ(q.b, 503);
  EXPECT_THROW(posterior(CoalitionModel(3, 1, 1), 4), std::out_of_range);
}

TEST(Posterior, MeanApproachesOmega) {
  double prev = 1.0;
  for (std::size_t n = 100; n <= 1'000'000; n *= 10) {
    const auto p = posterior(CoalitionModel(n, 2, 3), n * 7 / 10);
    const double err = std::fabs(p.a / (p.a + p.b) - 0.7);
    EXPECT_LT(err, prev);
    EXPECT_EQ(p.a - 2.0, static_cast<double>(n * 7 / 10));
    prev = err;
  }
}

}  // namespace
}  // namespace dichotomy
