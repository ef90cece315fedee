#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "test_support.hpp"

using namespace divest;
using divest::testing::brute_sharp;
using divest::testing::catalog_specs;
using divest::testing::random_counts;

namespace {

SampleCounts counts_of(std::vector<Count> x) { return SampleCounts::from_counts(x); }

TEST(SampleCounts, DropsZerosAndKeepsLabels) {
  const auto c = counts_of({4, 0, 1});
  ASSERT_EQ(c.observed_species(), 2u);
  EXPECT_EQ(c.n(), 5);
  EXPECT_EQ(c.labels(), (std::vector<std::string>{"s1", "s3"}));
  EXPECT_NEAR(c.proportions()[0], 0.8, 1e-16);
}

TEST(SampleCounts, Rejections) {
  EXPECT_THROW(counts_of({3, -1}), Error);
  EXPECT_THROW(counts_of({0, 0}), Error);
  try {
    SampleCounts({"a", "a"}, {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DuplicateLabel);
  }
  EXPECT_THROW(SampleCounts({"a"}, {1, 2}), Error);
}

TEST(PlugIn, Examples) {
  EXPECT_NEAR(plugin_estimate(counts_of({2, 2}), IndexSpec::shannon()).value, std::numbers::ln2, 1e-15);
  EXPECT_NEAR(plugin_estimate(counts_of({3, 1}), IndexSpec::simpson()).value, 0.625, 1e-15);
  EXPECT_NEAR(plugin_estimate(counts_of({5, 2, 1}), IndexSpec::richness()).value, 3.0, 1e-15);
  const auto est = plugin_estimate(counts_of({5, 2, 1}), IndexSpec::richness());
  EXPECT_EQ(est.estimator, EstimatorKind::PlugIn);
  EXPECT_EQ(est.n, 8);
  EXPECT_EQ(est.observed_species, 3u);
}

TEST(SharpTerm, Examples) {
  EXPECT_EQ(sharp_term(1, 2, IndexSpec::shannon()), 0.5);
  EXPECT_NEAR(sharp_term(2, 4, IndexSpec::simpson()), -1.0 / 3.0, 1e-16);
  for (const auto& spec : catalog_specs()) {
    EXPECT_EQ(sharp_term(7, 7, spec), 0.0) << spec.name();
    EXPECT_EQ(sharp_term(1, 1, spec), 0.0) << spec.name();
  }
}

TEST(SharpTerm, RejectsInvalidArguments) {
  EXPECT_THROW(sharp_term(0, 4, IndexSpec::shannon()), Error);
  EXPECT_THROW(sharp_term(5, 4, IndexSpec::shannon()), Error);
  const std::vector<double> w{0.0, 1.0};
  EXPECT_THROW(sharp_term(1, 5, std::span<const double>(w)), Error);
}

TEST(Sharp, Examples) {
  EXPECT_NEAR(sharp_estimate(counts_of({1, 1}), IndexSpec::shannon()).value, 1.0, 1e-16);
  EXPECT_NEAR(sharp_estimate(counts_of({2, 2}), IndexSpec::simpson()).value, 1.0 / 3.0, 1e-16);
  EXPECT_NEAR(sharp_estimate(counts_of({30, 70}), IndexSpec::renyi_equivalent(2.0)).value, 19.0 / 33.0, 1e-15);
  EXPECT_NEAR(sharp_estimate(counts_of({30, 70}), IndexSpec::shannon()).value, 0.6158956480168527, 1e-14);
  for (const auto& spec : catalog_specs()) {
    EXPECT_EQ(sharp_estimate(counts_of({9}), spec).value, weight_table(spec, 0)[0]) << spec.name();
  }
  const auto est = sharp_estimate(counts_of({30, 70}), IndexSpec::shannon());
  EXPECT_EQ(est.estimator, EstimatorKind::Sharp);
  EXPECT_EQ(est.n, 100);
  EXPECT_EQ(est.observed_species, 2u);
}

// Recurrence with integer factors vs the product form rebuilt from scratch.
TEST(Sharp, MatchesDirectProductForm) {
  std::mt19937_64 rng(21);
  for (const auto& spec : catalog_specs()) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto x = random_counts(rng, 6, 30);
      const auto c = counts_of(x);
      const auto w = weight_table(spec, static_cast<std::size_t>(c.n()));
      const double ours = sharp_estimate(c, spec).value;
      const double brute = static_cast<double>(brute_sharp(x, w));
      EXPECT_NEAR(ours, brute, 1e-12 * std::max(1.0, std::abs(brute))) << spec.name();
    }
  }
}

TEST(Sharp, SimpsonIdentity) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = random_counts(rng, 12, 200);
    const auto c = counts_of(x);
    const Count n = c.n();
    if (n < 2) continue;
    long double num = 0.0L;
    for (Count v : x) num += static_cast<long double>(v) * static_cast<long double>(v - 1);
    const double expected = static_cast<double>(num / (static_cast<long double>(n) * static_cast<long double>(n - 1)));
    EXPECT_NEAR(sharp_estimate(c, IndexSpec::simpson()).value, expected, 1e-14 * std::max(expected, 1e-3));
  }
}

TEST(Sharp, InvariantToLabelsAndOrder) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = random_counts(rng, 8, 40);
    const auto a = counts_of(x);
    std::reverse(x.begin(), x.end());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < x.size(); ++i) labels.push_back("sp" + std::to_string(100 - i));
    const SampleCounts b(labels, x);
    for (const auto& spec : catalog_specs()) {
      EXPECT_NEAR(sharp_estimate(a, spec).value, sharp_estimate(b, spec).value, 1e-12) << spec.name();
      EXPECT_NEAR(plugin_estimate(a, spec).value, plugin_estimate(b, spec).value, 1e-12) << spec.name();
    }
  }
}

// Unobserved categories contribute nothing: the estimate does not depend on K.
TEST(Sharp, UnobservedSpeciesAreIrrelevant) {
  const auto a = counts_of({3, 5, 2});
  const auto b = counts_of({0, 3, 0, 5, 0, 0, 2});
  for (const auto& spec : catalog_specs()) {
    EXPECT_EQ(sharp_estimate(a, spec).value, sharp_estimate(b, spec).value) << spec.name();
    EXPECT_EQ(plugin_estimate(a, spec).value, plugin_estimate(b, spec).value) << spec.name();
  }
}

TEST(Sharp, CustomGeneratorReproducesShannon) {
  const auto custom = IndexSpec::custom([](std::size_t v) { return v == 0 ? 0.0 : 1.0 / static_cast<double>(v); }, 1.0);
  const auto c = counts_of({12, 30, 7, 1});
  EXPECT_NEAR(sharp_estimate(c, custom).value, sharp_estimate(c, IndexSpec::shannon()).value, 1e-15);
}

TEST(Sharp, CustomListIsZeroPaddedBeyondItsLength) {
  const auto custom = IndexSpec::custom(std::vector<double>{0.0, 1.0}, 1.0);
  const auto c = counts_of({12, 30, 7, 1});
  EXPECT_NEAR(sharp_estimate(c, custom).value, sharp_estimate(c, IndexSpec::gini_simpson()).value, 1e-15);
}

TEST(Sharp, ConvergesToTruthAsSampleGrows) {
  const Distribution dist{0.1, 0.2, 0.3, 0.4};
  const double truth = exact_index(dist, IndexSpec::shannon());
  RandomStream stream(99);
  double previous_error = 1.0;
  for (Count n : {100, 1000, 10000, 100000}) {
    double mean_err = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const auto c = sample_counts(dist, n, stream);
      mean_err += std::abs(sharp_estimate(c, IndexSpec::shannon()).value - truth) / 20.0;
    }
    EXPECT_LT(mean_err, 4.0 / std::sqrt(static_cast<double>(n)));
    if (n >= 1000) {
      EXPECT_LT(mean_err, previous_error);
    }
    previous_error = mean_err;
  }
}

TEST(Sharp, RawEvaluatorsAgreeWithWrappers) {
  const std::vector<Count> x{4, 9, 1, 6};
  const auto c = counts_of(x);
  for (const auto& spec : catalog_specs()) {
    const auto w = weight_table(spec, static_cast<std::size_t>(c.n()));
    EXPECT_EQ(sharp_value(x, w), sharp_estimate(c, spec).value) << spec.name();
    EXPECT_EQ(plugin_value(x, spec), plugin_estimate(c, spec).value) << spec.name();
  }
}

}  // namespace
