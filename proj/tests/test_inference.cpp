#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace divest;
using divest::testing::catalog_specs;
using divest::testing::random_distribution;

namespace {

SampleCounts counts_of(std::vector<Count> x) { return SampleCounts::from_counts(x); }

Eigen::ArrayXd array_of(std::initializer_list<double> p) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(p.size()));
  Eigen::Index i = 0;
  for (double x : p) a[i++] = x;
  return a;
}

// G on the free coordinates, the last mass implied by normalization.
double big_g(const Eigen::VectorXd& v, const IndexSpec& spec) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < v.size(); ++j) total += v[j] * spec.h(v[j]);
  const double last = 1.0 - v.sum();
  return total + last * spec.h(last);
}

constexpr double kLnRatio = 0.8472978603872036;  // ln(7/3)
constexpr double kShannonSandwich = 0.15076186948551397;

TEST(Covariance, Examples) {
  const auto a = covariance_matrix(array_of({0.3, 0.7}));
  ASSERT_EQ(a.rows(), 1);
  EXPECT_NEAR(a(0, 0), 0.21, 1e-16);
  EXPECT_EQ(covariance_matrix(array_of({0.5, 0.5}))(0, 0), 0.25);
  const auto b = covariance_matrix(array_of({0.2, 0.3, 0.5}));
  Eigen::Matrix2d expected;
  expected << 0.16, -0.06, -0.06, 0.21;
  EXPECT_TRUE(b.isApprox(expected, 1e-15));
  try {
    covariance_matrix(array_of({1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateVariance);
  }
}

TEST(Covariance, PositiveDefiniteAtInteriorPoints) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dist = random_distribution(rng, 2 + trial % 7);
    const auto sigma = covariance_matrix(dist.probs());
    EXPECT_TRUE(sigma.isApprox(sigma.transpose()));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
    EXPECT_GT(eig.eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Gradient, Examples) {
  const auto a = gradient_g(array_of({0.3, 0.7}), IndexSpec::shannon());
  ASSERT_EQ(a.size(), 1);
  EXPECT_NEAR(a[0], kLnRatio, 1e-15);
  const auto b = gradient_g(array_of({0.3, 0.7}), IndexSpec::renyi_equivalent(2.0));
  EXPECT_NEAR(b[0], -0.8, 1e-15);
  for (const auto& spec : catalog_specs()) {
    for (int K : {2, 3, 5}) {
      const Eigen::ArrayXd uniform = Eigen::ArrayXd::Constant(K, 1.0 / K);
      EXPECT_LT(gradient_g(uniform, spec).cwiseAbs().maxCoeff(), 1e-14) << spec.name();
    }
  }
  EXPECT_THROW(gradient_g(array_of({1.0}), IndexSpec::shannon()), Error);
}

TEST(Gradient, MatchesCentralDifferences) {
  std::mt19937_64 rng(32);
  constexpr double step = 1e-6;
  for (const auto& spec : catalog_specs()) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto dist = random_distribution(rng, 2 + trial % 5);
      const Eigen::ArrayXd& p = dist.probs();
      const auto g = gradient_g(p, spec);
      Eigen::VectorXd v = p.head(p.size() - 1).matrix();
      for (Eigen::Index j = 0; j < v.size(); ++j) {
        Eigen::VectorXd up = v, down = v;
        up[j] += step;
        down[j] -= step;
        const double fd = (big_g(up, spec) - big_g(down, spec)) / (2 * step);
        EXPECT_NEAR(g[j], fd, 1e-6) << spec.name() << " j=" << j;
      }
    }
  }
}

TEST(GBar, Examples) {
  const auto a = g_bar(counts_of({3, 7}), IndexSpec::shannon());
  EXPECT_NEAR(a[0], kLnRatio, 1e-15);
  EXPECT_EQ(g_bar(counts_of({5, 5}), IndexSpec::shannon())[0], 0.0);
  try {
    g_bar(counts_of({10}), IndexSpec::shannon());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DegenerateVariance);
  }
}

TEST(GBar, LargestSpeciesIsDropped) {
  const auto p = inference_proportions(counts_of({7, 3}));
  EXPECT_NEAR(p[0], 0.3, 1e-16);
  EXPECT_NEAR(p[1], 0.7, 1e-16);
  EXPECT_NEAR(g_bar(counts_of({7, 3}), IndexSpec::shannon())[0], kLnRatio, 1e-15);
}

TEST(Sandwich, Examples) {
  const auto g = gradient_g(array_of({0.3, 0.7}), IndexSpec::shannon());
  EXPECT_NEAR(sandwich_variance(g, covariance_matrix(array_of({0.3, 0.7}))), kShannonSandwich, 1e-15);
  EXPECT_NEAR(sandwich_at(array_of({0.3, 0.7}), IndexSpec::renyi_equivalent(2.0)), 0.1344, 1e-15);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  EXPECT_EQ(sandwich_variance(zero, covariance_matrix(array_of({0.2, 0.3, 0.5}))), 0.0);
  const Eigen::VectorXd wrong = Eigen::VectorXd::Ones(3);
  try {
    sandwich_variance(wrong, covariance_matrix(array_of({0.2, 0.3, 0.5})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
}

// The quadratic form is a property of p, not of which coordinate is dropped.
TEST(Sandwich, IndependentOfDroppedCoordinate) {
  std::mt19937_64 rng(33);
  for (const auto& spec : catalog_specs()) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto dist = random_distribution(rng, 3 + trial % 4);
      Eigen::ArrayXd p = dist.probs();
      const double reference = sandwich_at(p, spec);
      for (Eigen::Index last = 0; last + 1 < p.size(); ++last) {
        Eigen::ArrayXd q = p;
        std::swap(q[last], q[q.size() - 1]);
        EXPECT_NEAR(sandwich_at(q, spec), reference, 1e-12 * std::max(1.0, reference)) << spec.name();
      }
      // equals the full-dimensional variance of phi(X) for a single draw
      Eigen::ArrayXd phi(p.size());
      for (Eigen::Index k = 0; k < p.size(); ++k) phi[k] = spec.h(p[k]) + p[k] * spec.h_prime(p[k]);
      const double mean = (p * phi).sum();
      const double var = (p * (phi - mean).square()).sum();
      EXPECT_NEAR(reference, var, 1e-12 * std::max(1.0, var)) << spec.name();
    }
  }
}

TEST(Sandwich, VanishesOnlyAtUniform) {
  for (const auto& spec : {IndexSpec::shannon(), IndexSpec::renyi_equivalent(0.5), IndexSpec::renyi_equivalent(2.0)}) {
    for (int K : {2, 3, 5}) {
      Eigen::ArrayXd p = Eigen::ArrayXd::Constant(K, 1.0 / K);
      EXPECT_LT(sandwich_at(p, spec), kVarianceFloor) << spec.name();
      p[0] += 0.05;
      p[1] -= 0.05;
      EXPECT_GT(sandwich_at(p, spec), 1e-6) << spec.name();
    }
  }
}

TEST(ConfidenceInterval, ShannonExample) {
  const auto counts = counts_of({30, 70});
  const auto point = sharp_estimate(counts, IndexSpec::shannon());
  const auto report = confidence_interval(point, counts, IndexSpec::shannon(), 0.95);
  EXPECT_NEAR(report.sandwich, kShannonSandwich, 1e-15);
  EXPECT_NEAR(report.std_err, 0.038828065813984859, 1e-15);
  ASSERT_TRUE(report.ci);
  const double z = 1.959963984540054;
  EXPECT_NEAR(report.ci->low, point.value - z * report.std_err, 1e-14);
  EXPECT_NEAR(report.ci->high, point.value + z * report.std_err, 1e-14);
  EXPECT_TRUE(report.flags.empty());
  EXPECT_EQ(report.target, Target::Linear);
  ASSERT_TRUE(report.estimate);
  EXPECT_EQ(*report.estimate, point.value);
}

TEST(ConfidenceInterval, DegenerateCases) {
  for (const auto& x : {std::vector<Count>{50, 50}, std::vector<Count>{100}}) {
    const auto counts = counts_of(x);
    const auto report = confidence_interval(sharp_estimate(counts, IndexSpec::shannon()), counts, IndexSpec::shannon(), 0.95);
    EXPECT_TRUE(report.flags.has(Flag::DegenerateVariance));
    EXPECT_FALSE(report.ci);
  }
}

TEST(ConfidenceInterval, RichnessIsFlagged) {
  const auto counts = counts_of({4, 9, 2});
  const auto report = confidence_interval(sharp_estimate(counts, IndexSpec::richness()), counts, IndexSpec::richness(), 0.95);
  EXPECT_TRUE(report.flags.has(Flag::RichnessWeights));
  EXPECT_TRUE(report.flags.has(Flag::DegenerateVariance));
}

TEST(ConfidenceInterval, LevelIsValidated) {
  const auto counts = counts_of({30, 70});
  const auto point = sharp_estimate(counts, IndexSpec::shannon());
  EXPECT_THROW(confidence_interval(point, counts, IndexSpec::shannon(), 1.0), Error);
  EXPECT_THROW(confidence_interval(point, counts, IndexSpec::shannon(), 0.0), Error);
}

TEST(ConfidenceInterval, WidthGrowsWithLevel) {
  const auto counts = counts_of({30, 70, 12});
  const auto point = sharp_estimate(counts, IndexSpec::shannon());
  double previous = 0.0;
  for (double level : {0.5, 0.8, 0.9, 0.95, 0.99}) {
    const auto ci = *confidence_interval(point, counts, IndexSpec::shannon(), level).ci;
    EXPECT_GT(ci.high - ci.low, previous);
    EXPECT_TRUE(ci.contains(point.value));
    previous = ci.high - ci.low;
  }
}

TEST(Renyi, Examples) {
  const auto counts = counts_of({30, 70});
  const auto report = renyi_inference(counts, 2.0, 0.95);
  EXPECT_NEAR(report.point.value, 19.0 / 33.0, 1e-15);
  ASSERT_TRUE(report.estimate);
  EXPECT_NEAR(*report.estimate, 0.5520685823000398, 1e-15);
  EXPECT_EQ(report.target, Target::Renyi);
  ASSERT_TRUE(report.ci);

  const auto single = renyi_inference(counts_of({40}), 2.0, 0.95);
  EXPECT_EQ(single.point.value, 1.0);
  EXPECT_EQ(*single.estimate, 0.0);
  EXPECT_TRUE(single.flags.has(Flag::DegenerateVariance));

  const auto uniform = renyi_inference(counts_of({25, 25, 25, 25}), 0.5, 0.95);
  EXPECT_TRUE(uniform.estimate);
  EXPECT_TRUE(uniform.flags.has(Flag::DegenerateVariance));
  EXPECT_FALSE(uniform.ci);

  EXPECT_THROW(renyi_inference(counts, 1.0, 0.95), Error);
  EXPECT_THROW(renyi_inference(counts, -0.5, 0.95), Error);
}

TEST(Renyi, DeltaChainIdentity) {
  const auto counts = counts_of({30, 70, 11});
  for (double r : {0.5, 2.0, 3.0}) {
    const auto h = renyi_inference(counts, r, 0.95);
    const auto n = hill_inference(counts, r, 0.95);
    const double hr = h.point.value;
    EXPECT_NEAR(h.sigma2, h.sandwich / (hr * hr * (1 - r) * (1 - r)), 1e-13 * h.sigma2);
    const double slope = std::pow(hr, r / (1 - r)) / (1 - r);
    EXPECT_NEAR(n.sigma2, n.sandwich * slope * slope, 1e-13 * n.sigma2);
    // Hill = exp(Renyi), so its delta-method std err is Hill times Renyi's
    EXPECT_NEAR(n.std_err, *n.estimate * h.std_err, 1e-12 * n.std_err);
    EXPECT_NEAR(std::log(*n.estimate), *h.estimate, 1e-14);
  }
}

TEST(Renyi, PlugInVariantUsesGivenEstimate) {
  const auto counts = counts_of({30, 70});
  const auto spec = IndexSpec::renyi_equivalent(2.0);
  const auto report = renyi_inference(plugin_estimate(counts, spec), counts, 0.95);
  EXPECT_NEAR(*report.estimate, 0.544727175441672031, 1e-15);
  EXPECT_THROW(renyi_inference(plugin_estimate(counts, IndexSpec::shannon()), counts, 0.95), Error);
}

TEST(Renyi, TransformDomainIsFlaggedNotClamped) {
  // every species a singleton: h^_2 = 0
  const auto counts = counts_of({1, 1, 1});
  for (const auto& report : {renyi_inference(counts, 2.0, 0.95), hill_inference(counts, 2.0, 0.95)}) {
    EXPECT_NEAR(report.point.value, 0.0, 1e-15);
    EXPECT_TRUE(report.flags.has(Flag::TransformDomain));
    EXPECT_FALSE(report.estimate);
    EXPECT_FALSE(report.ci);
  }
}

TEST(Hill, Examples) {
  const auto report = hill_inference(counts_of({30, 70}), 2.0, 0.95);
  EXPECT_NEAR(*report.estimate, 33.0 / 19.0, 1e-14);
  EXPECT_EQ(report.target, Target::Hill);
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_EQ(normal_quantile(0.5), 0.0);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-15);
  EXPECT_NEAR(normal_quantile(0.995), 2.5758293035489008, 1e-15);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-13);
  EXPECT_NEAR(normal_quantile(0.025), -1.959963984540054, 1e-15);
  EXPECT_THROW(normal_quantile(0.0), Error);
  EXPECT_THROW(normal_quantile(1.0), Error);
}

TEST(NormalQuantile, InvertsCdf) {
  for (double p = 0.001; p < 1.0; p += 0.001) {
    const double z = normal_quantile(p);
    EXPECT_NEAR(0.5 * std::erfc(-z / std::sqrt(2.0)), p, 1e-15);
  }
}

}  // namespace
