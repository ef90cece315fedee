#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "divest/distribution.hpp"
#include "divest/index_spec.hpp"
#include "divest/inference.hpp"
#include "divest/sample_counts.hpp"

namespace divest {

/// Seeded random stream. Replicate r of an experiment draws from
/// `RandomStream::substream(seed, r)`, so results do not depend on how
/// replicates are scheduled across workers.
class RandomStream {
public:
  explicit RandomStream(std::uint64_t seed);
  static RandomStream substream(std::uint64_t seed, std::uint64_t index);

  /// Uniform on [0,1) with 53 random bits.
  double uniform();

private:
  std::mt19937_64 engine_;
};

/// n independent categorical draws from `dist`, aggregated to counts.
/// Species are labelled s1..sK by their position in `dist`.
SampleCounts sample_counts(const Distribution& dist, Count n, RandomStream& stream);

struct CoverageReport {
  Target target = Target::Linear;
  Count n = 0;
  std::size_t replicates = 0;
  double level = 0.95;
  std::uint64_t seed = 0;
  double truth = 0.0;
  std::size_t hit_count = 0;
  std::size_t miss_count = 0;
  /// Replicates without an interval (vanishing variance or undefined transform).
  std::size_t degenerate_count = 0;
  /// Subset of degenerate_count where h^_r <= 0 left the transform's domain.
  std::size_t transform_domain_count = 0;
  double coverage_rate = 0.0;
  /// Mean and standard deviation of (estimate - truth) / std_err over
  /// non-degenerate replicates.
  double standardized_mean = 0.0;
  double standardized_std = 0.0;
  /// Counts of the standardized statistic in [-4,4) by 0.5, with an
  /// underflow bin first and an overflow bin last (18 bins).
  std::vector<std::size_t> histogram;
};

inline constexpr double kHistogramLow = -4.0;
inline constexpr double kHistogramWidth = 0.5;
inline constexpr std::size_t kHistogramInnerBins = 16;

struct CoverageOptions {
  Count n = 2000;
  std::size_t replicates = 2000;
  double level = 0.95;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  Target target = Target::Linear;
};

/// Repeated sampling from `dist`: bias-corrected estimate, normal interval,
/// and coverage of the true value. For Renyi and Hill targets `spec` must be
/// a RenyiEquivalent index whose order is used.
CoverageReport coverage_experiment(const Distribution& dist, const IndexSpec& spec, const CoverageOptions& options);

/// Runs `body(r)` for r in [0, count) on `workers` threads.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

}  // namespace divest
