#include "divest/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "divest/compensated_sum.hpp"
#include "divest/error.hpp"
#include "divest/estimators.hpp"
#include "divest/exact_index.hpp"

namespace divest {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

RandomStream RandomStream::substream(std::uint64_t seed, std::uint64_t index) {
  return RandomStream(splitmix64(seed) ^ splitmix64(~index));
}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

SampleCounts sample_counts(const Distribution& dist, Count n, RandomStream& stream) {
  if (n < 1) throw Error(Errc::InvalidArgument, "sample size must be >= 1");
  const auto K = static_cast<std::size_t>(dist.support_size());
  std::vector<double> cdf(K);
  CompensatedSum<double> acc;
  for (std::size_t k = 0; k < K; ++k) {
    acc += dist[static_cast<Eigen::Index>(k)];
    cdf[k] = acc.value();
  }
  cdf.back() = 1.0;
  std::vector<Count> counts(K, 0);
  for (Count i = 0; i < n; ++i) {
    const double u = stream.uniform();
    const auto k = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++counts[std::min(k, K - 1)];
  }
  return SampleCounts::from_counts(counts);
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
  workers = std::max(1u, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t r = 0; r < count; ++r) body(r);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t r = w; r < count; r += workers) body(r);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

struct Replicate {
  bool degenerate = false;
  bool transform_domain = false;
  bool hit = false;
  double standardized = 0.0;
};

double true_value(const Distribution& dist, const IndexSpec& spec, Target target) {
  if (target == Target::Linear) return exact_index(dist, spec);
  if (spec.kind() != IndexKind::RenyiEquivalent)
    throw Error(Errc::InvalidArgument, "Renyi and Hill targets need a RenyiEquivalent index");
  const double h = exact_index(dist, spec);
  return target == Target::Renyi ? renyi_entropy(h, spec.order()) : hill_number(h, spec.order());
}

}  // namespace

CoverageReport coverage_experiment(const Distribution& dist, const IndexSpec& spec, const CoverageOptions& options) {
  if (options.replicates < 100) throw Error(Errc::InvalidArgument, "coverage needs at least 100 replicates");
  if (options.n < 1) throw Error(Errc::InvalidArgument, "sample size must be >= 1");
  if (!(options.level > 0.0 && options.level < 1.0))
    throw Error(Errc::InvalidArgument, "confidence level must lie in (0,1)");

  CoverageReport report;
  report.target = options.target;
  report.n = options.n;
  report.replicates = options.replicates;
  report.level = options.level;
  report.seed = options.seed;
  report.truth = true_value(dist, spec, options.target);

  std::vector<Replicate> outcomes(options.replicates);
  parallel_for(options.replicates, options.workers, [&](std::size_t r) {
    RandomStream stream = RandomStream::substream(options.seed, r);
    const SampleCounts counts = sample_counts(dist, options.n, stream);
    const EstimateReport est = [&] {
      switch (options.target) {
        case Target::Renyi: return renyi_inference(counts, spec.order(), options.level);
        case Target::Hill: return hill_inference(counts, spec.order(), options.level);
        default: return confidence_interval(sharp_estimate(counts, spec), counts, spec, options.level);
      }
    }();
    Replicate& out = outcomes[r];
    out.transform_domain = est.flags.has(Flag::TransformDomain);
    if (!est.ci) {
      out.degenerate = true;
      return;
    }
    out.hit = est.ci->contains(report.truth);
    out.standardized = (*est.estimate - report.truth) / est.std_err;
  });

  report.histogram.assign(kHistogramInnerBins + 2, 0);
  CompensatedSum<double> sum;
  CompensatedSum<double> sum_sq;
  for (const Replicate& o : outcomes) {
    if (o.transform_domain) ++report.transform_domain_count;
    if (o.degenerate) {
      ++report.degenerate_count;
      continue;
    }
    o.hit ? ++report.hit_count : ++report.miss_count;
    sum += o.standardized;
    sum_sq += o.standardized * o.standardized;
    const double pos = std::floor((o.standardized - kHistogramLow) / kHistogramWidth);
    std::size_t bin = 0;
    if (pos >= static_cast<double>(kHistogramInnerBins))
      bin = kHistogramInnerBins + 1;
    else if (pos >= 0.0)
      bin = static_cast<std::size_t>(pos) + 1;
    ++report.histogram[bin];
  }
  const std::size_t effective = options.replicates - report.degenerate_count;
  if (effective > 0) {
    const auto m = static_cast<double>(effective);
    report.coverage_rate = static_cast<double>(report.hit_count) / m;
    report.standardized_mean = sum.value() / m;
    if (effective > 1) {
      const double var = (sum_sq.value() - m * report.standardized_mean * report.standardized_mean) / (m - 1.0);
      report.standardized_std = std::sqrt(std::max(0.0, var));
    }
  }
  return report;
}

}  // namespace divest
