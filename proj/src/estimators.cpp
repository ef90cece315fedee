#include "divest/estimators.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "divest/compensated_sum.hpp"
#include "divest/error.hpp"

namespace divest {

namespace {

Count total(std::span<const Count> counts) { return std::accumulate(counts.begin(), counts.end(), Count{0}); }

// The recurrence and the sum over species run in extended precision so the
// estimate is rounded once, at the end; w_0 + sum of terms can cancel heavily.
using Wide = long double;

Wide wide_sharp_term(Count x, Count n, std::span<const double> weights) {
  if (x < 1 || x > n) throw Error(Errc::InvalidArgument, "sharp term needs 1 <= x <= n");
  const Count last = n - x;
  if (static_cast<std::size_t>(last) >= weights.size() && last > 0)
    throw Error(Errc::InsufficientOrder, "weight table shorter than n - x + 1");
  CompensatedSum<Wide> acc;
  Wide product = 1.0L;
  for (Count v = 1; v <= last; ++v) {
    // 1 - (x-1)/(n-v), formed from exact integers: (n - v - x + 1)/(n - v)
    const Wide factor = static_cast<Wide>(n - v - x + 1) / static_cast<Wide>(n - v);
    const Wide next = product * factor;
    if (!(next >= 0.0L && next <= product))
      throw std::logic_error("falling-factorial product left [0, previous]");
    product = next;
    acc += static_cast<Wide>(weights[static_cast<std::size_t>(v)]) * product;
  }
  return static_cast<Wide>(x) / static_cast<Wide>(n) * acc.value();
}

}  // namespace

double sharp_term(Count x, Count n, std::span<const double> weights) {
  return static_cast<double>(wide_sharp_term(x, n, weights));
}

double sharp_term(Count x, Count n, const IndexSpec& spec) {
  if (x < 1 || x > n) throw Error(Errc::InvalidArgument, "sharp term needs 1 <= x <= n");
  const auto weights = weight_table(spec, static_cast<std::size_t>(n - x));
  return sharp_term(x, n, weights);
}

double sharp_value(std::span<const Count> counts, std::span<const double> weights) {
  const Count n = total(counts);
  CompensatedSum<Wide> acc(weights[0]);
  for (Count x : counts)
    if (x > 0) acc += wide_sharp_term(x, n, weights);
  return static_cast<double>(acc.value());
}

double plugin_value(std::span<const Count> counts, const IndexSpec& spec) {
  const auto n = static_cast<double>(total(counts));
  CompensatedSum<double> acc;
  for (Count x : counts) {
    if (x <= 0) continue;
    const double p = static_cast<double>(x) / n;
    acc += p * spec.h(p);
  }
  return acc.value();
}

PointEstimate plugin_estimate(const SampleCounts& counts, const IndexSpec& spec) {
  return {plugin_value(counts.counts(), spec), EstimatorKind::PlugIn, spec, counts.n(),
          counts.observed_species()};
}

PointEstimate sharp_estimate(const SampleCounts& counts, const IndexSpec& spec) {
  const auto c = counts.counts();
  const Count min_x = *std::min_element(c.begin(), c.end());
  const auto weights = weight_table(spec, static_cast<std::size_t>(counts.n() - min_x));
  return {sharp_value(c, weights), EstimatorKind::Sharp, spec, counts.n(), counts.observed_species()};
}

}  // namespace divest
