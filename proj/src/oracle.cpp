#include "divest/oracle.hpp"

#include <cmath>
#include <string>

#include "divest/compensated_sum.hpp"
#include "divest/entropic_basis.hpp"
#include "divest/error.hpp"
#include "divest/exact_index.hpp"
#include "divest/simulation.hpp"

namespace divest {

namespace {

void check_n(Count n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "sample size must be >= 1");
}

}  // namespace

double eta_n(const Distribution& dist, Count n, const IndexSpec& spec) {
  check_n(n);
  const auto top = static_cast<std::size_t>(n - 1);
  const auto weights = weight_table(spec, top);
  const BasisVector basis = entropic_basis(dist, static_cast<Eigen::Index>(top));
  CompensatedSum<double> acc(weights[0]);
  for (std::size_t v = 1; v <= top; ++v) acc += weights[v] * basis[static_cast<Eigen::Index>(v)];
  return acc.value();
}

double tail_bias(const Distribution& dist, Count n, const IndexSpec& spec, double tol) {
  check_n(n);
  return basis_series_tail(dist, spec, static_cast<std::size_t>(n), tol);
}

double bias_bound(const Distribution& dist, Count n, const IndexSpec& spec) {
  return spec.weight_bound() * static_cast<double>(dist.support_size()) *
         std::pow(1.0 - dist.min_prob(), static_cast<double>(n));
}

double composition_count(Count n, std::size_t parts) {
  if (parts == 0) return 0.0;
  const auto top = static_cast<double>(n) + static_cast<double>(parts) - 1.0;
  return std::round(std::exp(std::lgamma(top + 1.0) - std::lgamma(static_cast<double>(n) + 1.0) -
                             std::lgamma(static_cast<double>(parts))));
}

void for_each_composition(Count n, std::size_t parts, const std::function<void(std::span<const Count>)>& visit) {
  if (parts == 0) return;
  std::vector<Count> x(parts, 0);
  x.back() = n;
  const std::size_t last = parts - 1;
  while (true) {
    visit(x);
    if (last == 0) return;
    if (x[last] > 0) {
      ++x[last - 1];
      --x[last];
      continue;
    }
    // all mass sits in x[0..last-1]; carry into the next position to the left
    std::size_t j = last - 1;
    while (j > 0 && x[j] == 0) --j;
    if (j == 0) return;
    ++x[j - 1];
    x[last] = x[j] - 1;
    x[j] = 0;
  }
}

double multinomial_log_prob(std::span<const Count> counts, const Eigen::ArrayXd& probs) {
  double n = 0.0;
  double log_p = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const auto x = static_cast<double>(counts[k]);
    n += x;
    log_p -= std::lgamma(x + 1.0);
    if (counts[k] > 0) log_p += x * std::log(probs[static_cast<Eigen::Index>(k)]);
  }
  return log_p + std::lgamma(n + 1.0);
}

double enumerate_expectation(const Distribution& dist, Count n, EstimatorKind estimator, const IndexSpec& spec,
                             double cap) {
  check_n(n);
  const auto K = static_cast<std::size_t>(dist.support_size());
  const double outcomes = composition_count(n, K);
  if (outcomes > cap)
    throw Error(Errc::EnumerationInfeasible, std::to_string(static_cast<long long>(outcomes)) +
                                                 " outcomes exceed the enumeration cap; use Monte Carlo");
  const auto weights = weight_table(spec, static_cast<std::size_t>(n - 1));
  std::vector<Count> positive;
  positive.reserve(K);
  CompensatedSum<double> acc;
  for_each_composition(n, K, [&](std::span<const Count> x) {
    const double prob = std::exp(multinomial_log_prob(x, dist.probs()));
    positive.clear();
    for (Count c : x)
      if (c > 0) positive.push_back(c);
    const double value = estimator == EstimatorKind::Sharp ? sharp_value(positive, weights)
                                                           : plugin_value(positive, spec);
    acc += prob * value;
  });
  return acc.value();
}

BiasTable bias_sweep(const Distribution& dist, const IndexSpec& spec, std::span<const Count> n_values,
                     const SweepOptions& options) {
  BiasTable table;
  const double theta = exact_index(dist, spec);
  for (Count n : n_values) {
    check_n(n);
    BiasRow row{.n = n, .mode = options.mode, .theta = theta};
    row.eta_n = eta_n(dist, n, spec);
    row.b2n = tail_bias(dist, n, spec);
    row.bound = bias_bound(dist, n, spec);
    if (options.mode == SweepMode::Exact) {
      row.e_sharp = enumerate_expectation(dist, n, EstimatorKind::Sharp, spec, options.cap);
      row.e_plugin = enumerate_expectation(dist, n, EstimatorKind::PlugIn, spec, options.cap);
    } else {
      if (options.replicates < 2) throw Error(Errc::InvalidArgument, "Monte Carlo sweep needs at least 2 replicates");
      const auto weights = weight_table(spec, static_cast<std::size_t>(n - 1));
      std::vector<double> sharp(options.replicates);
      std::vector<double> plugin(options.replicates);
      // each n gets its own family of substreams
      const std::uint64_t seed = options.seed ^ (static_cast<std::uint64_t>(n) * 0x9e3779b97f4a7c15ULL);
      parallel_for(options.replicates, options.workers, [&](std::size_t r) {
        RandomStream stream = RandomStream::substream(seed, r);
        const SampleCounts counts = sample_counts(dist, n, stream);
        sharp[r] = sharp_value(counts.counts(), weights);
        plugin[r] = plugin_value(counts.counts(), spec);
      });
      const auto summarize = [&](const std::vector<double>& xs, double& mean, std::optional<double>& se) {
        const auto m = static_cast<double>(xs.size());
        CompensatedSum<double> s;
        for (double x : xs) s += x;
        mean = s.value() / m;
        CompensatedSum<double> ss;
        for (double x : xs) ss += (x - mean) * (x - mean);
        se = std::sqrt(ss.value() / (m - 1.0) / m);
      };
      summarize(sharp, row.e_sharp, row.mc_std_err_sharp);
      summarize(plugin, row.e_plugin, row.mc_std_err_plugin);
    }
    table.rows.push_back(row);
  }
  return table;
}

}  // namespace divest
