#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "divest/distribution.hpp"
#include "divest/estimators.hpp"
#include "divest/index_spec.hpp"
#include "divest/sample_counts.hpp"

namespace divest {

/// eta_n = w_0 + sum_{v=1}^{n-1} w_v zeta_{1,v}: the part of theta the
/// bias-corrected estimator targets without bias.
double eta_n(const Distribution& dist, Count n, const IndexSpec& spec);

/// B_{2,n} = sum_{v>=n} w_v zeta_{1,v}, truncated at tolerance `tol`.
double tail_bias(const Distribution& dist, Count n, const IndexSpec& spec, double tol = 1e-14);

/// M K (1 - p_min)^n.
double bias_bound(const Distribution& dist, Count n, const IndexSpec& spec);

/// binom(n + K - 1, K - 1) as a double.
double composition_count(Count n, std::size_t parts);

/// Visits every (x_1..x_K) with sum n in lexicographic order.
void for_each_composition(Count n, std::size_t parts, const std::function<void(std::span<const Count>)>& visit);

/// log of n!/(prod x_k!) prod p_k^{x_k}.
double multinomial_log_prob(std::span<const Count> counts, const Eigen::ArrayXd& probs);

inline constexpr double kDefaultEnumerationCap = 1e6;

/// Exact expectation of an estimator over all multinomial outcomes of size n.
double enumerate_expectation(const Distribution& dist, Count n, EstimatorKind estimator, const IndexSpec& spec,
                             double cap = kDefaultEnumerationCap);

enum class SweepMode { Exact, MonteCarlo };

struct BiasRow {
  Count n = 0;
  SweepMode mode = SweepMode::Exact;
  double e_sharp = 0.0;
  double e_plugin = 0.0;
  double theta = 0.0;
  double eta_n = 0.0;
  double b2n = 0.0;
  double bound = 0.0;
  std::optional<double> mc_std_err_sharp;
  std::optional<double> mc_std_err_plugin;
};

struct BiasTable {
  std::vector<BiasRow> rows;
};

struct SweepOptions {
  SweepMode mode = SweepMode::Exact;
  std::size_t replicates = 1000;  // MonteCarlo only
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double cap = kDefaultEnumerationCap;
};

BiasTable bias_sweep(const Distribution& dist, const IndexSpec& spec, std::span<const Count> n_values,
                     const SweepOptions& options = {});

}  // namespace divest
