#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "divest/index_spec.hpp"
#include "divest/sample_counts.hpp"

namespace divest {

enum class EstimatorKind { PlugIn, Sharp };

struct PointEstimate {
  double value;
  EstimatorKind estimator;
  IndexSpec spec;
  Count n;
  std::size_t observed_species;
};

/// sum_k p^_k h(p^_k) over observed species.
PointEstimate plugin_estimate(const SampleCounts& counts, const IndexSpec& spec);

/// Per-species bias-corrected term
///   p^_k sum_{v=1}^{n-x_k} w_v prod_{j=1}^{v} (1 - (x_k - 1)/(n - j)).
double sharp_term(Count x, Count n, const IndexSpec& spec);

/// Same, with precomputed weights; `weights` must hold w_0..w_{n-x} at least.
double sharp_term(Count x, Count n, std::span<const double> weights);

/// w_0 + sum_k sharp_term(x_k, n). Exactly unbiased for
/// eta_n = w_0 + sum_{v=1}^{n-1} w_v zeta_{1,v}.
PointEstimate sharp_estimate(const SampleCounts& counts, const IndexSpec& spec);

/// Raw evaluators over positive counts, for callers that evaluate many
/// samples with a shared weight table (w_0..w_{n-1}).
double sharp_value(std::span<const Count> counts, std::span<const double> weights);
double plugin_value(std::span<const Count> counts, const IndexSpec& spec);

}  // namespace divest
