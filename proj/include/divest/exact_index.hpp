#pragma once

#include <cstddef>

#include "divest/distribution.hpp"
#include "divest/index_spec.hpp"

namespace divest {

inline constexpr double kDefaultBasisTolerance = 1e-12;

/// theta = sum_k p_k h(p_k) using the closed-form h; specs without one are
/// evaluated through the entropic basis at the default tolerance.
double exact_index(const Distribution& dist, const IndexSpec& spec);

/// theta = sum_{v=0}^V w_v zeta_{1,v}, with V the smallest order such that
/// the remaining tail, bounded by M K (1 - p_min)^{V+1}, is <= tol.
/// Finite weight sequences are summed exactly to their last nonzero term.
double exact_index_via_basis(const Distribution& dist, const IndexSpec& spec, double tol,
                             std::size_t max_order = kDefaultMaxOrder);

/// sum_{v=first}^{infinity} w_v zeta_{1,v}, truncated with the same tail bound.
double basis_series_tail(const Distribution& dist, const IndexSpec& spec, std::size_t first,
                         double tol, std::size_t max_order = kDefaultMaxOrder);

/// Renyi entropy (1-r)^{-1} ln h_r from the Renyi equivalent entropy h_r.
double renyi_entropy(double h_r, double r);
/// Hill number h_r^{1/(1-r)}.
double hill_number(double h_r, double r);
/// Tsallis entropy (h_r - 1)/(1 - r).
double tsallis_entropy(double h_r, double r);

}  // namespace divest
