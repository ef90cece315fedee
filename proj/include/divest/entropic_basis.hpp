#pragma once

#include <string>

#include <Eigen/Core>

#include "divest/compensated_sum.hpp"
#include "divest/distribution.hpp"
#include "divest/error.hpp"

namespace divest {

/// zeta_{1,0}, ..., zeta_{1,V}; the truncation order is size() - 1.
template <typename Scalar>
using BasisArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
using BasisVector = BasisArray<double>;

/// zeta_{1,v} = sum_k p_k (1 - p_k)^v for v = 0..order. Each entry is a
/// compensated sum over species of p_k times a running power of (1 - p_k).
template <typename Derived>
BasisArray<typename Derived::Scalar> entropic_basis(const Eigen::ArrayBase<Derived>& probs,
                                                    Eigen::Index order) {
  using Scalar = typename Derived::Scalar;
  if (order < 0) throw Error(Errc::InvalidArgument, "basis order must be >= 0");
  const BasisArray<Scalar> p = probs;
  const BasisArray<Scalar> q = Scalar(1) - p;
  BasisArray<Scalar> power = BasisArray<Scalar>::Ones(p.size());
  BasisArray<Scalar> out(order + 1);
  for (Eigen::Index v = 0; v <= order; ++v) {
    out[v] = compensated_sum((p * power).eval());
    power *= q;
  }
  return out;
}

inline BasisVector entropic_basis(const Distribution& dist, Eigen::Index order) {
  return entropic_basis(dist.probs(), order);
}

/// zeta_{u,v} = sum_k p_k^u (1 - p_k)^v by direct summation.
template <typename Derived>
typename Derived::Scalar generalized_simpson(const Eigen::ArrayBase<Derived>& probs, int u, int v) {
  using Scalar = typename Derived::Scalar;
  if (u < 1 || v < 0) throw Error(Errc::InvalidArgument, "generalized Simpson needs u >= 1 and v >= 0");
  const BasisArray<Scalar> p = probs;
  const BasisArray<Scalar> terms = p.pow(Scalar(u)) * (Scalar(1) - p).pow(Scalar(v));
  return compensated_sum(terms);
}

inline double generalized_simpson(const Distribution& dist, int u, int v) {
  return generalized_simpson(dist.probs(), u, v);
}

/// zeta_{u,v} recovered from the entropic basis:
///   zeta_{u,v} = sum_{i=0}^{u-1} (-1)^i C(u-1, i) zeta_{1,v+i}.
template <typename Derived>
typename Derived::Scalar expand_zeta_uv(int u, int v, const Eigen::ArrayBase<Derived>& basis) {
  using Scalar = typename Derived::Scalar;
  if (u < 1 || v < 0) throw Error(Errc::InvalidArgument, "expansion needs u >= 1 and v >= 0");
  const Eigen::Index required = static_cast<Eigen::Index>(v) + u - 1;
  if (basis.size() - 1 < required)
    throw Error(Errc::InsufficientOrder, "basis of order " + std::to_string(basis.size() - 1) +
                                             " is too short; order " + std::to_string(required) +
                                             " is required");
  CompensatedSum<Scalar> acc;
  Scalar binom(1);
  for (int i = 0; i < u; ++i) {
    const Scalar term = binom * basis.derived().coeff(v + i);
    acc += (i % 2 == 0) ? term : -term;
    binom = binom * Scalar(u - 1 - i) / Scalar(i + 1);
  }
  return acc.value();
}

}  // namespace divest
