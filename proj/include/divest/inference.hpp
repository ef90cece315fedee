#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "divest/error.hpp"
#include "divest/estimators.hpp"
#include "divest/index_spec.hpp"
#include "divest/sample_counts.hpp"

namespace divest {

using CovarianceMatrix = Eigen::MatrixXd;
using GradientVector = Eigen::VectorXd;

/// Variance floor below which g' Sigma g is treated as exactly zero.
inline constexpr double kVarianceFloor = 1e-14;

/// Multinomial covariance over the first S-1 coordinates (the last one is
/// dropped): diagonal p_j (1 - p_j), off-diagonal -p_i p_j.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> covariance_matrix(
    const Eigen::ArrayBase<Derived>& probs) {
  using Scalar = typename Derived::Scalar;
  if (probs.size() < 2)
    throw Error(Errc::DegenerateVariance, "covariance needs at least two species");
  const Eigen::Index dim = probs.size() - 1;
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v = probs.head(dim).matrix();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sigma = -v * v.transpose();
  sigma.diagonal() = (v.array() * (Scalar(1) - v.array())).matrix();
  return sigma;
}

/// g' Sigma g.
template <typename DerivedG, typename DerivedS>
typename DerivedG::Scalar sandwich_variance(const Eigen::MatrixBase<DerivedG>& g,
                                            const Eigen::MatrixBase<DerivedS>& sigma) {
  if (sigma.rows() != g.size() || sigma.cols() != g.size())
    throw Error(Errc::DimensionMismatch, "gradient and covariance dimensions differ");
  using Scalar = typename DerivedG::Scalar;
  return std::max(Scalar(0), g.dot(sigma * g));
}

/// Gradient of G(v) = sum_{k<S} p_k h(p_k) + p_S h(p_S), p_S = 1 - sum_{k<S} p_k,
/// with respect to the first S-1 coordinates:
///   g_j = h(p_j) + p_j h'(p_j) - h(p_S) - p_S h'(p_S).
GradientVector gradient_g(const Eigen::ArrayXd& probs, const IndexSpec& spec);

/// Observed proportions ordered for inference: storage order with the
/// species of largest count moved to the last (dropped) position.
Eigen::ArrayXd inference_proportions(const SampleCounts& counts);

/// Gradient at the observed proportions, unobserved species left out.
GradientVector g_bar(const SampleCounts& counts, const IndexSpec& spec);

/// g' Sigma g evaluated at `probs` (at least two entries).
double sandwich_at(const Eigen::ArrayXd& probs, const IndexSpec& spec);

enum class Flag : std::uint8_t {
  DegenerateVariance = 1 << 0,
  RichnessWeights = 1 << 1,
  TransformDomain = 1 << 2,
};

class Flags {
public:
  void set(Flag f) noexcept { bits_ |= static_cast<std::uint8_t>(f); }
  bool has(Flag f) const noexcept { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  bool empty() const noexcept { return bits_ == 0; }

private:
  std::uint8_t bits_ = 0;
};

struct Interval {
  double low;
  double high;
  bool contains(double x) const noexcept { return low <= x && x <= high; }
};

/// Quantity an EstimateReport describes.
enum class Target { Linear, Renyi, Hill };

struct EstimateReport {
  PointEstimate point;  // linear-index estimate (h_r for Renyi/Hill targets)
  Target target = Target::Linear;
  std::optional<double> estimate;  // reported value; empty when the transform is undefined
  double sandwich = 0.0;           // g' Sigma g of the linear index at p^
  double sigma2 = 0.0;             // asymptotic variance of sqrt(n)(estimate - truth)
  double std_err = 0.0;            // sqrt(sigma2 / n)
  std::optional<Interval> ci;
  double level = 0.95;
  Flags flags;
};

/// Normal interval value +- z_{(1+level)/2} sqrt(g'Sigma g / n) with g and
/// Sigma estimated at the observed proportions.
EstimateReport confidence_interval(const PointEstimate& point, const SampleCounts& counts,
                                   const IndexSpec& spec, double level);

/// Renyi entropy from the bias-corrected estimate of h_r, with a delta
/// method interval studentized by h^_r (1-r).
EstimateReport renyi_inference(const SampleCounts& counts, double r, double level);

/// Hill number h_r^{1/(1-r)} with the corresponding delta method interval.
EstimateReport hill_inference(const SampleCounts& counts, double r, double level);

/// Transform variants taking an existing estimate of h_r (its spec must be
/// RenyiEquivalent), e.g. the plug-in estimate.
EstimateReport renyi_inference(const PointEstimate& h_estimate, const SampleCounts& counts, double level);
EstimateReport hill_inference(const PointEstimate& h_estimate, const SampleCounts& counts, double level);

}  // namespace divest
