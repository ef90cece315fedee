#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace divest {

using ArrayXd = Eigen::ArrayXd;

/// A probability vector over a finite alphabet. Only strictly positive
/// entries are stored; zero entries given to the constructor are dropped.
/// The input must already sum to one (within 1e-12); it is not renormalized.
class Distribution {
public:
  static constexpr double kSumTolerance = 1e-12;

  explicit Distribution(std::span<const double> probs);
  explicit Distribution(const ArrayXd& probs);
  Distribution(std::initializer_list<double> probs);

  const ArrayXd& probs() const noexcept { return probs_; }
  Eigen::Index support_size() const noexcept { return probs_.size(); }
  /// Smallest positive entry.
  double min_prob() const noexcept { return min_prob_; }

  double operator[](Eigen::Index k) const { return probs_[k]; }

private:
  ArrayXd probs_;
  double min_prob_;
};

}  // namespace divest
