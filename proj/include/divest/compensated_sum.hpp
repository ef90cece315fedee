#pragma once

#include <cmath>

#include <Eigen/Core>

namespace divest {

/// Neumaier's variant of Kahan summation. Order-dependent but
/// deterministic; callers fix the order (ascending species index).
template <typename Scalar>
class CompensatedSum {
public:
  CompensatedSum() = default;
  explicit CompensatedSum(Scalar init) : sum_(init) {}

  CompensatedSum& operator+=(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }

  Scalar value() const { return sum_ + comp_; }

private:
  Scalar sum_{0};
  Scalar comp_{0};
};

template <typename Derived>
typename Derived::Scalar compensated_sum(const Eigen::DenseBase<Derived>& xs) {
  CompensatedSum<typename Derived::Scalar> acc;
  for (Eigen::Index i = 0; i < xs.size(); ++i) acc += xs.derived().coeff(i);
  return acc.value();
}

}  // namespace divest
