#include "divest/distribution.hpp"

#include <cmath>
#include <string>

#include "divest/compensated_sum.hpp"
#include "divest/error.hpp"

namespace divest {

namespace {

ArrayXd validated(std::span<const double> raw) {
  std::vector<double> kept;
  kept.reserve(raw.size());
  CompensatedSum<double> total;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double p = raw[i];
    if (!std::isfinite(p) || p < 0.0 || p > 1.0)
      throw Error(Errc::InvalidDistribution,
                  "probability at position " + std::to_string(i) + " is outside [0,1]");
    if (p > 0.0) {
      kept.push_back(p);
      total += p;
    }
  }
  if (kept.empty()) throw Error(Errc::InvalidDistribution, "distribution has no positive entry");
  if (std::abs(total.value() - 1.0) > Distribution::kSumTolerance)
    throw Error(Errc::InvalidDistribution,
                "probabilities sum to " + std::to_string(total.value()) + ", expected 1");
  return Eigen::Map<const ArrayXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
}

}  // namespace

Distribution::Distribution(std::span<const double> probs)
    : probs_(validated(probs)), min_prob_(probs_.minCoeff()) {}

Distribution::Distribution(const ArrayXd& probs)
    : Distribution(std::span<const double>(probs.data(), static_cast<std::size_t>(probs.size()))) {}

Distribution::Distribution(std::initializer_list<double> probs)
    : Distribution(std::span<const double>(probs.begin(), probs.size())) {}

}  // namespace divest
