#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace divest {

using Count = std::int64_t;

/// Observed species counts. Only species with a positive count are kept;
/// zero counts passed to the constructor are dropped, negative ones rejected.
class SampleCounts {
public:
  SampleCounts(std::vector<std::string> labels, std::vector<Count> counts);

  /// Positional labels s1, s2, ... (assigned before zeros are dropped).
  static SampleCounts from_counts(std::span<const Count> counts);

  std::span<const Count> counts() const noexcept { return counts_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  Count n() const noexcept { return n_; }
  /// S, the number of observed species.
  std::size_t observed_species() const noexcept { return counts_.size(); }
  /// Sample proportions x_k / n in storage order.
  Eigen::ArrayXd proportions() const;

  friend bool operator==(const SampleCounts&, const SampleCounts&) = default;

private:
  std::vector<std::string> labels_;
  std::vector<Count> counts_;
  Count n_ = 0;
};

}  // namespace divest
