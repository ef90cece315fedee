#include "divest/sample_counts.hpp"

#include <unordered_set>

#include "divest/error.hpp"

namespace divest {

SampleCounts::SampleCounts(std::vector<std::string> labels, std::vector<Count> counts) {
  if (labels.size() != counts.size())
    throw Error(Errc::DimensionMismatch, "label and count sequences differ in length");
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (!seen.insert(labels[i]).second) throw Error(Errc::DuplicateLabel, "duplicate species label '" + labels[i] + "'");
    if (counts[i] < 0) throw Error(Errc::InvalidArgument, "negative count for species '" + labels[i] + "'");
    if (counts[i] == 0) continue;
    labels_.push_back(std::move(labels[i]));
    counts_.push_back(counts[i]);
    n_ += counts[i];
  }
  if (n_ < 1) throw Error(Errc::EmptyInput, "sample has no observations");
}

SampleCounts SampleCounts::from_counts(std::span<const Count> counts) {
  std::vector<std::string> labels;
  labels.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) labels.push_back("s" + std::to_string(i + 1));
  return SampleCounts(std::move(labels), std::vector<Count>(counts.begin(), counts.end()));
}

Eigen::ArrayXd SampleCounts::proportions() const {
  Eigen::ArrayXd p(static_cast<Eigen::Index>(counts_.size()));
  for (std::size_t k = 0; k < counts_.size(); ++k)
    p[static_cast<Eigen::Index>(k)] = static_cast<double>(counts_[k]) / static_cast<double>(n_);
  return p;
}

}  // namespace divest
