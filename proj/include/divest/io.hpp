#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "divest/distribution.hpp"
#include "divest/sample_counts.hpp"

namespace divest {

struct IngestResult {
  SampleCounts counts;
  std::vector<std::string> warnings;
};

/// Reads species counts. Two formats are accepted:
///  - CSV, one `label,count` record per line, optionally preceded by the
///    header `species,count`;
///  - whitespace-separated bare counts, labelled s1, s2, ... by position.
/// Zero counts are dropped with a warning; duplicate labels, negative or
/// non-integer counts are errors carrying the offending line number.
IngestResult ingest_counts(std::istream& in);
IngestResult ingest_counts(std::string_view text);

/// CSV with header `species,count`, readable by `ingest_counts`.
std::string emit_counts_csv(const SampleCounts& counts);

/// Comma-separated probabilities. The entered sum must be within 1e-9 of
/// one; entries are then divided by that sum.
Distribution parse_probabilities(std::string_view text);

/// "a:b" (inclusive range) or "a,b,c".
std::vector<Count> parse_n_values(std::string_view text);

/// Weights separated by whitespace and/or commas.
std::vector<double> parse_weight_list(std::string_view text);

}  // namespace divest
