#include "divest/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "divest/compensated_sum.hpp"
#include "divest/error.hpp"

namespace divest {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

Count parse_count(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  Count value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(Errc::ParseError, line, "count '" + std::string(token) + "' is not an integer");
  if (value < 0) throw ParseError(Errc::ParseError, line, "count " + std::string(token) + " is negative");
  return value;
}

double parse_real(std::string_view token, std::string_view what) {
  token = trim(token);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value))
    throw Error(Errc::ParseError, std::string(what) + " '" + std::string(token) + "' is not a number");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

IngestResult ingest_counts(std::string_view text) {
  std::vector<std::string> labels;
  std::vector<Count> counts;
  std::vector<std::string> warnings;

  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t number = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++number;
    const auto line = trim(raw);
    if (!line.empty()) lines.emplace_back(number, line);
  }
  if (lines.empty()) throw Error(Errc::EmptyInput, "input contains no counts");

  const bool csv = lines.front().second.find(',') != std::string_view::npos;
  if (csv) {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto [line_no, line] = lines[i];
      const auto fields = split(line, ',');
      if (i == 0 && fields.size() == 2 && trim(fields[0]) == "species" && trim(fields[1]) == "count") continue;
      if (fields.size() != 2) throw ParseError(Errc::ParseError, line_no, "expected 'species,count'");
      std::string label(trim(fields[0]));
      if (label.empty()) throw ParseError(Errc::ParseError, line_no, "empty species label");
      const Count c = parse_count(fields[1], line_no);
      if (!seen.insert(label).second)
        throw ParseError(Errc::DuplicateLabel, line_no, "duplicate species label '" + label + "'");
      if (c == 0) {
        warnings.push_back("line " + std::to_string(line_no) + ": zero count for '" + label + "' dropped");
        continue;
      }
      labels.push_back(std::move(label));
      counts.push_back(c);
    }
  } else {
    std::size_t position = 0;
    for (const auto& [line_no, line] : lines) {
      std::istringstream tokens{std::string(line)};
      std::string token;
      while (tokens >> token) {
        ++position;
        const Count c = parse_count(token, line_no);
        if (c == 0) {
          warnings.push_back("line " + std::to_string(line_no) + ": zero count for 's" + std::to_string(position) +
                             "' dropped");
          continue;
        }
        labels.push_back("s" + std::to_string(position));
        counts.push_back(c);
      }
    }
  }
  if (counts.empty()) throw Error(Errc::EmptyInput, "input contains no positive counts");
  return {SampleCounts(std::move(labels), std::move(counts)), std::move(warnings)};
}

IngestResult ingest_counts(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_counts(std::string_view(buffer.str()));
}

std::string emit_counts_csv(const SampleCounts& counts) {
  std::string out = "species,count\n";
  for (std::size_t k = 0; k < counts.observed_species(); ++k) {
    const std::string& label = counts.labels()[k];
    if (label.find_first_of(",\n\r") != std::string::npos || trim(label) != label)
      throw Error(Errc::InvalidArgument, "label '" + label + "' cannot be written as CSV");
    out += label;
    out += ',';
    out += std::to_string(counts.counts()[k]);
    out += '\n';
  }
  return out;
}

Distribution parse_probabilities(std::string_view text) {
  std::vector<double> probs;
  for (std::string_view token : split(text, ',')) probs.push_back(parse_real(token, "probability"));
  CompensatedSum<double> total;
  for (double p : probs) {
    if (p < 0.0 || p > 1.0) throw Error(Errc::InvalidDistribution, "probabilities must lie in [0,1]");
    total += p;
  }
  if (std::abs(total.value() - 1.0) > 1e-9)
    throw Error(Errc::InvalidDistribution, "probabilities sum to " + std::to_string(total.value()) + ", expected 1");
  for (double& p : probs) p /= total.value();
  return Distribution(std::span<const double>(probs));
}

std::vector<Count> parse_n_values(std::string_view text) {
  const auto parse_one = [](std::string_view token) {
    token = trim(token);
    Count value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || value < 1)
      throw Error(Errc::ParseError, "sample size '" + std::string(token) + "' is not a positive integer");
    return value;
  };
  std::vector<Count> out;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    const Count lo = parse_one(text.substr(0, colon));
    const Count hi = parse_one(text.substr(colon + 1));
    if (hi < lo) throw Error(Errc::ParseError, "empty sample-size range");
    for (Count n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  for (std::string_view token : split(text, ',')) out.push_back(parse_one(token));
  return out;
}

std::vector<double> parse_weight_list(std::string_view text) {
  std::string normalized(text);
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream tokens(normalized);
  std::vector<double> out;
  std::string token;
  while (tokens >> token) out.push_back(parse_real(token, "weight"));
  if (out.empty()) throw Error(Errc::EmptyInput, "weight list is empty");
  return out;
}

}  // namespace divest
