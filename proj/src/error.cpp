#include "divest/error.hpp"

namespace divest {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "invalid_argument";
    case Errc::InvalidDistribution: return "invalid_distribution";
    case Errc::InsufficientOrder: return "insufficient_order";
    case Errc::TruncationFailure: return "truncation_failure";
    case Errc::DomainError: return "domain_error";
    case Errc::DegenerateVariance: return "degenerate_variance";
    case Errc::DimensionMismatch: return "dimension_mismatch";
    case Errc::EnumerationInfeasible: return "enumeration_infeasible";
    case Errc::WeightBoundViolation: return "weight_bound_violation";
    case Errc::ParseError: return "parse_error";
    case Errc::DuplicateLabel: return "duplicate_label";
    case Errc::EmptyInput: return "empty_input";
    case Errc::IoError: return "io_error";
  }
  return "unknown";
}

}  // namespace divest
