#include "divest/exact_index.hpp"

#include <cmath>

#include "divest/compensated_sum.hpp"
#include "divest/error.hpp"

namespace divest {

namespace {

void check_order(double r) {
  if (!std::isfinite(r) || r <= 0.0 || r == 1.0)
    throw Error(Errc::InvalidArgument, "order r must be positive and different from 1");
}

}  // namespace

double exact_index(const Distribution& dist, const IndexSpec& spec) {
  if (!spec.has_closed_form()) return exact_index_via_basis(dist, spec, kDefaultBasisTolerance);
  CompensatedSum<double> acc;
  for (Eigen::Index k = 0; k < dist.support_size(); ++k) acc += dist[k] * spec.h(dist[k]);
  return acc.value();
}

double basis_series_tail(const Distribution& dist, const IndexSpec& spec, std::size_t first,
                         double tol, std::size_t max_order) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  const ArrayXd& p = dist.probs();
  const ArrayXd q = 1.0 - p;
  const double q_max = 1.0 - dist.min_prob();
  const double scale = spec.weight_bound() * static_cast<double>(dist.support_size());
  const auto finite = spec.support_length();

  auto gen = spec.weights();
  for (std::size_t v = 0; v < first; ++v) gen.next();

  ArrayXd power = q.pow(static_cast<double>(first));
  double q_max_power = std::pow(q_max, static_cast<double>(first));  // (1 - p_min)^v
  CompensatedSum<double> acc;
  for (std::size_t v = first;; ++v) {
    if (finite && v >= *finite) return acc.value();
    const double w = gen.next();
    if (w != 0.0) acc += w * compensated_sum((p * power).eval());
    power *= q;
    q_max_power *= q_max;
    const double tail = scale * q_max_power;
    if (tail <= tol) return acc.value();
    if (v >= max_order)
      throw TruncationError("entropic basis series did not reach tolerance within " +
                                std::to_string(max_order) + " terms",
                            tail);
  }
}

double exact_index_via_basis(const Distribution& dist, const IndexSpec& spec, double tol,
                             std::size_t max_order) {
  return basis_series_tail(dist, spec, 0, tol, max_order);
}

double renyi_entropy(double h_r, double r) {
  check_order(r);
  if (!(h_r > 0.0)) throw Error(Errc::DomainError, "Renyi entropy requires h_r > 0");
  return std::log(h_r) / (1.0 - r);
}

double hill_number(double h_r, double r) {
  check_order(r);
  if (!(h_r > 0.0)) throw Error(Errc::DomainError, "Hill number requires h_r > 0");
  return std::pow(h_r, 1.0 / (1.0 - r));
}

double tsallis_entropy(double h_r, double r) {
  check_order(r);
  return (h_r - 1.0) / (1.0 - r);
}

}  // namespace divest
