#include "divest/inference.hpp"

#include <algorithm>
#include <cmath>

#include "divest/exact_index.hpp"
#include "divest/normal_quantile.hpp"

namespace divest {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw Error(Errc::InvalidArgument, "confidence level must lie in (0,1)");
}

double marginal(const IndexSpec& spec, double t) { return spec.h(t) + t * spec.h_prime(t); }

}  // namespace

GradientVector gradient_g(const Eigen::ArrayXd& probs, const IndexSpec& spec) {
  if (probs.size() < 2) throw Error(Errc::DegenerateVariance, "gradient needs at least two species");
  if ((probs <= 0.0).any()) throw Error(Errc::DomainError, "gradient needs strictly positive probabilities");
  const Eigen::Index dim = probs.size() - 1;
  const double dropped = marginal(spec, probs[dim]);
  GradientVector g(dim);
  for (Eigen::Index j = 0; j < dim; ++j) g[j] = marginal(spec, probs[j]) - dropped;
  return g;
}

Eigen::ArrayXd inference_proportions(const SampleCounts& counts) {
  Eigen::ArrayXd p = counts.proportions();
  const auto c = counts.counts();
  const auto largest = static_cast<Eigen::Index>(std::max_element(c.begin(), c.end()) - c.begin());
  std::swap(p[largest], p[p.size() - 1]);
  return p;
}

GradientVector g_bar(const SampleCounts& counts, const IndexSpec& spec) {
  if (counts.observed_species() < 2)
    throw Error(Errc::DegenerateVariance, "only one species observed");
  return gradient_g(inference_proportions(counts), spec);
}

double sandwich_at(const Eigen::ArrayXd& probs, const IndexSpec& spec) {
  return sandwich_variance(gradient_g(probs, spec), covariance_matrix(probs));
}

EstimateReport confidence_interval(const PointEstimate& point, const SampleCounts& counts,
                                   const IndexSpec& spec, double level) {
  check_level(level);
  EstimateReport report{.point = point, .target = Target::Linear, .estimate = point.value, .level = level};
  if (spec.kind() == IndexKind::Richness) report.flags.set(Flag::RichnessWeights);
  if (counts.observed_species() >= 2) report.sandwich = sandwich_at(inference_proportions(counts), spec);
  report.sigma2 = report.sandwich;
  report.std_err = std::sqrt(report.sigma2 / static_cast<double>(counts.n()));
  if (report.sigma2 <= kVarianceFloor) {
    report.flags.set(Flag::DegenerateVariance);
    return report;
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  report.ci = Interval{point.value - z * report.std_err, point.value + z * report.std_err};
  return report;
}

namespace {

// Shared path for the h_r transforms; `derivative` maps h to d(transform)/dh.
template <typename Transform, typename Derivative>
EstimateReport transformed_inference(const PointEstimate& h, const SampleCounts& counts, double level,
                                     Target target, Transform transform, Derivative derivative) {
  const IndexSpec& spec = h.spec;
  if (spec.kind() != IndexKind::RenyiEquivalent)
    throw Error(Errc::InvalidArgument, "transform inference needs an estimate of the Renyi equivalent entropy");
  check_level(level);
  EstimateReport report{.point = h, .target = target, .level = level};
  if (counts.observed_species() >= 2) report.sandwich = sandwich_at(inference_proportions(counts), spec);
  if (!(h.value > 0.0)) {
    report.flags.set(Flag::TransformDomain);
    if (report.sandwich <= kVarianceFloor) report.flags.set(Flag::DegenerateVariance);
    return report;
  }
  report.estimate = transform(h.value);
  const double slope = derivative(h.value);
  report.sigma2 = report.sandwich * slope * slope;
  report.std_err = std::sqrt(report.sigma2 / static_cast<double>(counts.n()));
  if (report.sandwich <= kVarianceFloor) {
    report.flags.set(Flag::DegenerateVariance);
    return report;
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  report.ci = Interval{*report.estimate - z * report.std_err, *report.estimate + z * report.std_err};
  return report;
}

}  // namespace

EstimateReport renyi_inference(const PointEstimate& h_estimate, const SampleCounts& counts, double level) {
  const double r = h_estimate.spec.order();
  // psi_r'(h) = 1 / (h (1 - r))
  return transformed_inference(
      h_estimate, counts, level, Target::Renyi, [r](double h) { return renyi_entropy(h, r); },
      [r](double h) { return 1.0 / (h * (1.0 - r)); });
}

EstimateReport hill_inference(const PointEstimate& h_estimate, const SampleCounts& counts, double level) {
  const double r = h_estimate.spec.order();
  // dN/dh = (1 - r)^{-1} h^{r/(1-r)}
  return transformed_inference(
      h_estimate, counts, level, Target::Hill, [r](double h) { return hill_number(h, r); },
      [r](double h) { return std::pow(h, r / (1.0 - r)) / (1.0 - r); });
}

EstimateReport renyi_inference(const SampleCounts& counts, double r, double level) {
  return renyi_inference(sharp_estimate(counts, IndexSpec::renyi_equivalent(r)), counts, level);
}

EstimateReport hill_inference(const SampleCounts& counts, double r, double level) {
  return hill_inference(sharp_estimate(counts, IndexSpec::renyi_equivalent(r)), counts, level);
}

}  // namespace divest
