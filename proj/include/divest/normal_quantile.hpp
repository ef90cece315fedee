#pragma once

namespace divest {

/// Inverse of the standard normal CDF on (0,1). Acklam's rational
/// approximation refined by one Halley step against std::erfc.
double normal_quantile(double prob);

}  // namespace divest
