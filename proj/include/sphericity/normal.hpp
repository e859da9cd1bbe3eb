#pragma once

namespace sphericity {

/// Standard normal CDF.
double normal_cdf(double z);

/// Upper tail 1 - Phi(z), without cancellation for large z.
double normal_sf(double z);

/// Inverse of normal_cdf on (0, 1); throws InvalidInput outside.
double normal_quantile(double prob);

/// z_alpha with P(Z > z_alpha) = alpha.
inline double upper_critical_value(double alpha) { return normal_quantile(1.0 - alpha); }

}  // namespace sphericity
