#pragma once

namespace fiberlab {

// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
// Power series for x < s + 1, Lentz continued fraction for the upper tail
// otherwise; relative accuracy target 1e-10 on P (or on 1-P where that is
// the small quantity). s > 0, x >= 0.
double regularized_lower_gamma(double s, double x);

// log(P(s, x)), stable where P underflows a double (deep lower tail).
double log_regularized_lower_gamma(double s, double x);

// Unnormalized gamma(s, x) = integral_0^x t^(s-1) e^(-t) dt.
// Requires Gamma(s) to be representable (s < ~171).
double lower_incomplete_gamma(double s, double x);

} // namespace fiberlab
