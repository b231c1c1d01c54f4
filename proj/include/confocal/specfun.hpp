#pragma once

namespace confocal::specfun {

// log Gamma(u) for u > 0.  Throws std::domain_error otherwise.
double log_gamma(double u);

// Generalized Pochhammer power (u)_gamma = Gamma(u + gamma) / Gamma(u)
// for u >= 0, gamma > 0, with the limit value (0)_gamma = 0.
// Evaluated as exp(log_gamma(u + gamma) - log_gamma(u)); the raw Gamma
// quotient would overflow long before u reaches interesting sizes.
double pochhammer(double u, double gamma);

// Discrete square root (u)_{1/2} = Gamma(u + 1/2) / Gamma(u), u >= 0.
// dsqrt(0) = 0 by continuity.  Behaves like sqrt(u) for large u and
// satisfies the exact product identity dsqrt(u) * dsqrt(u + 1/2) = u.
double dsqrt(double u);

}  // namespace confocal::specfun
