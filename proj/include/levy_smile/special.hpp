#pragma once

// Gamma-function helpers for the non-positive orders that tempered stable
// integrals produce.

namespace levy_smile::special {

// Gamma(-alpha) for alpha in (0,2), alpha != 1, via Gamma(2-alpha)/(alpha(alpha-1)).
// Throws InvalidInput within 1e-6 of an integer.
double gamma_of_negative(double alpha);

// Upper incomplete gamma Gamma(s, z) for z > 0 and s > -2, s not in {0, -1}.
double upper_incomplete_gamma(double s, double z);

// Lower incomplete gamma gamma(s, z) for s > 0, z >= 0.
double lower_incomplete_gamma(double s, double z);

}  // namespace levy_smile::special
