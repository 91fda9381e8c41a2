#include "levy_smile/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>

#include "levy_smile/errors.hpp"

namespace levy_smile::special {

double gamma_of_negative(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0)) {
    throw InvalidInput("Gamma(-alpha) needs alpha in (0,2)");
  }
  if (std::abs(alpha - 1.0) < 1e-6 || alpha < 1e-6 || alpha > 2.0 - 1e-6) {
    throw InvalidInput("alpha too close to an integer for Gamma(-alpha)");
  }
  return std::tgamma(2.0 - alpha) / (alpha * (alpha - 1.0));
}

double upper_incomplete_gamma(double s, double z) {
  if (!(z > 0.0)) throw InvalidInput("upper incomplete gamma needs z > 0");
  if (s > 0.0) return boost::math::tgamma(s, z);
  if (s <= -2.0 || std::abs(s) < 1e-12 || std::abs(s + 1.0) < 1e-12) {
    throw InvalidInput("upper incomplete gamma order out of range");
  }
  // Gamma(s, z) = (Gamma(s+1, z) - z^s e^{-z}) / s
  return (upper_incomplete_gamma(s + 1.0, z) - std::pow(z, s) * std::exp(-z)) / s;
}

double lower_incomplete_gamma(double s, double z) {
  if (!(s > 0.0) || z < 0.0) throw InvalidInput("lower incomplete gamma needs s > 0, z >= 0");
  if (z == 0.0) return 0.0;
  return boost::math::tgamma_lower(s, z);
}

}  // namespace levy_smile::special
