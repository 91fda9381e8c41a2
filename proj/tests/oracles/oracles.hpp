#pragma once

// Reference computations for the tests. They share no code with the library:
// quadrature comes from Boost.Math and normal tails from 50-digit arithmetic.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_bin_float_50;

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
}

// Integral over (a, inf).
inline double integrate_to_inf(const std::function<double(double)>& f, double a) {
  boost::math::quadrature::exp_sinh<double> q;
  auto g = [&](double x) {
    const double v = f(a + x);
    return std::isfinite(v) ? v : 0.0;
  };
  return q.integrate(g, 0.0, std::numeric_limits<double>::infinity(), 1e-13);
}

// Integral over (a, b) with endpoint singularities allowed.
inline double integrate_singular(const std::function<double(double)>& f, double a, double b) {
  boost::math::quadrature::tanh_sinh<double> q;
  // nodes crowd the endpoints where 0 * inf can appear; drop those
  auto g = [&](double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : 0.0;
  };
  return q.integrate(g, a, b, 1e-13);
}

struct Model {
  double c_plus, c_minus, lambda_plus, lambda_minus, alpha_plus, alpha_minus, sigma, r;
};

inline double density_plus(const Model& m, double x) {
  return m.c_plus * std::exp(-m.lambda_plus * x) / std::pow(x, 1.0 + m.alpha_plus);
}
inline double density_minus(const Model& m, double x) {  // at -x, x > 0
  return m.c_minus * std::exp(-m.lambda_minus * x) / std::pow(x, 1.0 + m.alpha_minus);
}

// int (g(x)) nu(dx) over x>0 and x<0 for a kernel g that is O(x^2) at the origin.
inline double jump_integral(const Model& m, const std::function<double(double)>& g) {
  auto plus = [&](double x) { return g(x) * density_plus(m, x); };
  auto minus = [&](double x) { return g(-x) * density_minus(m, x); };
  double s = 0.0;
  if (m.c_plus > 0) s += integrate_singular(plus, 0.0, 1.0) + integrate_to_inf(plus, 1.0);
  if (m.c_minus > 0) s += integrate_singular(minus, 0.0, 1.0) + integrate_to_inf(minus, 1.0);
  return s;
}

// e^x - 1 - x without cancellation near 0.
inline double expm1_minus_x(double x) {
  if (std::abs(x) > 0.1) return std::expm1(x) - x;
  double term = x * x / 2.0, sum = 0.0;
  for (int n = 3; n < 20; ++n) {
    sum += term;
    term *= x / n;
  }
  return sum;
}

// sin(y) - y without cancellation near 0.
inline double sin_minus_id(double y) {
  if (std::abs(y) > 0.1) return std::sin(y) - y;
  double term = -y * y * y / 6.0, sum = 0.0;
  for (int n = 4; n < 30; n += 2) {
    sum += term;
    term *= -y * y / (n * (n + 1));
  }
  return sum;
}

// gamma under truncation x 1{|x|<=1}: r - sigma^2/2 - int (e^x - 1 - x 1{|x|<=1}) nu(dx)
inline double truncated_drift(const Model& m) {
  const double comp = jump_integral(m, [](double x) { return std::abs(x) <= 1.0 ? expm1_minus_x(x) : std::expm1(x); });
  return m.r - 0.5 * m.sigma * m.sigma - comp;
}

// psi(u) for real u straight from the Levy-Khintchine formula.
inline std::complex<double> exponent(const Model& m, double u) {
  const double gamma = truncated_drift(m);
  const double re = jump_integral(m, [u](double x) {
    const double h = std::sin(0.5 * u * x);
    return -2.0 * h * h;
  });
  const double im = jump_integral(m, [u](double x) { return std::abs(x) <= 1.0 ? sin_minus_id(u * x) : std::sin(u * x); });
  return {re - 0.5 * m.sigma * m.sigma * u * u, im + gamma * u};
}

// Variance rate sigma^2 + int x^2 nu(dx).
inline double variance_rate(const Model& m) {
  return m.sigma * m.sigma + jump_integral(m, [](double x) { return x * x; });
}

inline big normal_cdf_big(const big& x) {
  return boost::math::erfc(-x / boost::multiprecision::sqrt(big(2))) / 2;
}

inline double bs_call(double t, double k, double sigma) {
  const big s = big(sigma) * boost::multiprecision::sqrt(big(t));
  const big dp = -big(k) / s + s / 2;
  const big dm = dp - s;
  return static_cast<double>(normal_cdf_big(dp) - boost::multiprecision::exp(big(k)) * normal_cdf_big(dm));
}

inline double bs_put(double t, double k, double sigma) {
  const big s = big(sigma) * boost::multiprecision::sqrt(big(t));
  const big dp = -big(k) / s + s / 2;
  const big dm = dp - s;
  return static_cast<double>(boost::multiprecision::exp(big(k)) * normal_cdf_big(-dm) - normal_cdf_big(-dp));
}

// E[(s W_t + mean - k)^+] by quadrature of the Gaussian density.
inline double gaussian_linear_call(double t, double k, double sigma, double mean = 0.0) {
  const double sd = sigma * std::sqrt(t);
  auto f = [&](double x) {
    const double z = (x - mean) / sd;
    return (x - k) * std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * M_PI));
  };
  return integrate_to_inf(f, k);
}

// Plain bisection on a price function increasing in sigma.
inline double bisect_vol(const std::function<double(double)>& price, double target, double lo = 1e-9, double hi = 10.0) {
  for (int i = 0; i < 400 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    (price(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// int_0^inf (e^x - 1) c e^{-l x} x^{-1-a} dx
inline double finite_variation_gamma_plus(double c, double l, double a) {
  auto f = [&](double x) { return std::expm1(x) * c * std::exp(-l * x) / std::pow(x, 1.0 + a); };
  return integrate_singular(f, 0.0, 1.0) + integrate_to_inf(f, 1.0);
}

// x^a nu((x, inf)) for the positive side.
inline double tail_scaled(double c, double l, double a, double x) {
  auto f = [&](double y) { return c * std::exp(-l * y) / std::pow(y, 1.0 + a); };
  // y = x e^s turns the steep part into a smooth integrand on [0, log(1/x)]
  auto g = [&](double s) {
    const double y = x * std::exp(s);
    return f(y) * y;
  };
  return std::pow(x, a) * (integrate(g, 0.0, -std::log(x)) + integrate_to_inf(f, 1.0));
}

// Simple generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : s_(seed ? seed : 1) {}
  double uniform(double a, double b) { return a + (b - a) * unit(); }
  double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
  int integer(int a, int b) { return a + static_cast<int>(unit() * (b - a + 1)); }
  bool coin() { return unit() < 0.5; }

 private:
  double unit() {
    s_ ^= s_ << 13;
    s_ ^= s_ >> 7;
    s_ ^= s_ << 17;
    return static_cast<double>(s_ >> 11) * 0x1.0p-53;
  }
  std::uint64_t s_;
};

}  // namespace oracle
