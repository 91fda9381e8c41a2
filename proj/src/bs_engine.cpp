#include "levy_smile/bs_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levy_smile/errors.hpp"

namespace levy_smile {

namespace {

constexpr int kMaxIterations = 200;

// Extended precision keeps the far-out-of-the-money difference of two tiny
// tail probabilities accurate to about 1e-15 relative.
long double ncdf_ld(long double x) { return 0.5L * std::erfc(-x / std::numbers::sqrt2_v<long double>); }

void check_inputs(double t, double sigma) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("maturity must be > 0");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidInput("volatility must be >= 0");
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2); }

double bs_call(double t, double k, double sigma) {
  check_inputs(t, sigma);
  if (sigma == 0.0) return std::max(1.0 - std::exp(k), 0.0);
  const long double s = static_cast<long double>(sigma) * std::sqrt(static_cast<long double>(t));
  const long double kk = k;
  const long double dp = -kk / s + 0.5L * s;
  const long double dm = dp - s;
  const long double v = ncdf_ld(dp) - std::exp(kk) * ncdf_ld(dm);
  return std::max(static_cast<double>(v), 0.0);
}

double bs_put(double t, double k, double sigma) {
  check_inputs(t, sigma);
  if (sigma == 0.0) return std::max(std::exp(k) - 1.0, 0.0);
  const long double s = static_cast<long double>(sigma) * std::sqrt(static_cast<long double>(t));
  const long double kk = k;
  const long double dp = -kk / s + 0.5L * s;
  const long double dm = dp - s;
  const long double v = std::exp(kk) * ncdf_ld(-dm) - ncdf_ld(-dp);
  return std::max(static_cast<double>(v), 0.0);
}

double bs_price(double t, double k, double sigma, bool is_call) {
  return is_call ? bs_call(t, k, sigma) : bs_put(t, k, sigma);
}

double bs_vega(double t, double k, double sigma) {
  check_inputs(t, sigma);
  if (sigma == 0.0) return 0.0;
  const double s = sigma * std::sqrt(t);
  return normal_pdf(-k / s + 0.5 * s) * std::sqrt(t);
}

PriceBounds arbitrage_bounds(double k, bool is_call) {
  const double ek = std::exp(k);
  return is_call ? PriceBounds{std::max(1.0 - ek, 0.0), 1.0} : PriceBounds{std::max(ek - 1.0, 0.0), ek};
}

double implied_vol(const OptionQuote& q) {
  check_inputs(q.t, 0.0);
  if (!std::isfinite(q.k)) throw InvalidInput("log-strike must be finite");
  const auto [lower, upper] = arbitrage_bounds(q.k, q.is_call);
  if (!(q.price > lower && q.price < upper)) throw PriceOutOfBounds("price outside the strict arbitrage bounds");

  const double target = q.price;
  auto price = [&](double s) { return bs_price(q.t, q.k, s, q.is_call); };

  double lo = 1e-8;
  double hi = 5.0;
  int iter = 0;
  while (price(hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (++iter > kMaxIterations || hi > 1e6) throw NoConvergence("could not bracket the implied volatility");
  }
  while (price(lo) > target) {
    hi = lo;
    lo *= 0.01;
    if (++iter > kMaxIterations || lo < 1e-300) throw NoConvergence("implied volatility below representable range");
  }

  while (hi - lo > 1e-4 && iter < kMaxIterations) {
    const double mid = 0.5 * (lo + hi);
    (price(mid) < target ? lo : hi) = mid;
    ++iter;
  }

  const double log_target = std::log(target);
  double s = 0.5 * (lo + hi);
  for (; iter < kMaxIterations; ++iter) {
    const double p = price(s);
    if (p == target) return s;
    (p < target ? lo : hi) = s;
    const double vega = bs_vega(q.t, q.k, s);
    double next = 0.5 * (lo + hi);
    if (p > 0.0 && vega > 0.0) {
      const double newton = s - (std::log(p) - log_target) * p / vega;
      if (newton > lo && newton < hi) next = newton;
    }
    const double step = std::abs(next - s);
    s = next;
    if (step <= 1e-12 * std::max(1.0, s) || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * s) {
      return s;
    }
  }
  throw NoConvergence("implied volatility iteration cap reached");
}

double bs_call_expansion(double t, double theta, double sigma) {
  if (!(t > 0.0 && t < std::exp(-1.0))) throw InvalidInput("expansion needs t in (0, e^-1)");
  if (theta == 0.0 || !std::isfinite(theta)) throw InvalidInput("theta must be non-zero");
  if (!(sigma > 0.0)) throw InvalidInput("expansion needs sigma > 0");
  const double log_inv_t = -std::log(t);
  const double a = sigma * sigma / (theta * theta);
  const double prefactor = sigma / std::sqrt(2.0 * std::numbers::pi) * std::pow(t, 0.5 + 0.5 / a);
  return prefactor * (a / log_inv_t - 3.0 * a * a / (log_inv_t * log_inv_t));
}

double bachelier_call(double t, double k, double sigma) {
  check_inputs(t, sigma);
  if (sigma == 0.0) return std::max(-k, 0.0);
  const double s = sigma * std::sqrt(t);
  const double z = k / s;
  return s * normal_pdf(z) - k * normal_cdf(-z);
}

}  // namespace levy_smile
