#include "levy_smile/fourier_pricer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "levy_smile/errors.hpp"

namespace levy_smile {

namespace {

constexpr double kEdge = 1e-6;
constexpr double kMaxTruncation = 1099511627776.0;  // 2^40

double clip(double x, double lo, double hi) { return std::min(std::max(x, lo + kEdge), hi - kEdge); }

void check_damping(const LevyModel& model, double R, double lo, double hi, const char* what) {
  // phi_t(-u - iR) needs -R inside the analyticity strip of psi.
  const auto [strip_lo, strip_hi] = model.strip();
  const double lo_eff = std::max(lo, -strip_hi);
  const double hi_eff = std::min(hi, -strip_lo);
  if (!(R > lo_eff && R < hi_eff)) {
    throw DampingOutOfStrip(std::string(what) + ": R = " + std::to_string(R) + " outside (" +
                            std::to_string(lo_eff) + ", " + std::to_string(hi_eff) + ")");
  }
}

// Integrates f over [-U, U] with U from the doubling rule: the tail of an
// integrand bounded by |f(U)| (U/u)^2 beyond U is at most |f(U)| U, and at most
// about 2 |f(U)| / omega once it oscillates like exp(i omega u).
FourierResult invert(const ComplexIntegrand& f, double omega, const QuadratureConfig& cfg) {
  const double tail_target = 0.1 * cfg.abs_tol;
  auto tail_bound = [&](double u) {
    const double reach = omega > 0.0 ? std::min(u, 4.0 / omega) : u;
    return (std::abs(f(u)) + std::abs(f(-u))) * reach;
  };
  double upper = 1.0;
  while (tail_bound(upper) > tail_target) {
    upper *= 2.0;
    if (upper > kMaxTruncation) throw QuadratureNoConvergence("characteristic function decays too slowly");
  }
  const double tail = tail_bound(upper);

  const auto half = oscillation_breakpoints(upper, omega);
  std::vector<double> bp;
  bp.reserve(2 * half.size());
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it > 0.0) bp.push_back(-*it);
  }
  bp.insert(bp.end(), half.begin(), half.end());

  const auto res = adaptive_integrate(f, std::span<const double>(bp), cfg);
  const double re = res.value.real();
  const double residue = std::abs(res.value.imag());
  if (residue > std::max(1e-9 * std::abs(re), 10.0 * (cfg.abs_tol + res.abs_error))) {
    throw QuadratureNoConvergence("imaginary residue " + std::to_string(residue) + " too large");
  }
  return {re, res.abs_error + tail, 0.0, upper, res.evaluations};
}

void check_contract(double spot, double strike, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("maturity must be > 0");
  if (!(spot > 0.0) || !std::isfinite(spot)) throw InvalidInput("spot must be > 0");
  if (!(strike > 0.0) || !std::isfinite(strike)) throw InvalidInput("strike must be > 0");
}

// Undiscounted E[(K - S0 e^X)^+] or E[(S0 e^X - K)^+] depending on the side of
// the contour; the transform of both payoffs is K^{1+iz} / (iz (iz + 1)).
FourierResult exp_payoff(const LevyModel& model, double spot, double strike, double t, double R,
                         const QuadratureConfig& cfg) {
  const double kappa = std::log(strike / spot);
  const double scale = strike / (2.0 * std::numbers::pi);
  auto integrand = [&](double u) -> cdouble {
    const cdouble iu_minus_r{-R, u};
    const cdouble exponent = iu_minus_r * kappa + t * model.exponent_unchecked({-u, -R});
    const cdouble denom = cdouble{R, -u} * cdouble{R - 1.0, -u};
    return scale * std::exp(exponent) / denom;
  };
  const double omega = std::abs(kappa - model.closed_form_drift() * t);
  auto res = invert(integrand, omega, cfg);
  res.damping = R;
  res.price = std::max(res.price, 0.0);
  return res;
}

FourierResult linear_payoff(const LevyModel& model, double k, double t, double R, const QuadratureConfig& cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("maturity must be > 0");
  if (!std::isfinite(k)) throw InvalidInput("strike must be finite");
  // Transform of (x - k)^+ (Im z > 0) and of (k - x)^+ (Im z < 0) at z = u + iR is -exp(i z k) / z^2.
  auto integrand = [&](double u) -> cdouble {
    const cdouble z{u, R};
    const cdouble iz{-R, u};
    const cdouble exponent = iz * k + t * model.exponent_unchecked(-z);
    return -std::exp(exponent) / (z * z) / (2.0 * std::numbers::pi);
  };
  auto res = invert(integrand, std::abs(k - model.closed_form_drift() * t), cfg);
  res.damping = R;
  res.price = std::max(res.price, 0.0);
  return res;
}

// Between the pole and the rule-of-thumb shift, the R that minimises the peak
// log|integrand(0)| = -R kappa + t Re psi(-iR) - log|R (R - 1)|. The peak sets
// how much cancellation the inversion suffers; the function is convex in R.
double conditioned_damping(const LevyModel& model, double kappa, double t, double lo, double hi, double rule) {
  auto peak = [&](double R) {
    return -R * kappa + t * model.exponent_unchecked({0.0, -R}).real() - std::log(std::abs(R * (R - 1.0)));
  };
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = peak(x1), f2 = peak(x2);
  for (int i = 0; i < 80 && b - a > 1e-6 * std::max(1.0, std::abs(b)); ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = peak(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = peak(x2);
    }
  }
  const double best = 0.5 * (a + b);
  // keep the rule value when it is as good; it is the documented default
  return peak(rule) <= peak(best) ? rule : best;
}

}  // namespace

double default_call_damping(const TemperedStableParams& p) {
  return clip(1.0 + 0.25 * (p.lambda_plus - 1.0), 1.0, p.lambda_plus);
}

double default_put_damping(const TemperedStableParams& p) {
  return clip(-0.25 * p.lambda_minus, -p.lambda_minus, 0.0);
}

double default_linear_damping(const TemperedStableParams& p) { return clip(0.25 * p.lambda_plus, 0.0, p.lambda_plus); }

FourierResult price_call_fourier_detailed(const LevyModel& model, double spot, double strike, double t,
                                          const QuadratureConfig& cfg) {
  check_contract(spot, strike, t);
  const double rule = default_call_damping(model.params());
  const double R = cfg.damping ? *cfg.damping
                               : conditioned_damping(model, std::log(strike / spot), t, 1.0 + kEdge, rule, rule);
  check_damping(model, R, 1.0, std::numeric_limits<double>::infinity(), "call damping");
  auto res = exp_payoff(model, spot, strike, t, R, cfg);
  const double df = std::exp(-model.params().r * t);
  res.price *= df;
  res.abs_error *= df;
  return res;
}

double price_call_fourier(const LevyModel& model, double spot, double strike, double t, const QuadratureConfig& cfg) {
  return price_call_fourier_detailed(model, spot, strike, t, cfg).price;
}

FourierResult price_put_fourier_detailed(const LevyModel& model, double spot, double strike, double t,
                                         const QuadratureConfig& cfg) {
  check_contract(spot, strike, t);
  const double rule = default_put_damping(model.params());
  const double R = cfg.damping ? *cfg.damping
                               : conditioned_damping(model, std::log(strike / spot), t, rule, -kEdge, rule);
  check_damping(model, R, -std::numeric_limits<double>::infinity(), 0.0, "put damping");
  auto res = exp_payoff(model, spot, strike, t, R, cfg);
  const double df = std::exp(-model.params().r * t);
  res.price *= df;
  res.abs_error *= df;
  return res;
}

double price_put_fourier(const LevyModel& model, double spot, double strike, double t, const QuadratureConfig& cfg) {
  return price_put_fourier_detailed(model, spot, strike, t, cfg).price;
}

FourierResult price_linear_call_detailed(const LevyModel& model, double k, double t, const QuadratureConfig& cfg) {
  const double R = cfg.damping.value_or(default_linear_damping(model.params()));
  check_damping(model, R, 0.0, std::numeric_limits<double>::infinity(), "linear call damping");
  return linear_payoff(model, k, t, R, cfg);
}

FourierResult price_linear_put_detailed(const LevyModel& model, double k, double t, const QuadratureConfig& cfg) {
  const double R = cfg.damping.value_or(default_put_damping(model.params()));
  check_damping(model, R, -std::numeric_limits<double>::infinity(), 0.0, "linear put damping");
  return linear_payoff(model, k, t, R, cfg);
}

double price_linear_put(const LevyModel& model, double k, double t, const QuadratureConfig& cfg) {
  return price_linear_put_detailed(model, k, t, cfg).price;
}

double price_linear_call(const LevyModel& model, double k, double t, const QuadratureConfig& cfg) {
  return price_linear_call_detailed(model, k, t, cfg).price;
}

double otm_forward_price(const LevyModel& model, double k, double t, const QuadratureConfig& cfg) {
  check_contract(1.0, 1.0, t);
  // Discounted price with the strike quoted against the forward e^{r t}.
  const double strike = std::exp(k + model.params().r * t);
  return k >= 0.0 ? price_call_fourier(model, 1.0, strike, t, cfg) : price_put_fourier(model, 1.0, strike, t, cfg);
}

}  // namespace levy_smile
