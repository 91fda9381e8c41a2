#include "levy_smile/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "levy_smile/bs_engine.hpp"
#include "levy_smile/errors.hpp"
#include "levy_smile/special.hpp"

namespace levy_smile {

namespace {

const double kSmallTimeLimit = std::exp(-1.0);

void check_small_time(double t) {
  if (!(t > 0.0 && t < kSmallTimeLimit)) throw InvalidInput("maturity must lie in (0, e^-1)");
}

void check_approx_inputs(double t, double k, double sigma) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("maturity must be > 0");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidInput("log-strike must be > 0");
  if (!(sigma >= 0.0)) throw InvalidInput("sigma must be >= 0");
}

double infvar_jump_term(double t, double k, double alpha, double c_tail) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw InvalidInput("infinite-variation approximation needs alpha in (1,2)");
  if (!(c_tail >= 0.0)) throw InvalidInput("tail constant must be >= 0");
  return t * std::pow(k, 1.0 - alpha) * c_tail / (alpha - 1.0);
}

}  // namespace

MovingStrike moving_strike(double theta, double t) {
  if (theta == 0.0 || !std::isfinite(theta)) throw InvalidInput("theta must be non-zero");
  check_small_time(t);
  return {theta, t, theta * std::sqrt(t * std::log(1.0 / t))};
}

double infvar_call_approx(double t, double k, double sigma, double alpha_plus, double c_plus_tail) {
  check_approx_inputs(t, k, sigma);
  return bs_call(t, k, sigma) + infvar_jump_term(t, k, alpha_plus, c_plus_tail);
}

double infvar_put_approx(double t, double k, double sigma, double alpha_minus, double c_minus_tail) {
  check_approx_inputs(t, k, sigma);
  return bs_put(t, -k, sigma) + infvar_jump_term(t, k, alpha_minus, c_minus_tail);
}

double finvar_call_approx(double t, double k, double sigma, double gamma_plus) {
  check_approx_inputs(t, k, sigma);
  if (!(gamma_plus >= 0.0) || !std::isfinite(gamma_plus)) throw InvalidInput("gamma_plus must be finite and >= 0");
  return bs_call(t, k, sigma) + t * gamma_plus;
}

double finvar_put_approx(double t, double k, double sigma, double gamma_minus) {
  check_approx_inputs(t, k, sigma);
  if (!(gamma_minus >= 0.0) || !std::isfinite(gamma_minus)) throw InvalidInput("gamma_minus must be finite and >= 0");
  return bs_put(t, -k, sigma) + t * gamma_minus;
}

double log_price_exponent(double t, double x) {
  check_small_time(t);
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidInput("J_t needs x > 0");
  const double log_inv_t = -std::log(t);
  return std::log(x) / std::log(t) - std::log(log_inv_t) / log_inv_t;
}

double implied_vol_from_price_expansion(double t, double theta, double price) {
  if (theta == 0.0 || !std::isfinite(theta)) throw InvalidInput("theta must be non-zero");
  const double L = log_price_exponent(t, price);
  const double d = 2.0 * L - 1.0;
  if (!(d > 0.0)) throw ExpansionOutsideDomain("2 J_t(price) - 1 must be positive");
  const double a = std::abs(theta);
  const double d32 = d * std::sqrt(d);
  return a / std::sqrt(d) + a * std::log(d32 * std::sqrt(2.0 * std::numbers::pi) / a) / (d32 * -std::log(t));
}

SmileExpansion corollary_expansion(double t, double theta, double sigma, const JumpActivityConstants& activity) {
  const MovingStrike ms = moving_strike(theta, t);
  if (!(sigma >= 0.0)) throw InvalidInput("sigma must be >= 0");
  const bool plus = theta > 0.0;
  const double alpha = plus ? activity.alpha_plus : activity.alpha_minus;
  const double c_tail = plus ? activity.c_plus_tail : activity.c_minus_tail;
  const double abs_theta = std::abs(theta);
  const double k = std::abs(ms.k_t);
  const double log_inv_t = -std::log(t);
  const double loglog = std::log(log_inv_t);

  SmileExpansion out;
  if (alpha > 1.0) {
    if (!(c_tail > 0.0)) throw UncoveredCase("no jumps on the side of theta");
    out.infinite_variation = true;
    out.approx_price = plus ? infvar_call_approx(t, k, sigma, alpha, c_tail) : infvar_put_approx(t, k, sigma, alpha, c_tail);
    const double root = std::sqrt(2.0 - alpha);
    if (abs_theta >= sigma * root) {
      out.branch = SmileBranch::jump_dominated;
      const double arg = std::pow(2.0 - alpha, 1.5) * c_tail * std::sqrt(2.0 * std::numbers::pi) /
                         (std::pow(abs_theta, alpha) * (alpha - 1.0));
      out.correction = (3.0 - alpha) / (2.0 * (2.0 - alpha)) * loglog / log_inv_t +
                       std::log(arg) / ((2.0 - alpha) * log_inv_t);
      out.sigma_t = abs_theta / root * (1.0 + out.correction);
    } else {
      out.branch = SmileBranch::diffusion_dominated;
      out.sigma_t = sigma;
    }
  } else {
    const auto gamma = plus ? activity.gamma_plus : activity.gamma_minus;
    if (!gamma || !(*gamma > 0.0)) throw UncoveredCase("no finite-variation jump activity on the side of theta");
    out.infinite_variation = false;
    out.approx_price = plus ? finvar_call_approx(t, k, sigma, *gamma) : finvar_put_approx(t, k, sigma, *gamma);
    if (abs_theta >= sigma) {
      out.branch = SmileBranch::jump_dominated;
      out.correction = loglog / log_inv_t + std::log(*gamma * std::sqrt(2.0 * std::numbers::pi) / abs_theta) / log_inv_t;
      out.sigma_t = abs_theta * (1.0 + out.correction);
    } else {
      out.branch = SmileBranch::diffusion_dominated;
      out.sigma_t = sigma;
    }
  }
  out.L_value = log_price_exponent(t, out.approx_price);
  out.sigma_0 = limit_smile(theta, sigma, activity);
  return out;
}

double limit_smile(double theta, double sigma, const JumpActivityConstants& activity) {
  if (theta == 0.0 || !std::isfinite(theta)) throw InvalidInput("theta must be non-zero");
  if (!(sigma >= 0.0)) throw InvalidInput("sigma must be >= 0");
  const bool plus = theta > 0.0;
  const double alpha = plus ? activity.alpha_plus : activity.alpha_minus;
  const double c_tail = plus ? activity.c_plus_tail : activity.c_minus_tail;
  if (!(c_tail > 0.0)) {
    if (sigma > 0.0) return sigma;
    throw UncoveredCase("neither jumps on the side of theta nor diffusion");
  }
  const double wing = std::abs(theta) / std::sqrt(1.0 - std::max(alpha - 1.0, 0.0));
  return std::max(wing, sigma);
}

double atm_stable_constant(double c, double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw InvalidInput("stable constant needs alpha in (1,2)");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("stable constant needs c > 0");
  const double inv = 1.0 / alpha;
  return std::pow(2.0 * c, inv) / std::numbers::pi * std::tgamma(1.0 - inv) *
         std::pow(-std::tgamma(alpha) * std::cos(0.5 * std::numbers::pi * alpha), inv);
}

double stable_positive_part_mean(double c, double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) throw InvalidInput("stable constant needs alpha in (1,2)");
  if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("stable constant needs c > 0");
  const double inv = 1.0 / alpha;
  // scale s with E[exp(iuZ)] = exp(-s^alpha |u|^alpha); E[Z^+] = s Gamma(1 - 1/alpha) / pi
  const double scale_pow = -2.0 * c * special::gamma_of_negative(alpha) * std::cos(0.5 * std::numbers::pi * alpha);
  return std::pow(scale_pow, inv) * std::tgamma(1.0 - inv) / std::numbers::pi;
}

double atm_price_approx(double t, double c, double alpha) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("maturity must be > 0");
  return std::pow(t, 1.0 / alpha) * atm_stable_constant(c, alpha);
}

}  // namespace levy_smile
