#pragma once

#include "levy_smile/levy_core.hpp"

namespace levy_smile {

// k_t = theta sqrt(t log(1/t)), for theta != 0 and t in (0, e^-1).
struct MovingStrike {
  double theta;
  double t;
  double k_t;
};
MovingStrike moving_strike(double theta, double t);

// Short-maturity price approximations for log-strike k > 0 (the put variants
// price the option struck at e^{-k}). infvar_* need alpha in (1,2).
double infvar_call_approx(double t, double k, double sigma, double alpha_plus, double c_plus_tail);
double infvar_put_approx(double t, double k, double sigma, double alpha_minus, double c_minus_tail);
double finvar_call_approx(double t, double k, double sigma, double gamma_plus);
double finvar_put_approx(double t, double k, double sigma, double gamma_minus);

// J_t(x) = log x / log t - log log(1/t) / log(1/t), t in (0, e^-1), x > 0.
double log_price_exponent(double t, double x);

// Two-term implied volatility of an out-of-the-money price at k_t, with
// L = J_t(price). Throws ExpansionOutsideDomain when 2L - 1 <= 0.
double implied_vol_from_price_expansion(double t, double theta, double price);

enum class SmileBranch { jump_dominated, diffusion_dominated };

struct SmileExpansion {
  double approx_price = 0.0;  // asymptotic out-of-the-money price at k_t
  double L_value = 0.0;       // J_t(approx_price)
  SmileBranch branch = SmileBranch::jump_dominated;
  bool infinite_variation = true;
  double correction = 0.0;  // I or F; zero on the diffusion branch
  double sigma_t = 0.0;
  double sigma_0 = 0.0;
};

// Explicit implied-volatility expansion on the side selected by sign(theta).
// The boundary |theta| = sigma sqrt(2 - alpha) (resp. sigma) belongs to the
// jump branch. Throws UncoveredCase when that side has no jumps.
SmileExpansion corollary_expansion(double t, double theta, double sigma, const JumpActivityConstants& activity);

// max{-theta / sqrt(1 - (a- - 1)^+), sigma, theta / sqrt(1 - (a+ - 1)^+)} restricted to
// the side of theta. A side without jumps contributes only sigma; with
// neither, UncoveredCase.
double limit_smile(double theta, double sigma, const JumpActivityConstants& activity);

// (2c)^{1/alpha} / pi Gamma(1 - 1/alpha) (-Gamma(alpha) cos(pi alpha / 2))^{1/alpha}, the closed
// form quoted for E[Z^+] with Z strictly alpha-stable of Levy density c / |x|^{1+alpha}.
double atm_stable_constant(double c, double alpha);
// The same expectation from the characteristic function of Z, whose exponent is
// 2 c Gamma(-alpha) cos(pi alpha / 2) |u|^alpha. Differs from atm_stable_constant
// by the factor (Gamma(-alpha) / Gamma(alpha))^{1/alpha}.
double stable_positive_part_mean(double c, double alpha);
double atm_price_approx(double t, double c, double alpha);

}  // namespace levy_smile
