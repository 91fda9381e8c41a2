#include "levy_smile/levy_core.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "levy_smile/errors.hpp"
#include "levy_smile/special.hpp"

namespace levy_smile {

namespace {

constexpr double kIntegerGuard = 1e-6;

void check_alpha(double alpha, const char* name) {
  if (!(alpha > kIntegerGuard && alpha < 2.0 - kIntegerGuard)) {
    throw InvalidModel(std::string(name) + " must lie in (0,2)");
  }
  if (std::abs(alpha - 1.0) < kIntegerGuard) {
    throw InvalidModel(std::string(name) + " = 1 is not supported");
  }
}

// int_1^inf x nu(x) dx on one side, for alpha > 1
double mean_beyond_one(double c, double lambda, double alpha) {
  return c * std::pow(lambda, alpha - 1.0) * special::upper_incomplete_gamma(1.0 - alpha, lambda);
}

// int_0^1 x nu(x) dx on one side, for alpha < 1
double mean_below_one(double c, double lambda, double alpha) {
  return c * std::pow(lambda, alpha - 1.0) * special::lower_incomplete_gamma(1.0 - alpha, lambda);
}

}  // namespace

void validate(const TemperedStableParams& p) {
  for (double v : {p.c_plus, p.c_minus, p.lambda_plus, p.lambda_minus, p.alpha_plus, p.alpha_minus,
                   p.sigma, p.r}) {
    if (!std::isfinite(v)) throw InvalidModel("non-finite parameter");
  }
  if (p.c_plus < 0.0 || p.c_minus < 0.0) throw InvalidModel("jump scales must be >= 0");
  if (p.sigma < 0.0) throw InvalidModel("sigma must be >= 0");
  if (!(p.lambda_plus > 1.0)) {
    throw MomentConditionFailed("lambda_plus must exceed 1 for E[exp(X_t)] to be finite");
  }
  if (!(p.lambda_minus > 0.0)) throw InvalidModel("lambda_minus must be > 0");
  check_alpha(p.alpha_plus, "alpha_plus");
  check_alpha(p.alpha_minus, "alpha_minus");
  if (p.c_plus == 0.0 && p.c_minus == 0.0 && p.sigma == 0.0) {
    throw InvalidModel("degenerate model: no jumps and no diffusion");
  }
}

LevyModel::LevyModel(const TemperedStableParams& params) : params_(params) {
  validate(params_);
  const auto& p = params_;
  gamma_neg_plus_ = special::gamma_of_negative(p.alpha_plus);
  gamma_neg_minus_ = special::gamma_of_negative(p.alpha_minus);

  // psi(-i) = b + sigma^2/2 + Phi+(-i) + Phi-(-i) = r
  const double phi_at_minus_i = (jump_term(Side::plus, {0.0, -1.0}) + jump_term(Side::minus, {0.0, -1.0})).real();
  closed_form_drift_ = p.r - 0.5 * p.sigma * p.sigma - phi_at_minus_i;

  double shift = 0.0;
  if (has_jumps(Side::plus)) {
    shift += p.alpha_plus > 1.0 ? -mean_beyond_one(p.c_plus, p.lambda_plus, p.alpha_plus)
                                : mean_below_one(p.c_plus, p.lambda_plus, p.alpha_plus);
  }
  if (has_jumps(Side::minus)) {
    shift += p.alpha_minus > 1.0 ? mean_beyond_one(p.c_minus, p.lambda_minus, p.alpha_minus)
                                 : -mean_below_one(p.c_minus, p.lambda_minus, p.alpha_minus);
  }
  truncated_drift_ = closed_form_drift_ + shift;
}

bool LevyModel::has_jumps(Side s) const noexcept {
  return s == Side::plus ? params_.c_plus > 0.0 : params_.c_minus > 0.0;
}

std::pair<double, double> LevyModel::strip() const noexcept {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {has_jumps(Side::plus) ? -params_.lambda_plus : -inf,
          has_jumps(Side::minus) ? params_.lambda_minus : inf};
}

cdouble LevyModel::jump_term(Side s, cdouble u) const noexcept {
  const bool plus = s == Side::plus;
  const double c = plus ? params_.c_plus : params_.c_minus;
  if (c == 0.0) return {0.0, 0.0};
  const double lambda = plus ? params_.lambda_plus : params_.lambda_minus;
  const double alpha = plus ? params_.alpha_plus : params_.alpha_minus;
  const double gneg = plus ? gamma_neg_plus_ : gamma_neg_minus_;
  const cdouble v = plus ? u : -u;
  const cdouble iv{-v.imag(), v.real()};
  cdouble bracket = std::pow(lambda - iv, alpha) - std::pow(lambda, alpha);
  if (alpha > 1.0) bracket += iv * alpha * std::pow(lambda, alpha - 1.0);
  return c * gneg * bracket;
}

cdouble LevyModel::exponent_unchecked(cdouble u) const noexcept {
  const cdouble iu{-u.imag(), u.real()};
  const double s2 = params_.sigma * params_.sigma;
  return iu * closed_form_drift_ - 0.5 * s2 * u * u + jump_term(Side::plus, u) + jump_term(Side::minus, u);
}

cdouble LevyModel::exponent(cdouble u) const {
  const auto [lo, hi] = strip();
  if (!(u.imag() > lo && u.imag() < hi)) {
    throw FrequencyOutOfStrip("Im(u) = " + std::to_string(u.imag()) + " outside (" + std::to_string(lo) +
                              ", " + std::to_string(hi) + ")");
  }
  return exponent_unchecked(u);
}

double LevyModel::variance_rate() const noexcept {
  const auto& p = params_;
  double v = p.sigma * p.sigma;
  if (has_jumps(Side::plus)) {
    v += p.c_plus * std::tgamma(2.0 - p.alpha_plus) * std::pow(p.lambda_plus, p.alpha_plus - 2.0);
  }
  if (has_jumps(Side::minus)) {
    v += p.c_minus * std::tgamma(2.0 - p.alpha_minus) * std::pow(p.lambda_minus, p.alpha_minus - 2.0);
  }
  return v;
}

cdouble characteristic_exponent(const TemperedStableParams& model, cdouble u) {
  return LevyModel(model).exponent(u);
}

double martingale_drift(const TemperedStableParams& model) { return LevyModel(model).truncated_drift(); }

LevyTriplet levy_triplet(const TemperedStableParams& model) {
  const LevyModel m(model);
  return {model.sigma * model.sigma, model, m.truncated_drift()};
}

JumpActivityConstants jump_activity_constants(const TemperedStableParams& model) {
  validate(model);
  JumpActivityConstants out;
  out.alpha_plus = model.alpha_plus;
  out.alpha_minus = model.alpha_minus;
  out.c_plus_tail = model.c_plus / model.alpha_plus;
  out.c_minus_tail = model.c_minus / model.alpha_minus;

  if (model.c_plus == 0.0) {
    out.gamma_plus = 0.0;
  } else if (model.alpha_plus < 1.0) {
    const double a = model.alpha_plus;
    const double l = model.lambda_plus;
    out.gamma_plus = model.c_plus * special::gamma_of_negative(a) * (std::pow(l - 1.0, a) - std::pow(l, a));
  }
  if (model.c_minus == 0.0) {
    out.gamma_minus = 0.0;
  } else if (model.alpha_minus < 1.0) {
    const double a = model.alpha_minus;
    const double l = model.lambda_minus;
    out.gamma_minus = model.c_minus * special::gamma_of_negative(a) * (std::pow(l, a) - std::pow(l + 1.0, a));
  }
  return out;
}

std::pair<double, double> blumenthal_getoor(const TemperedStableParams& model) {
  validate(model);
  return {model.c_plus > 0.0 ? model.alpha_plus : 0.0, model.c_minus > 0.0 ? model.alpha_minus : 0.0};
}

}  // namespace levy_smile
