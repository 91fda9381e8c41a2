#pragma once

#include <complex>
#include <optional>
#include <utility>

namespace levy_smile {

using cdouble = std::complex<double>;

// Generalised tempered stable jumps plus an optional Brownian part:
//   nu(x) = c+ e^{-l+ x} / x^{1+a+}  (x > 0),  c- e^{-l- |x|} / |x|^{1+a-}  (x < 0).
struct TemperedStableParams {
  double c_plus = 0.0;
  double c_minus = 0.0;
  double lambda_plus = 2.0;
  double lambda_minus = 2.0;
  double alpha_plus = 1.5;
  double alpha_minus = 1.5;
  double sigma = 0.0;
  double r = 0.0;

  friend bool operator==(const TemperedStableParams&, const TemperedStableParams&) = default;
};

// Throws MomentConditionFailed for lambda_plus <= 1 and InvalidModel for any
// other broken invariant.
void validate(const TemperedStableParams& p);

// Drift under the truncation x 1{|x| <= 1}. Always the martingale value.
struct LevyTriplet {
  double sigma_sq = 0.0;
  TemperedStableParams jump_density;
  double gamma = 0.0;
};

struct JumpActivityConstants {
  double alpha_plus = 0.0;
  double alpha_minus = 0.0;
  // lim_{x->0} x^alpha nu((x, inf)) and its mirror; c / alpha for this family.
  double c_plus_tail = 0.0;
  double c_minus_tail = 0.0;
  // int_{x>0} (e^x - 1) nu(dx) and int_{x<0} (1 - e^x) nu(dx).
  // Empty when the side has infinite variation (alpha >= 1) and c > 0.
  std::optional<double> gamma_plus;
  std::optional<double> gamma_minus;
};

enum class Side { plus, minus };

// Validated model with the martingale drift and gamma constants cached, so
// the characteristic exponent is cheap enough for quadrature inner loops.
class LevyModel {
 public:
  explicit LevyModel(const TemperedStableParams& params);

  const TemperedStableParams& params() const noexcept { return params_; }

  // psi(u) with E[exp(i u X_t)] = exp(t psi(u)); throws FrequencyOutOfStrip
  // unless -lambda_plus < Im(u) < lambda_minus (active sides only).
  cdouble exponent(cdouble u) const;
  // Same without the strip check, for hot loops that validated the contour.
  cdouble exponent_unchecked(cdouble u) const noexcept;
  cdouble characteristic_function(cdouble u, double t) const { return std::exp(t * exponent(u)); }

  // Drift b of the representation psi(u) = i u b - sigma^2 u^2 / 2 + Phi+(u) + Phi-(u),
  // where each Phi is the closed-form tempered stable term (fully compensated
  // for alpha > 1, uncompensated for alpha < 1).
  double closed_form_drift() const noexcept { return closed_form_drift_; }
  // gamma of the (sigma^2, nu, gamma) triplet under truncation x 1{|x|<=1}.
  double truncated_drift() const noexcept { return truncated_drift_; }

  bool has_jumps(Side s) const noexcept;
  bool has_jumps() const noexcept { return has_jumps(Side::plus) || has_jumps(Side::minus); }
  // Open interval of admissible Im(u).
  std::pair<double, double> strip() const noexcept;

  // -psi''(0): variance rate of X.
  double variance_rate() const noexcept;

 private:
  cdouble jump_term(Side s, cdouble u) const noexcept;

  TemperedStableParams params_;
  double gamma_neg_plus_ = 0.0;   // Gamma(-alpha+)
  double gamma_neg_minus_ = 0.0;  // Gamma(-alpha-)
  double closed_form_drift_ = 0.0;
  double truncated_drift_ = 0.0;
};

cdouble characteristic_exponent(const TemperedStableParams& model, cdouble u);
double martingale_drift(const TemperedStableParams& model);
LevyTriplet levy_triplet(const TemperedStableParams& model);
JumpActivityConstants jump_activity_constants(const TemperedStableParams& model);
// Blumenthal-Getoor index per side; 0 for a side without jumps.
std::pair<double, double> blumenthal_getoor(const TemperedStableParams& model);

}  // namespace levy_smile
