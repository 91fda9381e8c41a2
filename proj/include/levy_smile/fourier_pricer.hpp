#pragma once

#include "levy_smile/levy_core.hpp"
#include "levy_smile/quadrature.hpp"

namespace levy_smile {

// Value and diagnostics of one Fourier inversion.
struct FourierResult {
  double price = 0.0;
  double abs_error = 0.0;    // quadrature estimate plus truncated tail bound
  double damping = 0.0;      // contour shift R actually used
  double truncation = 0.0;   // integration runs over [-U, U]
  int evaluations = 0;
};

// Rule-of-thumb contour shifts (the call rule is 1 + (lambda_plus - 1) / 4).
// Without an explicit cfg.damping the call and put pricers search between the
// pole and this value for the shift with the smallest integrand peak, and fall
// back to the rule when nothing beats it.
double default_call_damping(const TemperedStableParams& p);
double default_put_damping(const TemperedStableParams& p);
double default_linear_damping(const TemperedStableParams& p);

// Present value exp(-r t) E[(S0 e^{X_t} - K)^+] where E[e^{X_t}] = e^{r t}.
// The damping must satisfy 1 < R < lambda_plus; throws DampingOutOfStrip or
// QuadratureNoConvergence.
FourierResult price_call_fourier_detailed(const LevyModel& model, double spot, double strike, double t,
                                          const QuadratureConfig& cfg = {});
double price_call_fourier(const LevyModel& model, double spot, double strike, double t,
                          const QuadratureConfig& cfg = {});

// Present value exp(-r t) E[(K - S0 e^{X_t})^+], inverted directly on a
// contour with -lambda_minus < R < 0 (no parity subtraction, so deep
// out-of-the-money puts keep their relative accuracy).
FourierResult price_put_fourier_detailed(const LevyModel& model, double spot, double strike, double t,
                                         const QuadratureConfig& cfg = {});
double price_put_fourier(const LevyModel& model, double spot, double strike, double t,
                         const QuadratureConfig& cfg = {});

// E[(X_t - k)^+] with the martingale-drifted X; needs 0 < R < lambda_plus.
FourierResult price_linear_call_detailed(const LevyModel& model, double k, double t,
                                         const QuadratureConfig& cfg = {});
double price_linear_call(const LevyModel& model, double k, double t, const QuadratureConfig& cfg = {});

// E[(k - X_t)^+]; same transform on a contour with -lambda_minus < R < 0.
FourierResult price_linear_put_detailed(const LevyModel& model, double k, double t,
                                        const QuadratureConfig& cfg = {});
double price_linear_put(const LevyModel& model, double k, double t, const QuadratureConfig& cfg = {});

// Out-of-the-money price in forward units at log-moneyness k:
// E[(e^{X_t - r t} - e^k)^+] for k >= 0, E[(e^k - e^{X_t - r t})^+] for k < 0.
double otm_forward_price(const LevyModel& model, double k, double t, const QuadratureConfig& cfg = {});

}  // namespace levy_smile
