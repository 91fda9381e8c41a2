#pragma once

// Black-Scholes quantities in forward units: spot 1, zero rate, log-strike k.

namespace levy_smile {

double normal_cdf(double x);
double normal_pdf(double x);

// N(d+) - e^k N(d-), d+- = -k/(sigma sqrt t) +- sigma sqrt t / 2.
// sigma = 0 gives the intrinsic value (1 - e^k)^+.
double bs_call(double t, double k, double sigma);
// e^k N(-d-) - N(-d+); sigma = 0 gives (e^k - 1)^+.
double bs_put(double t, double k, double sigma);
double bs_price(double t, double k, double sigma, bool is_call);
double bs_vega(double t, double k, double sigma);

struct OptionQuote {
  double t = 0.0;
  double k = 0.0;
  bool is_call = true;
  double price = 0.0;
};

// Strict no-arbitrage interval (lower, upper) for the quote's price.
struct PriceBounds {
  double lower;
  double upper;
};
PriceBounds arbitrage_bounds(double k, bool is_call);

// Bisection on [1e-8, 5] down to a 1e-4 bracket, then safeguarded Newton on
// log-price to 1e-12. The upper end is widened when the price needs more than
// 5 of volatility. Throws PriceOutOfBounds or NoConvergence (200 iterations).
double implied_vol(const OptionQuote& quote);

// The two printed terms of the small-time call expansion along k_t = theta sqrt(t log 1/t).
// Requires t in (0, e^-1).
double bs_call_expansion(double t, double theta, double sigma);

// E[(sigma W_t - k)^+]
double bachelier_call(double t, double k, double sigma);

}  // namespace levy_smile
