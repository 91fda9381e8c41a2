#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "levy_smile/asymptotics.hpp"
#include "levy_smile/bs_engine.hpp"
#include "levy_smile/errors.hpp"
#include "levy_smile/fourier_pricer.hpp"
#include "levy_smile/mc_oracle.hpp"

using namespace levy_smile;

namespace {

JumpActivityConstants infinite_variation(double c_tail, double alpha = 1.5) {
  JumpActivityConstants a;
  a.alpha_plus = a.alpha_minus = alpha;
  a.c_plus_tail = a.c_minus_tail = c_tail;
  return a;
}

JumpActivityConstants finite_variation(double gamma) {
  JumpActivityConstants a;
  a.alpha_plus = a.alpha_minus = 0.5;
  a.c_plus_tail = a.c_minus_tail = 2.0;
  a.gamma_plus = a.gamma_minus = gamma;
  return a;
}

}  // namespace

TEST_CASE("moving strike") {
  CHECK(moving_strike(0.3, 0.01).k_t == doctest::Approx(0.064379).epsilon(1e-5));
  CHECK(moving_strike(0.3, 0.01).k_t == doctest::Approx(0.3 * std::sqrt(0.01 * std::log(100.0))).epsilon(1e-15));
  CHECK(moving_strike(-0.2, std::exp(-4.0)).k_t == doctest::Approx(-0.4 * std::exp(-2.0)).epsilon(1e-14));
  CHECK_NOTHROW(moving_strike(0.3, std::nextafter(std::exp(-1.0), 0.0)));
  CHECK_THROWS_AS(moving_strike(0.3, std::exp(-1.0)), InvalidInput);
  CHECK_THROWS_AS(moving_strike(0.0, 0.01), InvalidInput);
  CHECK_THROWS_AS(moving_strike(0.3, 0.0), InvalidInput);
}

TEST_CASE("infinite-variation price approximation") {
  CHECK(infvar_call_approx(0.01, 0.1, 0.0, 1.5, 2.0 / 3.0) == doctest::Approx(0.01 / std::sqrt(0.1) * (2.0 / 3.0) / 0.5));
  CHECK(infvar_call_approx(0.01, 0.1, 0.0, 1.5, 2.0 / 3.0) == doctest::Approx(0.042164).epsilon(1e-5));
  CHECK(infvar_call_approx(0.01, 0.1, 0.2, 1.5, 0.0) == doctest::Approx(bs_call(0.01, 0.1, 0.2)).epsilon(1e-15));
  CHECK(infvar_put_approx(0.01, 0.1, 0.0, 1.5, 2.0 / 3.0) == doctest::Approx(0.042164).epsilon(1e-5));
  CHECK(infvar_put_approx(0.01, 0.1, 0.2, 1.5, 0.0) == doctest::Approx(bs_put(0.01, -0.1, 0.2)).epsilon(1e-15));
  CHECK_THROWS_AS(infvar_call_approx(0.01, 0.1, 0.0, 0.5, 1.0), InvalidInput);
  CHECK_THROWS_AS(infvar_put_approx(0.01, 0.1, 0.0, 2.0, 1.0), InvalidInput);
}

TEST_CASE("put approximation mirrors the call for a symmetric model") {
  for (double sigma : {0.0, 0.2}) {
    const double t = 1e-3;
    const double k = moving_strike(0.25, t).k_t;
    // Put at e^{-k} equals e^{-k} times the call at e^{k} under x -> -x in the BS term.
    const double put = infvar_put_approx(t, k, sigma, 1.5, 2.0 / 3.0);
    const double call = infvar_call_approx(t, k, sigma, 1.5, 2.0 / 3.0);
    const double jump = t * std::pow(k, -0.5) * (2.0 / 3.0) / 0.5;
    CHECK(put - jump == doctest::Approx(std::exp(-k) * (call - jump)).epsilon(1e-12));
  }
}

TEST_CASE("finite-variation price approximation") {
  CHECK(finvar_call_approx(1e-4, 0.01, 0.0, 1.1267) == doctest::Approx(1.1267e-4).epsilon(1e-12));
  CHECK(finvar_call_approx(1e-2, 0.05, 0.2, 0.0) == doctest::Approx(bs_call(1e-2, 0.05, 0.2)).epsilon(1e-15));
  CHECK(finvar_put_approx(1e-4, 0.01, 0.0, 0.8) == doctest::Approx(0.8e-4).epsilon(1e-12));
  CHECK(finvar_put_approx(1e-2, 0.05, 0.2, 0.0) == doctest::Approx(bs_put(1e-2, -0.05, 0.2)).epsilon(1e-15));
  CHECK_THROWS_AS(finvar_call_approx(1e-2, 0.05, 0.2, -1.0), InvalidInput);
}

TEST_CASE("finite-variation approximation error is o(t) along the moving strike") {
  // The alpha = 0.6442 validation model without rate. The gap shrinks like k^{1 - alpha}, slowly.
  auto p = fixtures::table_row(1);
  p.r = 0.0;
  const LevyModel m(p);
  const auto a = jump_activity_constants(p);
  REQUIRE(a.gamma_plus.has_value());
  REQUIRE(a.gamma_minus.has_value());
  double previous_call = 1e9;
  double previous_put = 1e9;
  for (int n = 2; n <= 6; ++n) {
    const double t = std::pow(10.0, -n);
    const double k = moving_strike(0.3, t).k_t;
    const double call_gap = std::abs(otm_forward_price(m, k, t) - finvar_call_approx(t, k, 0.0, *a.gamma_plus)) / t;
    const double put_gap = std::abs(otm_forward_price(m, -k, t) - finvar_put_approx(t, k, 0.0, *a.gamma_minus)) / t;
    CHECK(call_gap < previous_call);
    CHECK(put_gap < previous_put);
    previous_call = call_gap;
    previous_put = put_gap;
  }
}

TEST_CASE("infinite-variation approximation ratio approaches one") {
  const LevyModel m(fixtures::reference_model());
  double previous = 1.0;
  for (int n = 2; n <= 6; ++n) {
    const double t = std::pow(10.0, -n);
    const double k = std::pow(t, 1.0 / 1.9);
    const double gap = std::abs(otm_forward_price(m, k, t) / infvar_call_approx(t, k, 0.0, 1.5, 2.0 / 3.0) - 1.0);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 0.05);
}

TEST_CASE("J function") {
  CHECK(log_price_exponent(std::exp(-M_E), 1.0) == doctest::Approx(-1.0 / M_E).epsilon(1e-14));
  CHECK(log_price_exponent(std::exp(-10.0), 1.0) == doctest::Approx(-0.230259).epsilon(1e-5));
  CHECK(log_price_exponent(std::exp(-10.0), std::exp(-10.0)) == doctest::Approx(0.769741).epsilon(1e-6));
  CHECK_THROWS_AS(log_price_exponent(0.5, 1.0), InvalidInput);
  CHECK_THROWS_AS(log_price_exponent(0.01, 0.0), InvalidInput);
}

TEST_CASE("implied volatility from the price expansion") {
  const double t = std::exp(-10.0);
  const double log_inv = 10.0;
  auto price_for = [&](double L) { return std::exp((L + std::log(log_inv) / log_inv) * std::log(t)); };
  CHECK(log_price_exponent(t, price_for(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(implied_vol_from_price_expansion(t, 0.3, price_for(1.0)) ==
        doctest::Approx(0.3 + 0.3 * std::log(std::sqrt(2.0 * M_PI) / 0.3) / 10.0).epsilon(1e-12));
  CHECK(implied_vol_from_price_expansion(t, 0.3, price_for(1.0)) == doctest::Approx(0.363687).epsilon(1e-6));
  CHECK(implied_vol_from_price_expansion(t, 0.3, price_for(0.75)) == doctest::Approx(0.5162).epsilon(1e-4));
  CHECK(implied_vol_from_price_expansion(t, -0.3, price_for(0.75)) ==
        implied_vol_from_price_expansion(t, 0.3, price_for(0.75)));
  CHECK_THROWS_AS(implied_vol_from_price_expansion(t, 0.3, price_for(0.5)), ExpansionOutsideDomain);
  CHECK_THROWS_AS(implied_vol_from_price_expansion(t, 0.3, price_for(0.2)), ExpansionOutsideDomain);
  // Leading term dominates as t -> 0 at fixed L.
  const double tiny = std::exp(-400.0);
  const double p = std::exp((0.75 + std::log(400.0) / 400.0) * std::log(tiny));
  CHECK(implied_vol_from_price_expansion(tiny, 0.3, p) == doctest::Approx(0.3 / std::sqrt(0.5)).epsilon(0.01));
}

TEST_CASE("corollary expansion, infinite variation") {
  const double t = std::exp(-10.0);
  const auto e = corollary_expansion(t, 0.3, 0.0, infinite_variation(2.0 / 3.0));
  CHECK(e.branch == SmileBranch::jump_dominated);
  CHECK(e.infinite_variation);
  const double I = (1.5 / 1.0) * std::log(10.0) / 10.0 +
                   std::log(std::pow(0.5, 1.5) * (2.0 / 3.0) * std::sqrt(2.0 * M_PI) / (std::pow(0.3, 1.5) * 0.5)) / (0.5 * 10.0);
  CHECK(e.correction == doctest::Approx(I).epsilon(1e-13));
  CHECK(e.correction == doctest::Approx(0.740).epsilon(1e-3));
  CHECK(e.sigma_t == doctest::Approx(0.3 / std::sqrt(0.5) * (1.0 + I)).epsilon(1e-13));
  CHECK(e.sigma_0 == doctest::Approx(0.3 / std::sqrt(0.5)).epsilon(1e-14));
  CHECK(e.L_value == doctest::Approx(log_price_exponent(t, e.approx_price)).epsilon(1e-14));

  const auto d = corollary_expansion(t, 0.1, 0.2, infinite_variation(2.0 / 3.0));
  CHECK(d.branch == SmileBranch::diffusion_dominated);
  CHECK(d.sigma_t == 0.2);
  CHECK(d.sigma_0 == 0.2);

  // Boundary theta = sigma sqrt(2 - alpha) belongs to the jump branch.
  const double edge = 0.2 * std::sqrt(0.5);
  CHECK(corollary_expansion(t, edge, 0.2, infinite_variation(2.0 / 3.0)).branch == SmileBranch::jump_dominated);
  CHECK(corollary_expansion(t, -edge, 0.2, infinite_variation(2.0 / 3.0)).branch == SmileBranch::jump_dominated);
}

TEST_CASE("corollary expansion, finite variation") {
  const double t = std::exp(-10.0);
  const auto e = corollary_expansion(t, 0.5, 0.0, finite_variation(1.1267));
  CHECK_FALSE(e.infinite_variation);
  CHECK(e.branch == SmileBranch::jump_dominated);
  const double F = std::log(10.0) / 10.0 + std::log(1.1267 * std::sqrt(2.0 * M_PI) / 0.5) / 10.0;
  CHECK(e.correction == doctest::Approx(F).epsilon(1e-13));
  CHECK(e.sigma_t == doctest::Approx(0.7017).epsilon(1e-4));
  CHECK(e.sigma_0 == doctest::Approx(0.5));
  CHECK(corollary_expansion(t, 0.1, 0.2, finite_variation(1.0)).branch == SmileBranch::diffusion_dominated);
  CHECK(corollary_expansion(t, 0.2, 0.2, finite_variation(1.0)).branch == SmileBranch::jump_dominated);
}

TEST_CASE("corollary expansion without jumps on the relevant side") {
  auto a = infinite_variation(2.0 / 3.0);
  a.c_minus_tail = 0.0;
  CHECK_THROWS_AS(corollary_expansion(0.01, -0.3, 0.2, a), UncoveredCase);
  CHECK_NOTHROW(corollary_expansion(0.01, 0.3, 0.2, a));
  auto f = finite_variation(1.0);
  f.gamma_plus = 0.0;
  CHECK_THROWS_AS(corollary_expansion(0.01, 0.3, 0.0, f), UncoveredCase);
}

TEST_CASE("branch continuity at the boundary") {
  const auto a = infinite_variation(2.0 / 3.0);
  const double edge = 0.2 * std::sqrt(0.5);
  double previous = 1e9;
  for (double n : {10.0, 50.0, 200.0, 700.0}) {
    const double t = std::exp(-n);
    const double above = corollary_expansion(t, edge + 1e-9, 0.2, a).sigma_t;
    const double below = corollary_expansion(t, edge - 1e-9, 0.2, a).sigma_t;
    const double gap = std::abs(above - below);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-2);
}

TEST_CASE("limit smile") {
  const auto a = infinite_variation(2.0 / 3.0);
  CHECK(limit_smile(0.3, 0.2, a) == doctest::Approx(0.424264).epsilon(1e-6));
  CHECK(limit_smile(-0.1, 0.2, a) == 0.2);
  CHECK(limit_smile(0.5, 0.0, finite_variation(1.0)) == 0.5);
  auto none = a;
  none.c_plus_tail = 0.0;
  CHECK(limit_smile(0.3, 0.2, none) == 0.2);
  CHECK_THROWS_AS(limit_smile(0.3, 0.0, none), UncoveredCase);
  CHECK_THROWS_AS(limit_smile(0.0, 0.2, a), InvalidInput);
}

TEST_CASE("stable constant for the at-the-money limit") {
  CHECK(atm_stable_constant(1.0, 1.5) == doctest::Approx(0.9913).epsilon(1e-4));
  CHECK(atm_stable_constant(2.0, 1.5) == doctest::Approx(1.5736).epsilon(1e-4));
  CHECK(atm_stable_constant(2.0, 1.5) == doctest::Approx(std::pow(2.0, 1.0 / 1.5) * atm_stable_constant(1.0, 1.5)));
  CHECK(atm_price_approx(1e-4, 1.0, 1.5) == doctest::Approx(2.138e-3).epsilon(1e-3));
  CHECK(atm_price_approx(1.0, 1.0, 1.5) == atm_stable_constant(1.0, 1.5));
  CHECK(atm_stable_constant(1.0, 1.9) > 0.0);
  CHECK_THROWS_AS(atm_stable_constant(1.0, 0.5), InvalidInput);
  CHECK_THROWS_AS(atm_stable_constant(1.0, 2.0), InvalidInput);
  CHECK_THROWS_AS(atm_stable_constant(0.0, 1.5), InvalidInput);
}

TEST_CASE("positive-part mean of the stable law") {
  // E[Z^+] = (1/pi) int_0^inf (1 - e^{-s u^alpha}) / u^2 du for symmetric Z
  for (double alpha : {1.2, 1.5, 1.9}) {
    const double s = -2.0 * std::tgamma(-alpha) * std::cos(0.5 * M_PI * alpha);
    auto f = [&](double u) { return -std::expm1(-s * std::pow(u, alpha)) / (u * u); };
    const double ref = (oracle::integrate_singular(f, 0.0, 1.0) + oracle::integrate_to_inf(f, 1.0)) / M_PI;
    CHECK(stable_positive_part_mean(1.0, alpha) == doctest::Approx(ref).epsilon(1e-9));
  }
  CHECK(stable_positive_part_mean(1.0, 1.5) ==
        doctest::Approx(atm_stable_constant(1.0, 1.5) * std::pow(std::tgamma(-1.5) / std::tgamma(1.5), 1.0 / 1.5)));
}

TEST_CASE("positive-part mean against simulated stable increments") {
  // A tempered model with tiny lambda over a short horizon, rescaled by t^{-1/alpha}, is close to stable.
  auto p = fixtures::tempered(1.0, 1.0001, 1e-4, 1.9);
  const LevyModel m(p);
  SimConfig cfg;
  cfg.n_paths = 400000;
  cfg.seed = 77;
  const double t = 1e-6;
  const auto samples = simulate_increments(m, t, cfg);
  const double scale = std::pow(t, -1.0 / 1.9);
  const auto est = mc_mean(samples, [&](double x) { return std::max(x * scale, 0.0); });
  CHECK(std::abs(est.estimate - stable_positive_part_mean(1.0, 1.9)) < 4.0 * est.standard_error + 0.01);
  CHECK(std::abs(est.estimate - atm_stable_constant(1.0, 1.9)) > 10.0 * est.standard_error);
}

TEST_CASE("at-the-money prices approach the stable positive-part mean") {
  const LevyModel m(fixtures::reference_model());
  const double target = stable_positive_part_mean(1.0, 1.5);
  double previous = 1.0;
  for (int n = 3; n <= 8; ++n) {
    const double t = std::pow(10.0, -n);
    const double gap = std::abs(otm_forward_price(m, 0.0, t) * std::pow(t, -1.0 / 1.5) / target - 1.0);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 0.02);
}
