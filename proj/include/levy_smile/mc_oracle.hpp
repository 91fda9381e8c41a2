#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "levy_smile/levy_core.hpp"

namespace levy_smile {

struct SimConfig {
  std::size_t n_paths = 1'000'000;
  // Starting small-jump cutoff; halved until the substituted standard
  // deviation sqrt(t int_{|x|<=eps} x^2 nu) is at least 10 eps.
  std::optional<double> epsilon;
  std::uint64_t seed = 20120521;
  bool antithetic = false;
};

// x -> T(x) = c int_x^inf e^{-lambda y} y^{-1-alpha} dy on [eps, inf) and its
// inverse. The inverse is a cubic Hermite table of log x against log T, uniform
// in log T over 60 e-folds below T(eps), with slopes from T' = -nu; beyond
// the table it falls back to a safeguarded Newton solve.
class TailInverse {
 public:
  TailInverse() = default;
  TailInverse(double c, double lambda, double alpha, double eps);

  double tail(double x) const;
  double top() const { return top_; }  // T(eps)
  // x >= eps with T(x) = y, for y in (0, T(eps)]; larger y give eps.
  double operator()(double y) const;
  double solve(double y) const;  // the same without the table

 private:
  double density(double x) const;
  double solve_from(double y, double start) const;

  double c_ = 0.0, lambda_ = 0.0, alpha_ = 0.0, eps_ = 0.0;
  double top_ = 0.0, log_top_ = 0.0, step_ = 0.0;
  std::vector<double> log_x_;
  std::vector<double> slope_;  // d log x / d log T at the nodes
};

// Per-side compound Poisson data for jumps larger than the cutoff.
struct JumpSideSampler {
  double c = 0.0;
  double lambda = 0.0;
  double alpha = 0.0;
  double epsilon = 0.0;
  double intensity = 0.0;  // nu((eps, inf)) on this side
  TailInverse inverse;     // empty when intensity is 0
};

// Simulation plan derived from (model, t, cfg); the draw of path i is
// drift t + sqrt(t (sigma^2 + v_eps)) Z + sum of large jumps. Each side's jumps
// are T^{-1}(G_j / t) for the arrivals G_1 < G_2 < ... <= t T(eps) of a unit
// Poisson process, largest first, so a smaller cutoff only appends jumps.
struct SimulationPlan {
  double t = 0.0;
  double epsilon = 0.0;
  double small_jump_variance = 0.0;  // int_{|x|<=eps} x^2 nu(dx), per unit time
  double drift = 0.0;                // makes E[exp(X_t)] = exp(r t) exactly for the simulated law
  JumpSideSampler plus;
  JumpSideSampler minus;
};

SimulationPlan make_simulation_plan(const LevyModel& model, double t, const SimConfig& cfg);

struct SampleSet {
  std::vector<double> draws;
  bool antithetic = false;  // draws[2p], draws[2p+1] share jumps and mirror the Gaussian
  SimulationPlan plan;
};

// OpenMP kernel; bit-identical to the serial reference for any worker count.
SampleSet simulate_increments(const LevyModel& model, double t, const SimConfig& cfg);
SampleSet simulate_increments_serial(const LevyModel& model, double t, const SimConfig& cfg);

enum class PayoffKind { call, put, linear_call, linear_put };

// Payoffs on S0 = 1: (e^x - e^k)^+, (e^k - e^x)^+, (x - k)^+, (k - x)^+.
struct Payoff {
  PayoffKind kind = PayoffKind::call;
  double log_strike = 0.0;
  double operator()(double x) const noexcept;
};

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

// Mean and standard error in fixed summation order; antithetic pairs are
// averaged before the error is taken.
McEstimate mc_price(const SampleSet& samples, const Payoff& payoff);

template <class F>
McEstimate mc_mean(const SampleSet& samples, F&& f);

// One draw from the density proportional to e^{-lambda x} x^{-1-alpha} on (eps, inf)
// by inverting the tail at a uniform fraction of T(eps).
template <class Rng>
double sample_large_jump(const JumpSideSampler& side, Rng& rng);

}  // namespace levy_smile

#include "levy_smile/mc_oracle_impl.hpp"
