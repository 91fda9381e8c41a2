#include "levy_smile/mc_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "levy_smile/errors.hpp"
#include "levy_smile/parallel.hpp"
#include "levy_smile/rng.hpp"
#include "levy_smile/special.hpp"

namespace levy_smile {

namespace {

constexpr double kDefaultCutoff = 0.5;
constexpr double kCutoffRatio = 10.0;

double small_jump_variance(double c, double lambda, double alpha, double eps) {
  if (c == 0.0) return 0.0;
  return c * std::pow(lambda, alpha - 2.0) * special::lower_incomplete_gamma(2.0 - alpha, lambda * eps);
}

// c int_eps^inf e^{-mu x} x^{-1-alpha} dx = c mu^alpha Gamma(-alpha, mu eps)
double tempered_tail(double c, double mu, double alpha, double eps) {
  if (c == 0.0) return 0.0;
  return c * std::pow(mu, alpha) * special::upper_incomplete_gamma(-alpha, mu * eps);
}

constexpr int kTableNodes = 4097;
constexpr double kTableSpan = 60.0;  // e-folds of T covered by the table

// Sum of one side's jumps: arrivals of a unit Poisson process up to t T(eps),
// each mapped through T^{-1}(g / t).
double side_jumps(const JumpSideSampler& side, double t, PathRng& rng) {
  double sum = 0.0;
  const double limit = t * side.intensity;
  for (double g = rng.exponential(); g <= limit; g += rng.exponential()) sum += side.inverse(g / t);
  return sum;
}

struct PathKernel {
  const SimulationPlan& plan;
  std::uint64_t seed;
  double gauss_sd;
  bool antithetic;

  // Path (or antithetic pair) i reads substreams 3i (Gaussian), 3i+1 and 3i+2
  // (upward and downward jumps), so changing one part never shifts another.
  void operator()(std::size_t i, double* draws) const {
    PathRng gauss(seed, 3 * i);
    const double z = gauss_sd * gauss.normal();
    double base = plan.drift * plan.t;
    if (plan.plus.intensity > 0.0) {
      PathRng up(seed, 3 * i + 1);
      base += side_jumps(plan.plus, plan.t, up);
    }
    if (plan.minus.intensity > 0.0) {
      PathRng down(seed, 3 * i + 2);
      base -= side_jumps(plan.minus, plan.t, down);
    }
    if (antithetic) {
      draws[2 * i] = base + z;
      draws[2 * i + 1] = base - z;
    } else {
      draws[i] = base + z;
    }
  }
};

void check_sim_inputs(double t, const SimConfig& cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("maturity must be > 0");
  if (cfg.n_paths < 1) throw InvalidInput("need at least one path");
  if (cfg.antithetic && cfg.n_paths % 2 != 0) throw InvalidInput("antithetic sampling needs an even path count");
}

}  // namespace

TailInverse::TailInverse(double c, double lambda, double alpha, double eps)
    : c_(c), lambda_(lambda), alpha_(alpha), eps_(eps) {
  if (!(c > 0.0) || !(lambda > 0.0) || !(eps > 0.0)) throw InvalidInput("tail inverse needs c, lambda, eps > 0");
  top_ = tail(eps);
  log_top_ = std::log(top_);
  step_ = kTableSpan / (kTableNodes - 1);
  log_x_.resize(kTableNodes);
  slope_.resize(kTableNodes);
  double x = eps;
  for (int k = 0; k < kTableNodes; ++k) {
    if (k > 0) x = solve_from(std::exp(log_top_ - k * step_), x);
    log_x_[k] = std::log(x);
    slope_[k] = -tail(x) / (x * density(x));
  }
}

double TailInverse::density(double x) const { return c_ * std::exp(-lambda_ * x) / std::pow(x, 1.0 + alpha_); }

double TailInverse::tail(double x) const {
  return c_ * std::pow(lambda_, alpha_) * special::upper_incomplete_gamma(-alpha_, lambda_ * x);
}

double TailInverse::solve(double y) const { return y >= top_ ? eps_ : solve_from(y, eps_); }

// Newton on log x for log T(x) = log y, kept inside a bracket [lo, hi] with
// T(lo) >= y > T(hi); start must satisfy T(start) >= y.
double TailInverse::solve_from(double y, double start) const {
  const double target = std::log(y);
  auto f = [&](double u) { return std::log(tail(std::exp(u))) - target; };
  double lo = std::log(start);
  double width = 0.5;
  double hi = lo + width;
  while (f(hi) > 0.0) {
    lo = hi;
    width *= 2.0;
    hi = lo + width;
    if (hi > 40.0) throw NoConvergence("tail inverse: target below representable tail");
  }
  double u = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    const double x = std::exp(u);
    const double fu = f(u);
    if (fu == 0.0) return x;
    (fu > 0.0 ? lo : hi) = u;
    const double slope = -x * density(x) / tail(x);
    double next = u - fu / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 1e-15 * std::max(1.0, std::abs(u)) || hi - lo <= 1e-15 * std::max(1.0, std::abs(u))) {
      return std::exp(next);
    }
    u = next;
  }
  throw NoConvergence("tail inverse: Newton iteration cap reached");
}

double TailInverse::operator()(double y) const {
  if (!(y < top_)) return eps_;
  const double tau = (log_top_ - std::log(y)) / step_;
  if (!(tau < kTableNodes - 1)) return solve_from(y, std::exp(log_x_.back()));
  const auto k = static_cast<std::size_t>(tau);
  const double w = tau - static_cast<double>(k);
  const double w2 = w * w;
  const double w3 = w2 * w;
  // slopes are per unit log T; tau runs the other way, one step per node
  const double m0 = -step_ * slope_[k];
  const double m1 = -step_ * slope_[k + 1];
  const double g = (2.0 * w3 - 3.0 * w2 + 1.0) * log_x_[k] + (w3 - 2.0 * w2 + w) * m0 +
                   (-2.0 * w3 + 3.0 * w2) * log_x_[k + 1] + (w3 - w2) * m1;
  return std::max(eps_, std::exp(g));
}

double Payoff::operator()(double x) const noexcept {
  switch (kind) {
    case PayoffKind::call:
      return std::max(std::exp(x) - std::exp(log_strike), 0.0);
    case PayoffKind::put:
      return std::max(std::exp(log_strike) - std::exp(x), 0.0);
    case PayoffKind::linear_call:
      return std::max(x - log_strike, 0.0);
    case PayoffKind::linear_put:
      return std::max(log_strike - x, 0.0);
  }
  return 0.0;
}

SimulationPlan make_simulation_plan(const LevyModel& model, double t, const SimConfig& cfg) {
  check_sim_inputs(t, cfg);
  const auto& p = model.params();
  double eps = cfg.epsilon.value_or(kDefaultCutoff);
  if (!(eps > 0.0)) throw InvalidCutoff("epsilon must be > 0");
  if (eps >= 1.0) throw InvalidCutoff("epsilon must be < 1");

  auto variance = [&](double e) {
    return small_jump_variance(p.c_plus, p.lambda_plus, p.alpha_plus, e) +
           small_jump_variance(p.c_minus, p.lambda_minus, p.alpha_minus, e);
  };
  if (model.has_jumps()) {
    for (int i = 0; t * variance(eps) < kCutoffRatio * kCutoffRatio * eps * eps; ++i) {
      if (i > 2000) throw InvalidCutoff("could not satisfy the small-jump cutoff heuristic");
      eps *= 0.5;
    }
  }

  SimulationPlan plan;
  plan.t = t;
  plan.epsilon = eps;
  plan.small_jump_variance = variance(eps);
  auto side = [&](double c, double lambda, double alpha) {
    JumpSideSampler out{c, lambda, alpha, eps, 0.0, {}};
    if (c > 0.0) {
      out.inverse = TailInverse(c, lambda, alpha, eps);
      out.intensity = out.inverse.top();
    }
    return out;
  };
  plan.plus = side(p.c_plus, p.lambda_plus, p.alpha_plus);
  plan.minus = side(p.c_minus, p.lambda_minus, p.alpha_minus);

  // int_{|x|>eps} (e^x - 1) nu(dx), closed form per side.
  const double exp_moment_plus =
      tempered_tail(p.c_plus, p.lambda_plus - 1.0, p.alpha_plus, eps) - plan.plus.intensity;
  const double exp_moment_minus =
      tempered_tail(p.c_minus, p.lambda_minus + 1.0, p.alpha_minus, eps) - plan.minus.intensity;
  plan.drift = p.r - 0.5 * (p.sigma * p.sigma + plan.small_jump_variance) - exp_moment_plus - exp_moment_minus;
  return plan;
}

SampleSet simulate_increments(const LevyModel& model, double t, const SimConfig& cfg) {
  SampleSet out;
  out.plan = make_simulation_plan(model, t, cfg);
  out.antithetic = cfg.antithetic;
  out.draws.assign(cfg.n_paths, 0.0);
  const PathKernel kernel{out.plan, cfg.seed,
                          std::sqrt(t * (model.params().sigma * model.params().sigma + out.plan.small_jump_variance)),
                          cfg.antithetic};
  const long long streams = static_cast<long long>(cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths);
  double* draws = out.draws.data();
#pragma omp parallel for schedule(static) num_threads(worker_count())
  for (long long i = 0; i < streams; ++i) kernel(static_cast<std::size_t>(i), draws);
  return out;
}

SampleSet simulate_increments_serial(const LevyModel& model, double t, const SimConfig& cfg) {
  SampleSet out;
  out.plan = make_simulation_plan(model, t, cfg);
  out.antithetic = cfg.antithetic;
  out.draws.assign(cfg.n_paths, 0.0);
  const PathKernel kernel{out.plan, cfg.seed,
                          std::sqrt(t * (model.params().sigma * model.params().sigma + out.plan.small_jump_variance)),
                          cfg.antithetic};
  const std::size_t streams = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
  for (std::size_t i = 0; i < streams; ++i) kernel(i, out.draws.data());
  return out;
}

McEstimate mc_price(const SampleSet& samples, const Payoff& payoff) {
  if (samples.draws.empty()) throw InvalidInput("empty sample set");
  return mc_mean(samples, payoff);
}

}  // namespace levy_smile
