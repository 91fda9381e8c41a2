#pragma once

#include <cmath>
#include <stdexcept>

namespace levy_smile {

template <class F>
McEstimate mc_mean(const SampleSet& samples, F&& f) {
  const auto& x = samples.draws;
  if (x.empty()) throw std::invalid_argument("mc_mean: empty sample set");
  const std::size_t step = samples.antithetic ? 2 : 1;
  const std::size_t n = x.size() / step;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double y = f(x[step * i]);
    if (step == 2) y = 0.5 * (y + f(x[2 * i + 1]));
    const double delta = y - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (y - mean);
  }
  const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

template <class Rng>
double sample_large_jump(const JumpSideSampler& side, Rng& rng) {
  return side.inverse(rng.uniform() * side.inverse.top());
}

}  // namespace levy_smile
