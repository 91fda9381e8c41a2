#pragma once

#include "levy_smile/levy_core.hpp"
#include "oracles/oracles.hpp"

namespace fixtures {

inline levy_smile::TemperedStableParams tempered(double c, double lambda_plus, double lambda_minus, double alpha,
                                                 double sigma = 0.0, double r = 0.0) {
  levy_smile::TemperedStableParams p;
  p.c_plus = p.c_minus = c;
  p.lambda_plus = lambda_plus;
  p.lambda_minus = lambda_minus;
  p.alpha_plus = p.alpha_minus = alpha;
  p.sigma = sigma;
  p.r = r;
  return p;
}

inline levy_smile::TemperedStableParams diffusion(double sigma, double r = 0.0) {
  levy_smile::TemperedStableParams p;
  p.sigma = sigma;
  p.r = r;
  return p;
}

// c = 1, lambda = 3, alpha = 1.5 on both sides.
inline levy_smile::TemperedStableParams reference_model() { return tempered(1.0, 3.0, 3.0, 1.5); }

inline levy_smile::TemperedStableParams table_row(int i) {
  switch (i) {
    case 1:
      return tempered(16.97, 29.97, 7.08, 0.6442, 0.0, 0.06);
    case 2:
      return tempered(0.42, 191.2, 4.37, 1.0102, 0.0, 0.06);
    default:
      return tempered(1.0, 9.2, 8.8, 1.8, 0.0, 0.1);
  }
}

inline oracle::Model to_oracle(const levy_smile::TemperedStableParams& p) {
  return {p.c_plus, p.c_minus, p.lambda_plus, p.lambda_minus, p.alpha_plus, p.alpha_minus, p.sigma, p.r};
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fixtures
