#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace levy_smile {

using cdouble = std::complex<double>;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  // Bisections allowed on top of the initial panel partition.
  int max_subdivisions = 2000;
  // Contour shift R for the Fourier pricers; empty selects the default rule.
  std::optional<double> damping;
};

struct IntegrationResult {
  cdouble value;
  double abs_error = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
};

using ComplexIntegrand = std::function<cdouble(double)>;

struct Interval {
  double a;
  double b;
};
struct RealLine {};

// Globally adaptive 15-point Kronrod / 7-point Gauss scheme: the panel with the
// largest error estimate is bisected until the summed estimate is below
// max(rel_tol |I|, abs_tol). Panels whose estimate sits at the rounding floor
// 50 eps int|f| are kept as they are; if only those remain the result comes back
// with that (larger) abs_error instead of refining forever. `breakpoints`
// (sorted, first and last are the limits) sets the initial partition. Throws
// QuadratureNoConvergence when the subdivision cap is hit.
IntegrationResult adaptive_integrate(const ComplexIntegrand& f, std::span<const double> breakpoints,
                                     const QuadratureConfig& cfg);
IntegrationResult adaptive_integrate(const ComplexIntegrand& f, Interval domain, const QuadratureConfig& cfg);

// Whole real line by symmetric truncation at +-U, U doubled until the tail
// estimate (|f(U)| + |f(-U)|) U drops below abs_tol / 10. Valid for integrands
// decaying at least like 1/u^2; the tail estimate is added to abs_error.
IntegrationResult adaptive_integrate(const ComplexIntegrand& f, RealLine domain, const QuadratureConfig& cfg);

// Partition of [0, upper] into dyadic panels [2^j, 2^{j+1}], each cut further
// so no panel spans more than one period of exp(i omega u). Capped at
// max_panels by coarsening.
std::vector<double> oscillation_breakpoints(double upper, double omega, std::size_t max_panels = 200000);

}  // namespace levy_smile
