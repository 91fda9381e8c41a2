#include "levy_smile/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "levy_smile/errors.hpp"

namespace levy_smile {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  cdouble value;
  double error;
  bool at_floor;  // error is the rounding floor; splitting cannot reduce it
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod15(const ComplexIntegrand& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<cdouble, 15> fv;
  fv[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv[j] = f(center - dx);
    fv[14 - j] = f(center + dx);
  }
  cdouble kron = fv[7] * kWgk[7];
  cdouble gauss = fv[7] * kWg[3];
  double resabs = std::abs(fv[7]) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const cdouble pair = fv[j] + fv[14 - j];
    kron += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  const cdouble mean = 0.5 * kron;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

  const double ahalf = std::abs(half);
  resabs *= ahalf;
  resasc *= ahalf;
  double err = std::abs((kron - gauss) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  bool at_floor = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps) && 50.0 * eps * resabs >= err) {
    err = 50.0 * eps * resabs;
    at_floor = true;
  }
  return {a, b, kron * half, err, at_floor};
}

}  // namespace

IntegrationResult adaptive_integrate(const ComplexIntegrand& f, std::span<const double> breakpoints,
                                     const QuadratureConfig& cfg) {
  if (breakpoints.size() < 2) throw InvalidInput("need at least two breakpoints");
  if (!(cfg.rel_tol >= 0.0) || !(cfg.abs_tol >= 0.0) || (cfg.rel_tol == 0.0 && cfg.abs_tol == 0.0)) {
    throw InvalidInput("quadrature tolerances must be non-negative and not both zero");
  }
  std::priority_queue<Panel> heap;
  std::vector<Panel> settled;
  IntegrationResult out;
  cdouble total{0.0, 0.0};
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) throw InvalidInput("breakpoints must increase strictly");
    Panel p = kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += 15;
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }

  auto tolerance = [&] { return std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol); };
  while (total_err > tolerance() && !heap.empty()) {
    if (heap.top().at_floor) {
      settled.push_back(heap.top());
      heap.pop();
      continue;
    }
    if (out.subdivisions >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "subdivision cap " << cfg.max_subdivisions << " reached with error estimate " << std::scientific
          << std::setprecision(3) << total_err;
      throw QuadratureNoConvergence(msg.str());
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureNoConvergence("panel width reached machine resolution");
    }
    Panel left = kronrod15(f, worst.a, mid);
    Panel right = kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    ++out.subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the incremental updates.
  total = {0.0, 0.0};
  total_err = 0.0;
  std::vector<Panel> panels = std::move(settled);
  panels.reserve(panels.size() + heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    total += p.value;
    total_err += p.error;
  }
  out.value = total;
  out.abs_error = total_err;
  return out;
}

IntegrationResult adaptive_integrate(const ComplexIntegrand& f, Interval domain, const QuadratureConfig& cfg) {
  if (!(domain.b > domain.a)) throw InvalidInput("empty integration interval");
  const std::array<double, 2> bp{domain.a, domain.b};
  return adaptive_integrate(f, std::span<const double>(bp), cfg);
}

IntegrationResult adaptive_integrate(const ComplexIntegrand& f, RealLine, const QuadratureConfig& cfg) {
  const double tail_target = 0.1 * std::max(cfg.abs_tol, std::numeric_limits<double>::min());
  double upper = 1.0;
  double tail = 0.0;
  for (int i = 0;; ++i) {
    tail = (std::abs(f(upper)) + std::abs(f(-upper))) * upper;
    if (tail <= tail_target) break;
    if (i > 60) throw QuadratureNoConvergence("integrand does not decay on the real line");
    upper *= 2.0;
  }
  const auto half = oscillation_breakpoints(upper, 0.0);
  std::vector<double> bp;
  bp.reserve(2 * half.size());
  for (auto it = half.rbegin(); it != half.rend(); ++it) {
    if (*it > 0.0) bp.push_back(-*it);
  }
  bp.insert(bp.end(), half.begin(), half.end());
  auto res = adaptive_integrate(f, std::span<const double>(bp), cfg);
  res.abs_error += tail;
  return res;
}

std::vector<double> oscillation_breakpoints(double upper, double omega, std::size_t max_panels) {
  if (!(upper > 0.0)) throw InvalidInput("upper limit must be positive");
  std::vector<double> dyadic{0.0};
  double edge = std::min(1.0, upper);
  dyadic.push_back(edge);
  while (edge < upper) {
    edge = std::min(2.0 * edge, upper);
    dyadic.push_back(edge);
  }
  const double period = omega > 0.0 ? 2.0 * std::numbers::pi / omega : std::numeric_limits<double>::infinity();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < dyadic.size(); ++i) total += std::ceil((dyadic[i + 1] - dyadic[i]) / period);
  // Each dyadic panel may round up by one piece, so reserve that many from the budget.
  const double levels = static_cast<double>(dyadic.size() - 1);
  const double budget = std::max(1.0, static_cast<double>(max_panels) - levels);
  const double coarsen = std::max(1.0, total / budget);

  std::vector<double> out{0.0};
  for (std::size_t i = 0; i + 1 < dyadic.size(); ++i) {
    const double a = dyadic[i];
    const double b = dyadic[i + 1];
    const auto pieces = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / (period * coarsen))));
    for (std::size_t j = 1; j < pieces; ++j) out.push_back(a + (b - a) * static_cast<double>(j) / pieces);
    out.push_back(b);
  }
  return out;
}

}  // namespace levy_smile
