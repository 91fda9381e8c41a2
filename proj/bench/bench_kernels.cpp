#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "levy_smile/fourier_pricer.hpp"
#include "levy_smile/mc_oracle.hpp"
#include "levy_smile/parallel.hpp"

namespace ls = levy_smile;

namespace {

template <class F>
double seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-24s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", name, serial, parallel,
              serial / parallel, identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t paths = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400000;
  std::printf("workers: %d\n", ls::worker_count());

  ls::TemperedStableParams p;
  p.c_plus = p.c_minus = 1.0;
  p.lambda_plus = p.lambda_minus = 3.0;
  p.alpha_plus = p.alpha_minus = 1.5;
  const ls::LevyModel model(p);

  ls::SimConfig sim;
  sim.n_paths = paths;
  ls::SampleSet a, b;
  const double ts = seconds([&] { a = ls::simulate_increments_serial(model, 0.01, sim); });
  const double tp = seconds([&] { b = ls::simulate_increments(model, 0.01, sim); });
  report("simulate_increments", ts, tp, a.draws == b.draws);

  const std::size_t n = 48;
  auto price = [&](std::size_t i) { return ls::otm_forward_price(model, 0.01 + 0.005 * static_cast<double>(i), 1e-3); };
  std::vector<double> x, y;
  const double gs = seconds([&] { x = ls::serial_map(n, price); });
  const double gp = seconds([&] { y = ls::parallel_map(n, price); });
  report("price grid", gs, gp, x == y);
  return a.draws == b.draws && x == y ? 0 : 1;
}
