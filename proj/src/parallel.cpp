#include "levy_smile/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace levy_smile {

int worker_count() {
  int n = omp_get_max_threads();
  if (const char* cap = std::getenv("LEVY_SMILE_THREADS")) {
    try {
      const int c = std::stoi(cap);
      if (c > 0) n = std::min(n, c);
    } catch (const std::exception&) {
      // unparsable cap: keep the OpenMP default
    }
  }
  return std::max(n, 1);
}

}  // namespace levy_smile
