#include <doctest.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "levy_smile/parallel.hpp"

using namespace levy_smile;

TEST_CASE("results are ordered by index") {
  omp_set_num_threads(4);
  const auto out = parallel_map(1000, [](std::size_t i) { return static_cast<double>(i) * 0.5; });
  REQUIRE(out.size() == 1000);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<double>(i) * 0.5);
  CHECK(out == serial_map(1000, [](std::size_t i) { return static_cast<double>(i) * 0.5; }));
  CHECK(parallel_map(0, [](std::size_t i) { return i; }).empty());
}

TEST_CASE("the lowest failing index is rethrown") {
  omp_set_num_threads(4);
  try {
    parallel_map(100, [](std::size_t i) -> int {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}

TEST_CASE("thread cap from the environment") {
  omp_set_num_threads(8);
  setenv("LEVY_SMILE_THREADS", "2", 1);
  CHECK(worker_count() == 2);
  setenv("LEVY_SMILE_THREADS", "64", 1);
  CHECK(worker_count() == 8);
  setenv("LEVY_SMILE_THREADS", "junk", 1);
  CHECK(worker_count() == 8);
  unsetenv("LEVY_SMILE_THREADS");
  CHECK(worker_count() == 8);
}
