#include <doctest.h>

#include <vector>

#include "srm/diagnostics.hpp"
#include "srm/measure_solution.hpp"
#include "srm/parallel.hpp"

using namespace srm;

// The OpenMP kernels must agree bit-for-bit with the serial reference.

TEST_CASE("conditional_measure: parallel equals serial") {
  MeasureBuilder b;
  b.map = fractional_map();
  b.particle_count = 3000;
  b.window = {-5, 20};
  b.init_index = 0;
  b.init_seed_stream = 77;
  const auto noise = NoiseModel{NoiseLaw::uniform, 5}.generate(b.required_noise());
  for (int threads : {1, 2, 4}) {
    set_thread_count(threads);
    CHECK(conditional_measure(b, noise, Exec::parallel) ==
          conditional_measure(b, noise, Exec::serial));
  }
}

TEST_CASE("integrals and statistics: parallel equals serial") {
  DiagnosticsConfig c;
  c.sample_size = 5000;
  c.particle_count = 2000;
  c.noise_paths = 3;
  c.window = {0, 8};

  DiagnosticsConfig serial = c;
  serial.exec = Exec::serial;
  for (int threads : {1, 3}) {
    set_thread_count(threads);
    CHECK(tsirelson_statistic(c, 8).statistic == tsirelson_statistic(serial, 8).statistic);
    CHECK(conditional_char_values(c, 8) == conditional_char_values(serial, 8));
    CHECK(rotation_invariance_demo(c, 0.7).statistic ==
          rotation_invariance_demo(serial, 0.7).statistic);
  }
}

TEST_CASE("exceptions inside parallel loops reach the caller") {
  CHECK_THROWS_AS(for_each_index(Exec::parallel, 100,
                                 [](std::size_t i) {
                                   if (i == 57) throw std::domain_error("boom");
                                 }),
                  std::domain_error);
}
