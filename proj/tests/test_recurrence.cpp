#include <doctest.h>

#include <cmath>
#include <vector>

#include "srm/recurrence.hpp"
#include "srm/rng.hpp"
#include "srm/stats.hpp"

using namespace srm;

namespace {

// Distance on the circle R / Z.
double circle_distance(double x, double y) {
  const double d = std::abs(x - y);
  return std::min(d, 1.0 - d);
}

}  // namespace

TEST_CASE("frac maps into [0, 1)") {
  CHECK(frac(1.65) == doctest::Approx(0.65));
  CHECK(frac(-0.4) == doctest::Approx(0.6));
  CHECK(frac(-1e-20) == 0.0);
  CHECK(frac(3.0) == 0.0);
}

TEST_CASE("fractional map") {
  const UpdateMap m = fractional_map();
  CHECK(m.name == "fractional");
  CHECK(m.apply(0.25, 0.5) == 0.75);
  CHECK(std::abs(m.apply(0.75, 0.9) - 0.65) <= 1e-12);
  REQUIRE(m.inverse_apply);

  Xoshiro256 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const double x = uniform01(rng);
    const double y = uniform01(rng);
    const double next = m.apply(x, y);
    REQUIRE(next >= 0.0);
    REQUIRE(next < 1.0);
    CHECK(circle_distance((*m.inverse_apply)(next, y), x) <= 1e-12);
    CHECK(circle_distance(m.apply((*m.inverse_apply)(x, y), y), x) <= 1e-12);
  }
}

TEST_CASE("contraction map") {
  const UpdateMap m = contraction_map(0.5);
  CHECK(m.apply(1.0, 1.0) == 1.5);
  CHECK(m.apply(1.5, 1.0) == 1.75);
  CHECK(contraction_map(0.0).apply(3.7, 0.2) == 0.2);
  CHECK_FALSE(contraction_map(0.0).inverse_apply);
  CHECK_THROWS_AS((void)contraction_map(1.0), std::domain_error);
  CHECK_THROWS_AS((void)contraction_map(-1.5), std::domain_error);

  Xoshiro256 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = 10.0 * (uniform01(rng) - 0.5);
    const double y = uniform01(rng);
    CHECK(std::abs(m.apply((*m.inverse_apply)(x, y), y) - x) <= 1e-12);
  }
}

TEST_CASE("parse_map") {
  CHECK(parse_map("fractional").name == "fractional");
  CHECK(parse_map("contraction:a=0.5").name == "contraction:a=0.5");
  CHECK(parse_map("contraction:a=-0.25").apply(2.0, 0.0) == -0.5);
  CHECK_THROWS_AS((void)parse_map("bogus"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_map("contraction:a=2"), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_map("contraction:a=0.5x"), std::invalid_argument);
}

TEST_CASE("noise model is counter-based") {
  const NoiseModel model{NoiseLaw::uniform, 17};
  const NoiseWindow a = model.generate({-5, 10});
  const NoiseWindow b = model.generate({3, 20});
  for (Index i = 3; i <= 10; ++i) CHECK(a[i] == b[i]);
  for (double v : a.values()) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
  const NoiseWindow z = NoiseModel{NoiseLaw::normal, 17}.generate({0, 2000});
  double mean = 0.0;
  for (double v : z.values()) mean += v;
  CHECK(std::abs(mean / 2001.0) < 0.15);
}

TEST_CASE("iterate_forward") {
  const PathWindow p = iterate_forward(0.25, NoiseWindow(1, {0.5, 0.9}), fractional_map());
  CHECK(p.offset() == 0);
  REQUIRE(p.size() == 3);
  CHECK(p[0] == 0.25);
  CHECK(p[1] == 0.75);
  CHECK(std::abs(p[2] - 0.65) <= 1e-12);

  const PathWindow c = iterate_forward(1.0, NoiseWindow(1, {1.0, 1.0}), contraction_map(0.5));
  CHECK(c.values() == std::vector<double>{1.0, 1.5, 1.75});

  const PathWindow single = iterate_forward(0.3, NoiseWindow(8, {0.4}), contraction_map(0.5));
  CHECK(single.offset() == 7);
  CHECK(single[8] == contraction_map(0.5).apply(0.3, 0.4));
}

TEST_CASE("iterate_backward") {
  const UpdateMap m = fractional_map();
  CHECK(iterate_backward(0.75, NoiseWindow(1, {0.5}), m)[0] == 0.25);
  CHECK(iterate_backward(0.1, NoiseWindow(1, {0.5}), m)[0] == doctest::Approx(0.6));
  CHECK_THROWS_AS((void)iterate_backward(0.1, NoiseWindow(1, {0.5}), contraction_map(0.0)),
                  UnsupportedOperation);

  // Round trip on random windows: per-step drift <= 1e-12 (on the circle for
  // the fractional map).
  Xoshiro256 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const NoiseWindow noise = NoiseModel{NoiseLaw::uniform, rng()}.generate({1, 12});
    const double end = uniform01(rng);
    const PathWindow back = iterate_backward(end, noise, m);
    const PathWindow fwd = iterate_forward(back[0], noise, m);
    CHECK(fwd.offset() == back.offset());
    for (Index i = back.first_index(); i <= back.last_index(); ++i) {
      CHECK(circle_distance(fwd[i], back[i]) <= 1e-12 * 12);
    }
    const UpdateMap c = contraction_map(0.5);
    const PathWindow cb = iterate_backward(end, noise, c);
    const PathWindow cf = iterate_forward(cb[0], noise, c);
    for (Index i = cb.first_index(); i <= cb.last_index(); ++i) {
      CHECK(std::abs(cf[i] - cb[i]) <= 1e-12 * 12 * std::max(1.0, std::abs(cb[i])));
    }
  }
}

TEST_CASE("stationary_sampler placement") {
  const UpdateMap m = fractional_map();
  const NoiseWindow noise = NoiseModel{NoiseLaw::uniform, 1}.generate({-9, 10});
  const double eta = draw_initializer(77, {});

  SUBCASE("default placement starts at eta") {
    const PathWindow p = stationary_sampler(m, NoiseWindow(1, {0.5, 0.9}), 77);
    CHECK(p.offset() == 0);
    CHECK(p[0] == eta);
  }
  SUBCASE("window straddling the initializer uses both directions") {
    const PathWindow p = stationary_sampler(m, noise, 77, {0, {-10, 10}});
    CHECK(p[0] == eta);
    for (Index k = -9; k <= 10; ++k) {
      CHECK(m.apply(p[k - 1], noise[k]) == doctest::Approx(p[k]).epsilon(1e-12));
      CHECK(p[k] >= 0.0);
      CHECK(p[k] < 1.0);
    }
  }
  SUBCASE("window right of the initializer is a burned-in forward path") {
    const PathWindow full = stationary_sampler(m, noise, 77, {-10, {-10, 10}});
    const PathWindow tail = stationary_sampler(m, noise, 77, {-10, {4, 10}});
    for (Index k = 4; k <= 10; ++k) CHECK(tail[k] == full[k]);
  }
  SUBCASE("window left of the initializer is a pure backward path") {
    const PathWindow full = stationary_sampler(m, noise, 77, {10, {-10, 10}});
    const PathWindow head = stationary_sampler(m, noise, 77, {10, {-10, -3}});
    for (Index k = -10; k <= -3; ++k) CHECK(head[k] == full[k]);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS((void)stationary_sampler(contraction_map(0.0), noise, 1, {0, {-2, 3}}),
                    UnsupportedOperation);
    CHECK_THROWS_AS((void)stationary_sampler(m, noise, 1, {0, {-20, 3}}), std::domain_error);
    CHECK_THROWS_AS((void)stationary_sampler(m, noise, 1, {0, {0, 3}}, {0.0, 0.5}),
                    std::domain_error);
  }
  SUBCASE("contraction initializer law is configurable") {
    const PathWindow p =
        stationary_sampler(contraction_map(0.5), noise, 3, {0, {0, 4}}, {2.0, 3.0});
    CHECK(p[0] >= 2.0);
    CHECK(p[0] < 3.0);
  }
}

TEST_CASE("frac(eta + xi) is uniform for uniform eta, whatever xi") {
  for (double xi : {0.0, 0.123, 0.999}) {
    std::vector<double> xs;
    for (std::uint64_t r = 0; r < 20000; ++r) {
      xs.push_back(fractional_map().apply(draw_initializer(derive_seed(9, Stream::initializer, r), {}), xi));
    }
    CHECK(ks_uniform(xs) < ks_critical_value(0.01) / std::sqrt(20000.0));
  }
}
