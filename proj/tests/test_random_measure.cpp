#include <doctest.h>

#include <cmath>
#include <vector>

#include "srm/random_measure.hpp"
#include "srm/rng.hpp"

using namespace srm;

namespace {

ParticleMeasure two_particles(Index offset = 0) {
  return ParticleMeasure({PathWindow(offset, {0.2, 0.2}), PathWindow(offset, {0.8, 0.8})},
                         {0.5, 0.5});
}

ParticleMeasure random_measure(Xoshiro256& rng, std::size_t count, std::size_t len) {
  std::vector<double> flat(count * len);
  for (auto& x : flat) x = uniform01(rng);
  std::vector<double> w(count);
  double total = 0.0;
  for (auto& x : w) total += (x = uniform01(rng) + 0.01);
  for (auto& x : w) x /= total;
  return ParticleMeasure({-3, -3 + static_cast<Index>(len) - 1}, flat, w);
}

MeasureSampler point_mass(double value) {
  return [value](std::uint64_t) {
    return ParticleMeasure({PathWindow(0, {value, value})}, {1.0});
  };
}

}  // namespace

TEST_CASE("particle measure validation") {
  CHECK_THROWS_AS(ParticleMeasure(std::vector<PathWindow>{}, {}), std::domain_error);
  CHECK_THROWS_AS(ParticleMeasure({PathWindow(0, {1.0})}, {0.9}), std::domain_error);
  CHECK_THROWS_AS(ParticleMeasure({PathWindow(0, {1.0}), PathWindow(1, {1.0})}, {0.5, 0.5}),
                  std::domain_error);
  CHECK_THROWS_AS(ParticleMeasure({PathWindow(0, {1.0}), PathWindow(0, {1.0})}, {1.5, -0.5}),
                  std::domain_error);
  CHECK_THROWS_AS(ParticleMeasure(IndexRange{0, 2}, {1.0, 2.0}), std::domain_error);
  const ParticleMeasure uniform(IndexRange{0, 1}, {1, 2, 3, 4, 5, 6});
  CHECK(uniform.size() == 3);
  CHECK(uniform.weight(2) == doctest::Approx(1.0 / 3.0));
  CHECK(uniform.particle(1)[1] == 4.0);
}

TEST_CASE("integrate") {
  const auto mu = two_particles();
  CHECK(integrate(mu, [](const SequenceView&) { return 1.0; }) == std::complex<double>(1.0));
  const ParticleMeasure point({PathWindow(0, {0.3, 0.7})}, {1.0});
  CHECK(integrate(point, [](const SequenceView& u) { return u[1]; }).real() == 0.7);
  CHECK(integrate(mu, [](const SequenceView& u) { return u[0] < 0.5; }).real() == 0.5);
}

TEST_CASE("cylinder_prob") {
  const auto mu = two_particles();
  CHECK(cylinder_prob(mu, CylinderSet(0, {{0.0, 1.0}, {0.0, 1.0}})) == 1.0);
  CHECK(cylinder_prob(mu, CylinderSet(0, {{0.3, 0.7}})) == 0.0);
  CHECK(cylinder_prob(mu, CylinderSet(0, {{0.0, 0.5}})) == 0.5);
  CHECK_THROWS_AS((void)cylinder_prob(mu, CylinderSet(1, {{0, 1}, {0, 1}})), std::domain_error);
  CHECK_THROWS_AS((void)cylinder_prob(mu, CylinderSet(-1, {{0, 1}})), std::domain_error);
  CHECK_THROWS_AS(CylinderSet(0, {}), std::domain_error);
  CHECK_THROWS_AS(CylinderSet(0, {{0.5, 0.5}}), std::domain_error);
  // Half-open: the left endpoint is in, the right is out.
  CHECK(cylinder_prob(mu, CylinderSet(0, {{0.2, 0.8}})) == 0.5);
}

TEST_CASE("shift_measure") {
  const auto mu = two_particles();
  CHECK(shift_measure(mu, 0) == mu);
  CHECK(shift_measure(shift_measure(mu, 2), -5) == shift_measure(mu, -3));
  // u_1 takes the values {0.2, 0.8}; after the 1-shift that is coordinate 0.
  const auto shifted = shift_measure(mu, 1);
  const CylinderSet delta(0, {{0.0, 0.5}});
  CHECK(cylinder_prob(shifted, delta) == 0.5);
  CHECK(cylinder_prob(shifted, delta) == cylinder_prob(mu, delta.moved_to(1)));
}

TEST_CASE("measure invariants on random measures") {
  Xoshiro256 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const auto mu = random_measure(rng, 1 + rng() % 40, 1 + rng() % 6);
    CHECK(std::abs(integrate(mu, [](const SequenceView&) { return 1.0; }) - 1.0) <= 1e-12);

    const double amp = 3.0 * uniform01(rng);
    const double freq = 20.0 * uniform01(rng);
    const auto f = [&](const SequenceView& u) {
      return amp * std::polar(1.0, freq * u[u.first_index()]);
    };
    CHECK(std::abs(integrate(mu, f)) <= amp + 1e-12);

    const Index t = static_cast<Index>(rng() % 7) - 3;
    const auto shifted = shift_measure(mu, t);
    CHECK(shifted.weights() == mu.weights());
    const Index probe = shifted.window().lo;
    const auto g = [&](const SequenceView& u) { return std::sin(5.0 * u[probe]); };
    const auto g_after_shift = [&](const SequenceView& u) {
      return std::sin(5.0 * u[probe + t]);
    };
    CHECK(integrate(shifted, g) == integrate(mu, g_after_shift));

    // Tiling [0,1) x [0,1) into four rectangles at a random cut point.
    if (mu.path_length() >= 2) {
      const double c1 = uniform01(rng);
      const double c2 = uniform01(rng);
      const Index s = mu.window().lo;
      const double whole = cylinder_prob(mu, CylinderSet(s, {{0, 1}, {0, 1}}));
      const double parts = cylinder_prob(mu, CylinderSet(s, {{0, c1}, {0, c2}})) +
                           cylinder_prob(mu, CylinderSet(s, {{c1, 1}, {0, c2}})) +
                           cylinder_prob(mu, CylinderSet(s, {{0, c1}, {c2, 1}})) +
                           cylinder_prob(mu, CylinderSet(s, {{c1, 1}, {c2, 1}}));
      CHECK(std::abs(whole - parts) <= 1e-12);
      CHECK(cylinder_prob(mu, CylinderSet(s, {{0, c1 * 0.5}})) <=
            cylinder_prob(mu, CylinderSet(s, {{0, c1}})));
    }
  }
}

TEST_CASE("distributions_equal") {
  const std::vector<CylinderSet> deltas{CylinderSet(0, {{0.0, 0.5}})};

  SUBCASE("identical samplers with identical seeds") {
    const MeasureSampler s = [](std::uint64_t seed) {
      Xoshiro256 rng(seed);
      std::vector<double> flat(20);
      for (auto& x : flat) x = uniform01(rng);
      return ParticleMeasure(IndexRange{0, 1}, flat);
    };
    EqualityOptions opts;
    opts.replicas = 200;
    opts.seed_a = opts.seed_b = 5;
    const auto r = distributions_equal(s, s, deltas, opts);
    CHECK(r.statistic == 0.0);
    CHECK(r.passed);
    CHECK(r.threshold == doctest::Approx(ks_critical_value(0.01) * std::sqrt(2.0 / 200)));
  }

  SUBCASE("point masses at 0 and 1 are told apart") {
    EqualityOptions opts;
    opts.replicas = 100;
    const auto r = distributions_equal(point_mass(0.0), point_mass(1.0), deltas, opts);
    CHECK(r.statistic == 1.0);
    CHECK_FALSE(r.passed);
  }

  SUBCASE("degenerate identical samples pass") {
    EqualityOptions opts;
    opts.replicas = 100;
    const auto r = distributions_equal(point_mass(0.3), point_mass(0.3), deltas, opts);
    CHECK(r.statistic == 0.0);
    CHECK(r.passed);
  }

  SUBCASE("preconditions") {
    EqualityOptions opts;
    opts.replicas = 0;
    CHECK_THROWS_AS((void)distributions_equal(point_mass(0), point_mass(0), deltas, opts),
                    std::domain_error);
    opts.replicas = 99;
    CHECK_THROWS_AS((void)distributions_equal(point_mass(0), point_mass(0), deltas, opts),
                    std::domain_error);
    opts.replicas = 100;
    CHECK_THROWS_AS((void)distributions_equal(point_mass(0), point_mass(0), {}, opts),
                    std::domain_error);
    opts.alpha = 1.0;
    CHECK_THROWS_AS((void)distributions_equal(point_mass(0), point_mass(0), deltas, opts),
                    std::domain_error);
  }
}
