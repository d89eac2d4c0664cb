#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "srm/rng.hpp"
#include "srm/stats.hpp"

using namespace srm;

TEST_CASE("pairwise_sum matches exact integer sums and is order-fixed") {
  std::vector<double> xs(1001);
  std::iota(xs.begin(), xs.end(), 0.0);
  CHECK(pairwise_sum(xs) == 500500.0);
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  std::vector<std::complex<double>> zs(17, {1.0, -2.0});
  CHECK(pairwise_sum(std::span<const std::complex<double>>(zs)) ==
        std::complex<double>(17.0, -34.0));
}

TEST_CASE("KS critical values") {
  CHECK(ks_critical_value(0.01) == doctest::Approx(1.628).epsilon(1e-3));
  CHECK(ks_critical_value(0.05) == doctest::Approx(1.358).epsilon(1e-3));
  CHECK(ks_two_sample_threshold(0.01, 100, 100) ==
        doctest::Approx(ks_critical_value(0.01) * std::sqrt(0.02)));
  CHECK_THROWS_AS((void)ks_critical_value(0.0), std::domain_error);
  CHECK_THROWS_AS((void)ks_critical_value(1.0), std::domain_error);
}

TEST_CASE("two-sample KS on hand-checked samples") {
  CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_two_sample({0, 0, 0}, {1, 1}) == 1.0);
  // F_a jumps to 1/2 at 1 and 1 at 2; F_b is 0 until 1.5, 1 after.
  CHECK(ks_two_sample({1, 2}, {1.5}) == doctest::Approx(0.5));
  // Ties across samples step together.
  CHECK(ks_two_sample({1, 1, 2, 2}, {1, 2}) == 0.0);
  CHECK_THROWS_AS((void)ks_two_sample({}, {1.0}), std::domain_error);
}

TEST_CASE("one-sample KS against the uniform law") {
  CHECK(ks_uniform({0.5}) == doctest::Approx(0.5));
  // Midpoints of n equal cells have D = 1 / (2n).
  std::vector<double> mids;
  for (int i = 0; i < 10; ++i) mids.push_back((i + 0.5) / 10.0);
  CHECK(ks_uniform(mids) == doctest::Approx(0.05));
  CHECK(normal_cdf(0.0, 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.96, 0.0, 1.0) == doctest::Approx(0.9750021).epsilon(1e-6));
}

TEST_CASE("rng streams are reproducible, distinct and in range") {
  Xoshiro256 a(7);
  Xoshiro256 b(7);
  for (int i = 0; i < 100; ++i) CHECK(a() == b());

  std::set<std::uint64_t> seeds;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    seeds.insert(derive_seed(42, Stream::noise, i));
    seeds.insert(derive_seed(42, Stream::initializer, i));
  }
  CHECK(seeds.size() == 2000);

  Xoshiro256 r(1);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(r);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  CHECK(lo < 1e-3);
  CHECK(hi > 1.0 - 1e-3);
}
