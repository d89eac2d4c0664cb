#include "srm/recurrence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "srm/rng.hpp"

namespace srm {

double frac(double x) {
  const double r = x - std::floor(x);
  return r < 1.0 ? r : 0.0;
}

UpdateMap fractional_map() {
  UpdateMap map;
  map.name = "fractional";
  map.apply = [](double x, double y) { return frac(x + y); };
  map.inverse_apply = [](double x, double y) { return frac(x - y); };
  map.circle_valued = true;
  return map;
}

UpdateMap contraction_map(double a) {
  if (!(std::abs(a) < 1.0)) {
    throw std::domain_error("contraction_map: |a| must be < 1");
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, a);
  UpdateMap map;
  map.name = "contraction:a=" + std::string(buf, res.ptr);
  map.apply = [a](double x, double y) { return a * x + y; };
  if (a != 0.0) {
    map.inverse_apply = [a](double x, double y) { return (x - y) / a; };
  }
  return map;
}

UpdateMap parse_map(std::string_view spec) {
  if (spec == "fractional") return fractional_map();
  constexpr std::string_view prefix = "contraction:a=";
  if (spec.starts_with(prefix)) {
    const std::string_view num = spec.substr(prefix.size());
    double a = 0.0;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), a);
    if (res.ec != std::errc{} || res.ptr != num.data() + num.size()) {
      throw std::invalid_argument("bad contraction coefficient: " + std::string(num));
    }
    if (!(std::abs(a) < 1.0)) {
      throw std::invalid_argument("contraction coefficient must satisfy |a| < 1");
    }
    return contraction_map(a);
  }
  throw std::invalid_argument("unknown map: " + std::string(spec));
}

double NoiseModel::value_at(Index i) const {
  Xoshiro256 rng(derive_seed(seed, Stream::noise, static_cast<std::uint64_t>(i)));
  return law == NoiseLaw::uniform ? uniform01(rng) : standard_normal(rng);
}

NoiseWindow NoiseModel::generate(IndexRange range) const {
  if (range.hi < range.lo) throw std::domain_error("noise range is empty");
  std::vector<double> v;
  v.reserve(range.length());
  for (Index i = range.lo; i <= range.hi; ++i) v.push_back(value_at(i));
  return NoiseWindow(range.lo, std::move(v));
}

std::string_view to_string(NoiseLaw law) {
  return law == NoiseLaw::uniform ? "uniform" : "normal";
}

PathWindow iterate_forward(double x0, const NoiseWindow& noise,
                           const UpdateMap& map) {
  std::vector<double> out;
  out.reserve(noise.size() + 1);
  out.push_back(x0);
  for (double xi : noise.values()) out.push_back(map.apply(out.back(), xi));
  return PathWindow(noise.offset() - 1, std::move(out));
}

PathWindow iterate_backward(double xn, const NoiseWindow& noise,
                            const UpdateMap& map) {
  if (!map.inverse_apply) {
    throw UnsupportedOperation("iterate_backward: map '" + map.name +
                               "' has no inverse");
  }
  const auto& inv = *map.inverse_apply;
  std::vector<double> out(noise.size() + 1);
  out.back() = xn;
  for (std::size_t k = noise.size(); k > 0; --k) {
    out[k - 1] = inv(out[k], noise.values()[k - 1]);
  }
  return PathWindow(noise.offset() - 1, std::move(out));
}

double draw_initializer(std::uint64_t init_seed, InitializerLaw law) {
  if (!(law.lo < law.hi)) throw std::domain_error("initializer law: need lo < hi");
  Xoshiro256 rng(init_seed);
  const double u = uniform01(rng);
  if (law.lo == 0.0 && law.hi == 1.0) return u;
  return law.lo + (law.hi - law.lo) * u;
}

IndexRange required_noise(const Placement& p) {
  return {std::min(p.window.lo, p.init_index) + 1,
          std::max(p.window.hi, p.init_index)};
}

void fill_trajectory(const UpdateMap& map, const SequenceView& noise, double eta,
                     const Placement& placement, std::span<double> out) {
  const IndexRange w = placement.window;
  const Index init = placement.init_index;
  if (w.hi < w.lo) throw std::domain_error("sampler window is empty");
  if (out.size() != w.length()) throw std::domain_error("output span has wrong length");
  const IndexRange need = required_noise(placement);
  if (need.lo <= need.hi && (!noise.covers(need.lo) || !noise.covers(need.hi))) {
    throw std::domain_error("noise window does not cover the sampler's transitions");
  }
  if (w.lo < init && !map.inverse_apply) {
    throw UnsupportedOperation("window extends left of the initializer but map '" +
                               map.name + "' has no inverse");
  }

  const auto slot = [&](Index i) -> double& {
    return out[static_cast<std::size_t>(i - w.lo)];
  };

  if (init < w.lo) {
    // Burn in forward from eta, then record the window.
    double x = eta;
    for (Index k = init + 1; k <= w.hi; ++k) {
      x = map.apply(x, noise[k]);
      if (k >= w.lo) slot(k) = x;
    }
    return;
  }
  if (init > w.hi) {
    const auto& inv = *map.inverse_apply;
    double x = eta;
    for (Index k = init; k > w.lo; --k) {
      x = inv(x, noise[k]);
      if (k - 1 <= w.hi) slot(k - 1) = x;
    }
    return;
  }
  slot(init) = eta;
  for (Index k = init + 1; k <= w.hi; ++k) slot(k) = map.apply(slot(k - 1), noise[k]);
  if (w.lo < init) {
    const auto& inv = *map.inverse_apply;
    for (Index k = init; k > w.lo; --k) slot(k - 1) = inv(slot(k), noise[k]);
  }
}

PathWindow stationary_sampler(const UpdateMap& map, const NoiseWindow& noise,
                              std::uint64_t init_seed) {
  const Placement placement{noise.offset() - 1,
                            {noise.offset() - 1, noise.last_index()}};
  return stationary_sampler(map, noise, init_seed, placement);
}

PathWindow stationary_sampler(const UpdateMap& map, const NoiseWindow& noise,
                              std::uint64_t init_seed, const Placement& placement,
                              InitializerLaw law) {
  if (map.circle_valued && law != InitializerLaw{}) {
    throw std::domain_error("circle-valued maps require the uniform [0, 1) initializer");
  }
  std::vector<double> out(placement.window.length());
  fill_trajectory(map, noise, draw_initializer(init_seed, law), placement, out);
  return PathWindow(placement.window.lo, std::move(out));
}

}  // namespace srm
