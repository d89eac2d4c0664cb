#include "srm/measure_solution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "srm/rng.hpp"
#include "srm/stats.hpp"

namespace srm {

namespace {

void check_lhs_window(const ParticleMeasure& mu, const CharSpec& spec) {
  spec.validate();
  const auto w = mu.window();
  if (!w.contains(spec.n + 1) || !w.contains(spec.last_index())) {
    throw std::domain_error("char spec indices outside particle window");
  }
}

void check_rhs_window(const ParticleMeasure& mu, const NoiseWindow& noise,
                      const CharSpec& spec) {
  spec.validate();
  const auto w = mu.window();
  if (!w.contains(spec.n + 1) || !w.contains(spec.n + spec.m)) {
    throw std::domain_error("char spec indices outside particle window");
  }
  if (!noise.covers(spec.last_index())) {
    throw std::domain_error("noise does not cover index n + m + 1");
  }
}

double lambda_phase(const SequenceView& u, const CharSpec& spec) {
  double phase = 0.0;
  for (int k = 1; k <= spec.m; ++k) {
    phase += spec.lambdas[static_cast<std::size_t>(k - 1)] * u[spec.n + k];
  }
  return phase;
}

}  // namespace

void CharSpec::validate() const {
  if (m < 1) throw std::domain_error("char spec: m must be >= 1");
  if (lambdas.size() != static_cast<std::size_t>(m)) {
    throw std::domain_error("char spec: need exactly m lambdas");
  }
}

void MeasureBuilder::validate() const {
  if (particle_count < 1) throw std::domain_error("builder: particle_count must be >= 1");
  if (!(window.lo < window.hi)) throw std::domain_error("builder: window needs lo < hi");
  if (!map.apply) throw std::domain_error("builder: map has no update rule");
  if (map.circle_valued && init_law != InitializerLaw{}) {
    throw std::domain_error("builder: circle-valued maps need the uniform [0, 1) initializer");
  }
}

MeasureBuilder MeasureBuilder::shifted(Index t) const {
  MeasureBuilder out = *this;
  out.window = {window.lo + t, window.hi + t};
  out.init_index = init_index + t;
  return out;
}

ParticleMeasure conditional_measure(const MeasureBuilder& builder,
                                    const NoiseWindow& noise, Exec exec) {
  builder.validate();
  const IndexRange need = builder.required_noise();
  if (need.lo <= need.hi && (!noise.covers(need.lo) || !noise.covers(need.hi))) {
    throw std::domain_error("conditional_measure: noise does not cover the window");
  }
  const std::size_t len = builder.window.length();
  std::vector<double> flat(builder.particle_count * len);
  const Placement placement = builder.placement();
  const SequenceView xi = noise.view();
  for_each_index(exec, builder.particle_count, [&](std::size_t j) {
    const double eta = draw_initializer(
        derive_seed(builder.init_seed_stream, Stream::initializer, j), builder.init_law);
    fill_trajectory(builder.map, xi, eta, placement,
                    std::span(flat).subspan(j * len, len));
  });
  return ParticleMeasure(builder.window, std::move(flat));
}

std::complex<double> hopf_lhs(const ParticleMeasure& mu, const CharSpec& spec,
                              Exec exec) {
  check_lhs_window(mu, spec);
  return integrate(
      mu,
      [&](const SequenceView& u) {
        return std::polar(1.0, lambda_phase(u, spec) + spec.rho * u[spec.last_index()]);
      },
      exec);
}

std::complex<double> hopf_rhs(const ParticleMeasure& mu, const NoiseWindow& noise,
                              const CharSpec& spec, const UpdateMap& map,
                              Exec exec) {
  check_rhs_window(mu, noise, spec);
  const double xi_next = noise[spec.last_index()];
  return integrate(
      mu,
      [&](const SequenceView& u) {
        const double next = map.apply(u[spec.n + spec.m], xi_next);
        return std::polar(1.0, lambda_phase(u, spec)) * std::polar(1.0, spec.rho * next);
      },
      exec);
}

double hopf_residual(const ParticleMeasure& mu, const NoiseWindow& noise,
                     const CharSpec& spec, const UpdateMap& map, Exec exec) {
  return evaluate_hopf(mu, noise, spec, map, exec).residual;
}

ResidualReport evaluate_hopf(const ParticleMeasure& mu, const NoiseWindow& noise,
                             const CharSpec& spec, const UpdateMap& map, Exec exec) {
  ResidualReport r{spec, hopf_lhs(mu, spec, exec), hopf_rhs(mu, noise, spec, map, exec), 0.0};
  r.residual = std::abs(r.lhs - r.rhs);
  return r;
}

std::vector<CharSpec> hopf_spec_grid(IndexRange window) {
  const Index span = window.hi - window.lo;  // largest admissible m
  if (span < 1) throw std::domain_error("hopf_spec_grid: window too short");
  std::vector<int> ms{1, 2, static_cast<int>(span)};
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::erase_if(ms, [&](int m) { return m > span; });

  constexpr double two_pi = 2.0 * std::numbers::pi;
  const std::vector<double> rhos{0.0, 1.0, two_pi, -3.7};
  std::vector<CharSpec> grid;
  for (int m : ms) {
    const auto um = static_cast<std::size_t>(m);
    std::vector<std::vector<double>> patterns;
    patterns.emplace_back(um, 1.0);
    std::vector<double> alternating(um);
    for (std::size_t k = 0; k < um; ++k) alternating[k] = (k % 2 == 0) ? 1.5 : -0.5;
    patterns.push_back(std::move(alternating));
    std::vector<double> resonant(um, 0.0);
    resonant.back() = -two_pi;
    patterns.push_back(std::move(resonant));

    for (Index n : {window.lo - 1, window.hi - m - 1}) {
      for (const auto& lambdas : patterns) {
        for (double rho : rhos) grid.push_back(CharSpec{n, m, lambdas, rho});
      }
    }
  }
  return grid;
}

std::vector<CharSpec> random_char_specs(IndexRange window, std::size_t count,
                                        std::uint64_t seed) {
  const Index span = window.hi - window.lo;
  if (span < 1) throw std::domain_error("random_char_specs: window too short");
  Xoshiro256 rng(derive_seed(seed, Stream::spec, 0));
  const auto uniform_in = [&](double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
  };
  const auto index_in = [&](Index lo, Index hi) {
    return lo + static_cast<Index>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  std::vector<CharSpec> specs;
  specs.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    CharSpec spec;
    spec.m = static_cast<int>(index_in(1, span));
    spec.n = index_in(window.lo - 1, window.hi - spec.m - 1);
    spec.lambdas.resize(static_cast<std::size_t>(spec.m));
    for (auto& l : spec.lambdas) l = uniform_in(-10.0, 10.0);
    spec.rho = uniform_in(-10.0, 10.0);
    specs.push_back(std::move(spec));
  }
  return specs;
}

ParticleMeasure shuffle_coordinate(const ParticleMeasure& mu, Index i,
                                   std::uint64_t seed) {
  std::vector<double> column = mu.coordinate(i);
  Xoshiro256 rng(derive_seed(seed, Stream::shuffle, 0));
  std::shuffle(column.begin(), column.end(), rng);
  std::vector<double> flat = mu.flat();
  const std::size_t len = mu.path_length();
  const auto col = static_cast<std::size_t>(i - mu.window().lo);
  for (std::size_t j = 0; j < mu.size(); ++j) flat[j * len + col] = column[j];
  return ParticleMeasure(mu.window(), std::move(flat), mu.weights());
}

std::size_t past_mismatches(const MeasureBuilder& builder,
                            const NoiseWindow& noise_a, const NoiseWindow& noise_b,
                            Index n, Exec exec) {
  if (!builder.window.contains(n)) {
    throw std::domain_error("consistency: index n outside builder window");
  }
  const ParticleMeasure a = conditional_measure(builder, noise_a, exec);
  const ParticleMeasure b = conditional_measure(builder, noise_b, exec);
  std::size_t mismatches = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const auto pa = a.particle(j);
    const auto pb = b.particle(j);
    for (Index i = builder.window.lo; i <= n; ++i) {
      if (pa[i] != pb[i]) ++mismatches;
    }
  }
  return mismatches;
}

bool consistency_check(const MeasureBuilder& builder, const NoiseWindow& noise_a,
                       const NoiseWindow& noise_b, Index n, Exec exec) {
  if (builder.window.lo < builder.init_index) {
    throw std::domain_error("consistency: window starts left of the initializer");
  }
  const Index lo = std::max(noise_a.first_index(), noise_b.first_index());
  for (Index i = lo; i <= n; ++i) {
    if (noise_a.covers(i) && noise_b.covers(i) && noise_a[i] != noise_b[i]) {
      throw std::domain_error("consistency: noise paths differ at an index <= n");
    }
  }
  return past_mismatches(builder, noise_a, noise_b, n, exec) == 0;
}

double equivariance_discrepancy(const MeasureBuilder& builder,
                                const NoiseWindow& noise, Index t,
                                std::uint64_t shifted_seed_stream, Exec exec) {
  const ParticleMeasure lhs = shift_measure(conditional_measure(builder, noise, exec), -t);
  MeasureBuilder moved = builder.shifted(t);
  moved.init_seed_stream = shifted_seed_stream;
  const ParticleMeasure rhs = conditional_measure(moved, shift_path(noise, -t), exec);
  if (lhs.window() != rhs.window()) {
    throw std::logic_error("equivariance: translated windows disagree");
  }
  double worst = 0.0;
  for (std::size_t k = 0; k < lhs.flat().size(); ++k) {
    worst = std::max(worst, std::abs(lhs.flat()[k] - rhs.flat()[k]));
  }
  return worst;
}

bool shift_equivariance_check(const MeasureBuilder& builder, const NoiseWindow& noise,
                              Index t, Exec exec) {
  return equivariance_discrepancy(builder, noise, t, builder.init_seed_stream, exec) <=
         1e-12;
}

double ensemble_std(const ParticleMeasure& mu, Index i) {
  const std::vector<double> x = mu.coordinate(i);
  std::vector<double> terms(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) terms[j] = mu.weight(j) * x[j];
  const double mean = pairwise_sum(terms);
  for (std::size_t j = 0; j < x.size(); ++j) {
    terms[j] = mu.weight(j) * (x[j] - mean) * (x[j] - mean);
  }
  return std::sqrt(pairwise_sum(terms));
}

}  // namespace srm
