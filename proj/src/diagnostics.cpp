#include "srm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "srm/rng.hpp"

namespace srm {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::size_t as_size(std::int64_t n) { return static_cast<std::size_t>(n); }

void check_index(const DiagnosticsConfig& config, Index n) {
  if (!config.window.contains(n)) throw std::domain_error("index n outside config window");
}

void check_correlations(double rho, double a) {
  if (!(std::abs(rho) < 1.0)) throw std::domain_error("conditional law: need |rho| < 1");
  if (!(std::abs(a) < 1.0)) throw std::domain_error("conditional law: need |a| < 1");
}

double max_modulus(const std::vector<std::complex<double>>& values) {
  double worst = 0.0;
  for (const auto& v : values) worst = std::max(worst, std::abs(v));
  return worst;
}

// Stationary AR(1) driver over the window, seeded by omega.
std::vector<double> gaussian_driver(double a, IndexRange window, std::uint64_t seed) {
  Xoshiro256 init(derive_seed(seed, Stream::initializer, 0));
  const NoiseModel zeta{NoiseLaw::normal, seed};
  const double innovation = std::sqrt(1.0 - a * a);
  std::vector<double> y(window.length());
  y[0] = standard_normal(init);
  for (std::size_t k = 1; k < y.size(); ++k) {
    y[k] = a * y[k - 1] + innovation * zeta.value_at(window.lo + static_cast<Index>(k));
  }
  return y;
}

std::vector<Index> tested_indices(IndexRange window) {
  const std::size_t len = window.length();
  const std::size_t count = std::min<std::size_t>(5, len);
  std::vector<Index> out;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t pos = count == 1 ? 0 : k * (len - 1) / (count - 1);
    out.push_back(window.lo + static_cast<Index>(pos));
  }
  return out;
}

}  // namespace

void DiagnosticsConfig::validate() const {
  if (sample_size < 1) throw std::domain_error("config: sample_size must be positive");
  if (particle_count < 1) throw std::domain_error("config: particle_count must be positive");
  if (noise_paths < 1) throw std::domain_error("config: noise_paths must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("config: alpha must lie in (0, 1)");
  if (window.hi < window.lo) throw std::domain_error("config: empty window");
}

std::vector<std::complex<double>> tsirelson_phases(const DiagnosticsConfig& config,
                                                   Index n, const UpdateMap& map) {
  config.validate();
  check_index(config, n);
  const Placement placement{config.window.lo, {n, n}};
  const IndexRange need = required_noise(placement);
  std::vector<std::complex<double>> phases(as_size(config.sample_size));
  for_each_index(config.exec, phases.size(), [&](std::size_t r) {
    const NoiseModel noise_model{NoiseLaw::uniform,
                                 derive_seed(config.seed, Stream::noise, r)};
    const double eta =
        draw_initializer(derive_seed(config.seed, Stream::initializer, r), {});
    double x = eta;
    if (need.lo <= need.hi) {
      const NoiseWindow noise = noise_model.generate(need);
      fill_trajectory(map, noise, eta, placement, std::span(&x, 1));
    }
    phases[r] = std::polar(1.0, two_pi * x);
  });
  return phases;
}

StatReport tsirelson_statistic(const DiagnosticsConfig& config, Index n,
                               const UpdateMap& map) {
  const auto phases = tsirelson_phases(config, n, map);
  const std::complex<double> mean =
      pairwise_sum(std::span<const std::complex<double>>(phases)) /
      static_cast<double>(phases.size());
  return StatReport::make("tsirelson", std::abs(mean),
                          5.0 / std::sqrt(static_cast<double>(config.sample_size)),
                          config.sample_size, config.seed);
}

std::vector<std::complex<double>> conditional_char_values(
    const DiagnosticsConfig& config, Index n, const UpdateMap& map) {
  config.validate();
  check_index(config, n);
  std::vector<std::complex<double>> out;
  for (std::int64_t p = 0; p < config.noise_paths; ++p) {
    const auto path = static_cast<std::uint64_t>(p);
    MeasureBuilder builder;
    builder.map = map;
    builder.particle_count = as_size(config.particle_count);
    builder.window = {config.window.lo, std::max(n, config.window.lo + 1)};
    builder.init_index = config.window.lo;
    builder.init_seed_stream = derive_seed(config.seed, Stream::initializer, path);
    const NoiseModel noise_model{NoiseLaw::uniform,
                                 derive_seed(config.seed, Stream::noise, path)};
    const NoiseWindow noise = noise_model.generate(builder.required_noise());
    const ParticleMeasure mu = conditional_measure(builder, noise, config.exec);
    out.push_back(integrate(
        mu, [&](const SequenceView& u) { return std::polar(1.0, two_pi * u[n]); },
        config.exec));
  }
  return out;
}

StatReport conditional_char_statistic(const DiagnosticsConfig& config, Index n,
                                      const UpdateMap& map) {
  const auto values = conditional_char_values(config, n, map);
  return StatReport::make("conditional_char", max_modulus(values),
                          5.0 / std::sqrt(static_cast<double>(config.particle_count)),
                          config.particle_count, config.seed);
}

IndexRange common_range(IndexRange window, const std::vector<Index>& shifts) {
  IndexRange out = window;
  for (Index t : shifts) {
    out.lo = std::max(out.lo, window.lo - t);
    out.hi = std::min(out.hi, window.hi - t);
  }
  if (out.hi < out.lo) throw std::domain_error("shifts leave no common index range");
  return out;
}

std::vector<CylinderSet> unit_interval_cylinders(IndexRange common) {
  std::vector<CylinderSet> out;
  const Index s = common.lo;
  out.emplace_back(s, std::vector<Interval>{{0.0, 0.5}});
  if (common.contains(s + 1)) {
    out.emplace_back(s, std::vector<Interval>{{0.0, 0.5}, {0.0, 0.5}});
  }
  if (common.contains(s + 2)) {
    out.emplace_back(s, std::vector<Interval>{{0.25, 0.75}, {0.0, 0.5}, {0.5, 1.0}});
  }
  if (common.hi - 1 > s) {
    out.emplace_back(common.hi - 1, std::vector<Interval>{{0.1, 0.6}, {0.3, 0.9}});
  }
  return out;
}

std::vector<StatReport> stationarity_suite(const MeasureBuilder& builder,
                                           const std::vector<Index>& shifts,
                                           const std::vector<CylinderSet>& deltas,
                                           const DiagnosticsConfig& config,
                                           NoiseLaw law) {
  config.validate();
  builder.validate();
  if (shifts.empty()) throw std::domain_error("stationarity: no shifts given");
  if (deltas.empty()) throw std::domain_error("stationarity: no cylinder sets given");
  for (Index t : shifts) {
    if (t == 0) throw std::domain_error("stationarity: shift 0 is vacuous");
    const IndexRange common = common_range(builder.window, {t});
    for (const auto& d : deltas) {
      if (!common.contains(d.start()) || !common.contains(d.last_index())) {
        throw std::domain_error("stationarity: cylinder leaves the window after shifting");
      }
    }
  }

  const MeasureSampler sampler = [builder, law](std::uint64_t omega) {
    MeasureBuilder b = builder;
    b.init_seed_stream = derive_seed(omega, Stream::initializer, 0);
    const NoiseModel noise_model{law, derive_seed(omega, Stream::noise, 0)};
    return conditional_measure(b, noise_model.generate(b.required_noise()), Exec::serial);
  };

  std::vector<StatReport> reports;
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    const Index t = shifts[k];
    const MeasureSampler shifted = [sampler, t](std::uint64_t omega) {
      return shift_measure(sampler(omega), t);
    };
    EqualityOptions opts;
    opts.replicas = as_size(config.sample_size);
    opts.alpha = config.alpha;
    opts.seed_a = derive_seed(config.seed, Stream::replica_a, k);
    opts.seed_b = derive_seed(config.seed, Stream::replica_b, k);
    opts.exec = config.exec;
    StatReport r = distributions_equal(sampler, shifted, deltas, opts);
    r.test_name = "stationarity:t=" + std::to_string(t);
    r.seed = config.seed;
    reports.push_back(std::move(r));
  }
  return reports;
}

RotationState rotation_flow(RotationState s, double t) {
  const double c = std::cos(t);
  const double sn = std::sin(t);
  return {s.x1 * c - s.x2 * sn, s.x1 * sn + s.x2 * c};
}

StatReport rotation_invariance_demo(const DiagnosticsConfig& config, double t,
                                    RotationState input_mean) {
  config.validate();
  const std::size_t n = as_size(config.sample_size);
  std::vector<double> x1(n);
  std::vector<double> x2(n);
  for_each_index(config.exec, n, [&](std::size_t i) {
    Xoshiro256 rng(derive_seed(config.seed, Stream::gaussian, i));
    const double z1 = standard_normal(rng);
    const double z2 = standard_normal(rng);
    const RotationState out =
        rotation_flow({z1 + input_mean.x1, z2 + input_mean.x2}, t);
    x1[i] = out.x1;
    x2[i] = out.x2;
  });

  const double dn = static_cast<double>(n);
  const double m1 = pairwise_sum(x1) / dn;
  const double m2 = pairwise_sum(x2) / dn;
  std::vector<double> s11(n), s22(n), s12(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d1 = x1[i] - m1;
    const double d2 = x2[i] - m2;
    s11[i] = d1 * d1;
    s22[i] = d2 * d2;
    s12[i] = d1 * d2;
  }
  const double c11 = pairwise_sum(s11) / dn;
  const double c22 = pairwise_sum(s22) / dn;
  const double c12 = pairwise_sum(s12) / dn;
  const double statistic = std::max({std::abs(m1), std::abs(m2), std::abs(c11 - 1.0),
                                     std::abs(c22 - 1.0), std::abs(c12)});
  return StatReport::make("rotation", statistic, 5.0 / std::sqrt(dn),
                          config.sample_size, config.seed);
}

std::vector<ConditionalLawIndex> conditional_law_details(double rho, double a,
                                                         const DiagnosticsConfig& config) {
  check_correlations(rho, a);
  config.validate();
  const std::vector<double> y = gaussian_driver(a, config.window, config.seed);
  const double spread = std::sqrt(1.0 - rho * rho);
  const std::size_t particles = as_size(config.particle_count);

  std::vector<ConditionalLawIndex> out;
  for (Index n : tested_indices(config.window)) {
    const double yn = y[static_cast<std::size_t>(n - config.window.lo)];
    const std::uint64_t stream =
        derive_seed(config.seed, Stream::gaussian, static_cast<std::uint64_t>(n));
    std::vector<double> x(particles);
    for_each_index(config.exec, particles, [&](std::size_t j) {
      Xoshiro256 rng(derive_seed(stream, Stream::gaussian, j));
      x[j] = rho * yn + spread * standard_normal(rng);
    });
    ConditionalLawIndex entry;
    entry.index = n;
    entry.y = yn;
    entry.conditional_mean = pairwise_sum(x) / static_cast<double>(particles);
    entry.ks = ks_one_sample(std::move(x), [&](double v) {
      return normal_cdf(v, rho * yn, spread * spread);
    });
    out.push_back(entry);
  }
  return out;
}

StatReport conditional_law_demo(double rho, double a, const DiagnosticsConfig& config) {
  double worst = 0.0;
  for (const auto& e : conditional_law_details(rho, a, config)) worst = std::max(worst, e.ks);
  return StatReport::make(
      "conditional_law", worst,
      ks_critical_value(config.alpha) / std::sqrt(static_cast<double>(config.particle_count)),
      config.particle_count, config.seed);
}

std::vector<StatReport> conditional_law_stationarity(double rho, double a,
                                                     const DiagnosticsConfig& config,
                                                     const std::vector<Index>& shifts) {
  check_correlations(rho, a);
  config.validate();
  const IndexRange window = config.window;
  const std::size_t particles = as_size(config.particle_count);
  const double spread = std::sqrt(1.0 - rho * rho);

  const MeasureSampler sampler = [=](std::uint64_t omega) {
    const std::vector<double> y = gaussian_driver(a, window, omega);
    const std::size_t len = window.length();
    std::vector<double> flat(particles * len);
    for (std::size_t j = 0; j < particles; ++j) {
      Xoshiro256 rng(derive_seed(omega, Stream::gaussian, j));
      for (std::size_t k = 0; k < len; ++k) {
        flat[j * len + k] = rho * y[k] + spread * standard_normal(rng);
      }
    }
    return ParticleMeasure(window, std::move(flat));
  };

  const IndexRange common = common_range(window, shifts);
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<CylinderSet> deltas;
  deltas.emplace_back(common.lo, std::vector<Interval>{{0.0, inf}});
  deltas.emplace_back(common.lo, std::vector<Interval>{{-0.5, 0.5}});
  if (common.contains(common.lo + 1)) {
    deltas.emplace_back(common.lo, std::vector<Interval>{{0.0, inf}, {0.0, inf}});
  }

  std::vector<StatReport> reports;
  for (std::size_t k = 0; k < shifts.size(); ++k) {
    const Index t = shifts[k];
    if (t == 0) throw std::domain_error("stationarity: shift 0 is vacuous");
    const MeasureSampler shifted = [sampler, t](std::uint64_t omega) {
      return shift_measure(sampler(omega), t);
    };
    EqualityOptions opts;
    opts.replicas = as_size(config.sample_size);
    opts.alpha = config.alpha;
    opts.seed_a = derive_seed(config.seed, Stream::replica_a, k);
    opts.seed_b = derive_seed(config.seed, Stream::replica_b, k);
    opts.exec = config.exec;
    StatReport r = distributions_equal(sampler, shifted, deltas, opts);
    r.test_name = "conditional_law_stationarity:t=" + std::to_string(t);
    r.seed = config.seed;
    reports.push_back(std::move(r));
  }
  return reports;
}

StatReport consistency_suite(const MeasureBuilder& builder, std::size_t pairs,
                             std::uint64_t seed, Exec exec) {
  builder.validate();
  if (pairs == 0) throw std::domain_error("consistency: need at least one pair");
  const IndexRange need = builder.required_noise();
  if (need.hi < need.lo) throw std::domain_error("consistency: builder reads no noise");
  std::size_t mismatches = 0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const NoiseWindow past = NoiseModel{NoiseLaw::uniform,
                                        derive_seed(seed, Stream::noise, p)}.generate(need);
    const NoiseWindow future = NoiseModel{NoiseLaw::uniform,
                                          derive_seed(seed, Stream::replica_b, p)}.generate(need);
    Xoshiro256 rng(derive_seed(seed, Stream::shuffle, p));
    // Cut strictly inside the window so some future index exists.
    const auto width = static_cast<std::uint64_t>(builder.window.hi - builder.window.lo);
    const Index cut = builder.window.lo + static_cast<Index>(rng() % width);
    std::vector<double> mixed = past.values();
    for (Index i = std::max(cut + 1, need.lo); i <= need.hi; ++i) {
      auto& slot = mixed[static_cast<std::size_t>(i - need.lo)];
      slot = future[i] != slot ? future[i] : frac(slot + 0.5);
    }
    const NoiseWindow other(need.lo, std::move(mixed));
    if (!consistency_check(builder, past, other, cut, exec)) {
      mismatches += past_mismatches(builder, past, other, cut, exec);
    }
  }
  return StatReport::make("consistency", static_cast<double>(mismatches), 0.0,
                          static_cast<std::int64_t>(pairs), seed);
}

std::vector<StatReport> equivariance_suite(const MeasureBuilder& builder,
                                           const std::vector<Index>& shifts,
                                           std::uint64_t seed, Exec exec) {
  builder.validate();
  std::vector<StatReport> out;
  for (Index t : shifts) {
    const NoiseWindow noise =
        NoiseModel{NoiseLaw::uniform, derive_seed(seed, Stream::noise, 0)}.generate(
            builder.required_noise());
    out.push_back(StatReport::make(
        "equivariance:t=" + std::to_string(t),
        equivariance_discrepancy(builder, noise, t, builder.init_seed_stream, exec), 1e-12,
        static_cast<std::int64_t>(builder.particle_count), seed));
  }
  return out;
}

}  // namespace srm
