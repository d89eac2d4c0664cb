#include "srm/random_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "srm/rng.hpp"

namespace srm {

namespace {

void check_weights(const std::vector<double>& weights) {
  if (weights.empty()) throw std::domain_error("particle measure needs a particle");
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::domain_error("particle weights must be nonnegative");
  }
  const double total = pairwise_sum(weights);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::domain_error("particle weights must sum to 1");
  }
}

// Fixed coefficients of the random linear projection used by
// distributions_equal; independent of the group seeds.
std::vector<double> projection_coefficients(std::size_t n) {
  Xoshiro256 rng(derive_seed(0, Stream::projection, 0));
  std::vector<double> c(n);
  for (auto& x : c) x = standard_normal(rng);
  return c;
}

}  // namespace

ParticleMeasure::ParticleMeasure(const std::vector<PathWindow>& particles,
                                 std::vector<double> weights)
    : window_{}, weights_(std::move(weights)) {
  if (particles.empty()) throw std::domain_error("particle measure needs a particle");
  if (particles.size() != weights_.size()) {
    throw std::domain_error("particle/weight count mismatch");
  }
  window_ = particles.front().range();
  flat_.reserve(particles.size() * window_.length());
  for (const auto& p : particles) {
    if (p.range() != window_) {
      throw std::domain_error("particles must share one index window");
    }
    flat_.insert(flat_.end(), p.values().begin(), p.values().end());
  }
  check_weights(weights_);
}

ParticleMeasure::ParticleMeasure(IndexRange window, std::vector<double> flat,
                                 std::vector<double> weights)
    : window_(window), flat_(std::move(flat)), weights_(std::move(weights)) {
  if (window_.hi < window_.lo) throw std::domain_error("empty particle window");
  const std::size_t len = window_.length();
  if (flat_.empty() || flat_.size() % len != 0) {
    throw std::domain_error("flat storage is not a whole number of paths");
  }
  const std::size_t count = flat_.size() / len;
  if (weights_.empty()) {
    weights_.assign(count, 1.0 / static_cast<double>(count));
  }
  if (weights_.size() != count) throw std::domain_error("particle/weight count mismatch");
  check_weights(weights_);
}

PathWindow ParticleMeasure::particle_window(std::size_t j) const {
  const auto v = particle(j).values();
  return PathWindow(window_.lo, {v.begin(), v.end()});
}

std::vector<double> ParticleMeasure::coordinate(Index i) const {
  if (!window_.contains(i)) throw std::domain_error("coordinate outside window");
  std::vector<double> out(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = particle(j)[i];
  return out;
}

CylinderSet::CylinderSet(Index start, std::vector<Interval> intervals)
    : start_(start), intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw std::domain_error("cylinder needs an interval");
  for (const auto& iv : intervals_) {
    if (!(iv.lo < iv.hi)) throw std::domain_error("cylinder interval must have a < b");
  }
}

bool CylinderSet::contains(const SequenceView& u) const {
  for (std::size_t k = 0; k < intervals_.size(); ++k) {
    if (!intervals_[k].contains(u[start_ + static_cast<Index>(k)])) return false;
  }
  return true;
}

double cylinder_prob(const ParticleMeasure& mu, const CylinderSet& delta) {
  const auto w = mu.window();
  if (!w.contains(delta.start()) || !w.contains(delta.last_index())) {
    throw std::domain_error("cylinder indices outside particle window");
  }
  std::vector<double> terms(mu.size());
  for (std::size_t j = 0; j < mu.size(); ++j) {
    terms[j] = delta.contains(mu.particle(j)) ? mu.weight(j) : 0.0;
  }
  return std::clamp(pairwise_sum(terms), 0.0, 1.0);
}

ParticleMeasure shift_measure(const ParticleMeasure& mu, Index t) {
  const IndexRange w = mu.window();
  return ParticleMeasure({w.lo - t, w.hi - t}, mu.flat(), mu.weights());
}

std::vector<std::vector<double>> cylinder_vectors(
    const MeasureSampler& sampler, const std::vector<CylinderSet>& deltas,
    std::size_t replicas, std::uint64_t seed, Exec exec) {
  std::vector<std::vector<double>> rows(replicas);
  for_each_index(exec, replicas, [&](std::size_t r) {
    const ParticleMeasure mu = sampler(derive_seed(seed, Stream::replica_a, r));
    auto& row = rows[r];
    row.reserve(deltas.size());
    for (const auto& d : deltas) row.push_back(cylinder_prob(mu, d));
  });
  return rows;
}

StatReport distributions_equal(const MeasureSampler& sampler_a,
                               const MeasureSampler& sampler_b,
                               const std::vector<CylinderSet>& deltas,
                               const EqualityOptions& options) {
  if (options.replicas < 100) {
    throw std::domain_error("distributions_equal: at least 100 replicas required");
  }
  if (deltas.empty()) throw std::domain_error("distributions_equal: no cylinder sets");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
    throw std::domain_error("distributions_equal: alpha must lie in (0, 1)");
  }

  const auto a = cylinder_vectors(sampler_a, deltas, options.replicas,
                                   options.seed_a, options.exec);
  const auto b = cylinder_vectors(sampler_b, deltas, options.replicas,
                                  options.seed_b, options.exec);

  const auto column = [](const std::vector<std::vector<double>>& rows,
                         const std::vector<double>& coeffs) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
      double s = 0.0;
      for (std::size_t k = 0; k < row.size(); ++k) s += coeffs[k] * row[k];
      out.push_back(s);
    }
    return out;
  };

  double statistic = 0.0;
  std::vector<double> unit(deltas.size(), 0.0);
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    std::fill(unit.begin(), unit.end(), 0.0);
    unit[k] = 1.0;
    statistic = std::max(statistic, ks_two_sample(column(a, unit), column(b, unit)));
  }
  const auto coeffs = projection_coefficients(deltas.size());
  statistic = std::max(statistic, ks_two_sample(column(a, coeffs), column(b, coeffs)));

  const double threshold =
      ks_two_sample_threshold(options.alpha, options.replicas, options.replicas);
  return StatReport::make("distributions_equal", statistic, threshold,
                          static_cast<std::int64_t>(options.replicas),
                          options.seed_a);
}

}  // namespace srm
