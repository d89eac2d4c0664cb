#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "srm/parallel.hpp"
#include "srm/path_space.hpp"
#include "srm/stats.hpp"

namespace srm {

/// One realization mu(omega, .) of a random measure on the sequence space:
/// weighted trajectories over a common index window. Trajectories are stored
/// row-major, one row per particle.
class ParticleMeasure {
 public:
  ParticleMeasure(const std::vector<PathWindow>& particles,
                  std::vector<double> weights);

  /// Flat row-major storage; weights default to uniform when empty.
  ParticleMeasure(IndexRange window, std::vector<double> flat,
                  std::vector<double> weights = {});

  [[nodiscard]] std::size_t size() const { return weights_.size(); }
  [[nodiscard]] IndexRange window() const { return window_; }
  [[nodiscard]] std::size_t path_length() const { return window_.length(); }

  [[nodiscard]] SequenceView particle(std::size_t j) const {
    return {window_.lo, std::span(flat_).subspan(j * path_length(), path_length())};
  }
  [[nodiscard]] PathWindow particle_window(std::size_t j) const;
  [[nodiscard]] double weight(std::size_t j) const { return weights_[j]; }
  [[nodiscard]] const std::vector<double>& weights() const { return weights_; }
  [[nodiscard]] const std::vector<double>& flat() const { return flat_; }

  /// All particle values at absolute index i.
  [[nodiscard]] std::vector<double> coordinate(Index i) const;

  friend bool operator==(const ParticleMeasure&, const ParticleMeasure&) = default;

 private:
  IndexRange window_;
  std::vector<double> flat_;
  std::vector<double> weights_;
};

struct Interval {
  double lo = 0.0;  // inclusive
  double hi = 0.0;  // exclusive

  [[nodiscard]] bool contains(double x) const { return lo <= x && x < hi; }
};

/// {u : (u_start, ..., u_{start+m}) in [a_0,b_0) x ... x [a_m,b_m)}.
class CylinderSet {
 public:
  CylinderSet(Index start, std::vector<Interval> intervals);

  [[nodiscard]] Index start() const { return start_; }
  [[nodiscard]] Index last_index() const {
    return start_ + static_cast<Index>(intervals_.size()) - 1;
  }
  [[nodiscard]] const std::vector<Interval>& intervals() const { return intervals_; }
  [[nodiscard]] bool contains(const SequenceView& u) const;
  [[nodiscard]] CylinderSet moved_to(Index start) const { return {start, intervals_}; }

 private:
  Index start_;
  std::vector<Interval> intervals_;
};

/// sum_j w_j f(particle_j), reduced with the fixed pairwise tree.
template <class F>
[[nodiscard]] std::complex<double> integrate(const ParticleMeasure& mu, F&& f,
                                             Exec exec = Exec::parallel) {
  std::vector<std::complex<double>> terms(mu.size());
  for_each_index(exec, mu.size(), [&](std::size_t j) {
    terms[j] = mu.weight(j) * std::complex<double>(f(mu.particle(j)));
  });
  return pairwise_sum(std::span<const std::complex<double>>(terms));
}

[[nodiscard]] double cylinder_prob(const ParticleMeasure& mu,
                                   const CylinderSet& delta);

/// Image of mu under the translation u -> u_t; weights unchanged.
[[nodiscard]] ParticleMeasure shift_measure(const ParticleMeasure& mu, Index t);

/// omega -> mu(omega, .), where the argument seeds omega. Must be callable
/// concurrently.
using MeasureSampler = std::function<ParticleMeasure(std::uint64_t seed)>;

struct EqualityOptions {
  std::size_t replicas = 1000;
  double alpha = 0.01;
  std::uint64_t seed_a = 1;
  std::uint64_t seed_b = 2;
  Exec exec = Exec::parallel;
};

/// Two-sample KS comparison of the laws of (mu(D_1), ..., mu(D_n)) under two
/// samplers, coordinate-wise plus one fixed random linear projection.
/// Replica r of each group is drawn with derive_seed(group seed, replica_a, r),
/// so identical group seeds give identical samples.
[[nodiscard]] StatReport distributions_equal(const MeasureSampler& sampler_a,
                                             const MeasureSampler& sampler_b,
                                             const std::vector<CylinderSet>& deltas,
                                             const EqualityOptions& options);

/// Per-replica evaluation of (mu(D_1), ..., mu(D_n)); row r holds replica r.
[[nodiscard]] std::vector<std::vector<double>> cylinder_vectors(
    const MeasureSampler& sampler, const std::vector<CylinderSet>& deltas,
    std::size_t replicas, std::uint64_t seed, Exec exec = Exec::parallel);

}  // namespace srm
