#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "srm/parallel.hpp"
#include "srm/random_measure.hpp"
#include "srm/recurrence.hpp"

namespace srm {

/// Parameters (n, m, lambda_1..lambda_m, rho) of the characteristic-functional
/// identity
///   int exp(i sum_k lambda_k u_{n+k} + i rho u_{n+m+1}) mu(du)
///     = int exp(i sum_k lambda_k u_{n+k}) exp(i rho phi(u_{n+m}, xi_{n+m+1})) mu(du).
struct CharSpec {
  Index n = 0;
  int m = 1;
  std::vector<double> lambdas;
  double rho = 0.0;

  void validate() const;
  [[nodiscard]] Index last_index() const { return n + m + 1; }
};

/// Packaging of the noise-conditional particle construction: particle j is
/// initialized with eta_j drawn from derive_seed(init_seed_stream,
/// initializer, j) and driven by the shared noise path.
struct MeasureBuilder {
  UpdateMap map;
  std::size_t particle_count = 1;
  IndexRange window{0, 1};
  std::uint64_t init_seed_stream = 0;
  Index init_index = 0;
  InitializerLaw init_law{};

  void validate() const;
  [[nodiscard]] Placement placement() const { return {init_index, window}; }
  [[nodiscard]] IndexRange required_noise() const { return srm::required_noise(placement()); }

  /// Same construction translated by t along the index axis.
  [[nodiscard]] MeasureBuilder shifted(Index t) const;
};

/// mu(.) = P{x in . | xi}, realized as the uniform ensemble of trajectories
/// that share one noise path and differ only in their initializers.
[[nodiscard]] ParticleMeasure conditional_measure(const MeasureBuilder& builder,
                                                  const NoiseWindow& noise,
                                                  Exec exec = Exec::parallel);

[[nodiscard]] std::complex<double> hopf_lhs(const ParticleMeasure& mu,
                                            const CharSpec& spec,
                                            Exec exec = Exec::parallel);

[[nodiscard]] std::complex<double> hopf_rhs(const ParticleMeasure& mu,
                                            const NoiseWindow& noise,
                                            const CharSpec& spec,
                                            const UpdateMap& map,
                                            Exec exec = Exec::parallel);

[[nodiscard]] double hopf_residual(const ParticleMeasure& mu,
                                   const NoiseWindow& noise, const CharSpec& spec,
                                   const UpdateMap& map, Exec exec = Exec::parallel);

struct ResidualReport {
  CharSpec spec;
  std::complex<double> lhs;
  std::complex<double> rhs;
  double residual = 0.0;
};

[[nodiscard]] ResidualReport evaluate_hopf(const ParticleMeasure& mu,
                                           const NoiseWindow& noise,
                                           const CharSpec& spec,
                                           const UpdateMap& map,
                                           Exec exec = Exec::parallel);

/// Deterministic family of specs covering the window: several m, constant and
/// alternating lambdas, and rho values including the 2 pi resonance.
[[nodiscard]] std::vector<CharSpec> hopf_spec_grid(IndexRange window);

/// Uniformly placed specs with lambda, rho ~ U(-10, 10).
[[nodiscard]] std::vector<CharSpec> random_char_specs(IndexRange window,
                                                      std::size_t count,
                                                      std::uint64_t seed);

/// Permutes the coordinate at index i across particles (negative control).
[[nodiscard]] ParticleMeasure shuffle_coordinate(const ParticleMeasure& mu,
                                                 Index i, std::uint64_t seed);

/// Number of (particle, index <= n) coordinates on which the two conditional
/// measures differ bit-wise. No precondition on the noise paths.
[[nodiscard]] std::size_t past_mismatches(const MeasureBuilder& builder,
                                          const NoiseWindow& noise_a,
                                          const NoiseWindow& noise_b, Index n,
                                          Exec exec = Exec::parallel);

/// Consistency with the noise filtration: measures built from noise paths that
/// share their past up to n agree bit-exactly on coordinates <= n.
/// Throws std::domain_error when the paths disagree at some index <= n, or the
/// window starts left of the initializer (the backward branch reads noise
/// beyond n).
[[nodiscard]] bool consistency_check(const MeasureBuilder& builder,
                                     const NoiseWindow& noise_a,
                                     const NoiseWindow& noise_b, Index n,
                                     Exec exec = Exec::parallel);

/// max |shift_measure(mu(noise), -t) - mu_shifted(noise translated by t)|
/// where the shifted builder uses `shifted_seed_stream`.
[[nodiscard]] double equivariance_discrepancy(const MeasureBuilder& builder,
                                              const NoiseWindow& noise, Index t,
                                              std::uint64_t shifted_seed_stream,
                                              Exec exec = Exec::parallel);

/// Seed-matched equivariance check at tolerance 1e-12.
[[nodiscard]] bool shift_equivariance_check(const MeasureBuilder& builder,
                                            const NoiseWindow& noise, Index t,
                                            Exec exec = Exec::parallel);

/// Weighted standard deviation of the coordinate at index i.
[[nodiscard]] double ensemble_std(const ParticleMeasure& mu, Index i);

}  // namespace srm
