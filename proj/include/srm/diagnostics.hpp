#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "srm/measure_solution.hpp"
#include "srm/parallel.hpp"
#include "srm/random_measure.hpp"
#include "srm/recurrence.hpp"
#include "srm/stats.hpp"

namespace srm {

struct RotationState {
  double x1 = 0.0;
  double x2 = 0.0;
};

struct DiagnosticsConfig {
  std::int64_t sample_size = 100000;
  std::int64_t particle_count = 10000;
  double alpha = 0.01;
  std::uint64_t seed = 42;
  IndexRange window{0, 10};
  /// Frozen noise paths for the conditional statistics.
  std::int64_t noise_paths = 10;
  Exec exec = Exec::parallel;

  void validate() const;
};

/// e^{2 pi i x_n} for each of sample_size independent runs of the stationary
/// sampler (fresh noise and initializer per run, eta at window.lo).
[[nodiscard]] std::vector<std::complex<double>> tsirelson_phases(
    const DiagnosticsConfig& config, Index n, const UpdateMap& map = fractional_map());

/// |mean of e^{2 pi i x_n}| against 5 / sqrt(sample_size). For the circle map
/// the population value is exactly zero.
[[nodiscard]] StatReport tsirelson_statistic(const DiagnosticsConfig& config, Index n,
                                             const UpdateMap& map = fractional_map());

/// One entry per frozen noise path: integral of e^{2 pi i u_n} against the
/// conditional particle measure.
[[nodiscard]] std::vector<std::complex<double>> conditional_char_values(
    const DiagnosticsConfig& config, Index n, const UpdateMap& map = fractional_map());

/// max over noise paths of |conditional characteristic value| against
/// 5 / sqrt(particle_count).
[[nodiscard]] StatReport conditional_char_statistic(
    const DiagnosticsConfig& config, Index n, const UpdateMap& map = fractional_map());

/// Rectangles over [0, 1)-valued coordinates inside `common`, one to three
/// coordinates long.
[[nodiscard]] std::vector<CylinderSet> unit_interval_cylinders(IndexRange common);

/// Index range that stays inside `window` after every shift in `shifts`.
[[nodiscard]] IndexRange common_range(IndexRange window, const std::vector<Index>& shifts);

/// For each t: distributions_equal between omega -> conditional_measure(builder,
/// noise(omega)) and its t-shift. Replicas = config.sample_size.
[[nodiscard]] std::vector<StatReport> stationarity_suite(
    const MeasureBuilder& builder, const std::vector<Index>& shifts,
    const std::vector<CylinderSet>& deltas, const DiagnosticsConfig& config,
    NoiseLaw law = NoiseLaw::uniform);

/// Exact flow of dx = T x dt with T = [[0, -1], [1, 0]].
[[nodiscard]] RotationState rotation_flow(RotationState state, double t);

/// Pushes sample_size standard bivariate normals (shifted by `input_mean`)
/// through the rotation; statistic is the largest deviation of the sample mean
/// from 0 and the sample covariance from I.
[[nodiscard]] StatReport rotation_invariance_demo(const DiagnosticsConfig& config,
                                                  double t,
                                                  RotationState input_mean = {});

struct ConditionalLawIndex {
  Index index = 0;
  double y = 0.0;
  double conditional_mean = 0.0;
  double ks = 0.0;
};

/// Gaussian pair y_{n+1} = a y_n + sqrt(1 - a^2) zeta_{n+1},
/// x_n = rho y_n + sqrt(1 - rho^2) eps_n; with y frozen, the conditional law of
/// x_n is N(rho y_n, 1 - rho^2). Up to five evenly spaced indices are tested,
/// particle_count eps draws each.
[[nodiscard]] std::vector<ConditionalLawIndex> conditional_law_details(
    double rho, double a, const DiagnosticsConfig& config);

[[nodiscard]] StatReport conditional_law_demo(double rho, double a,
                                              const DiagnosticsConfig& config);

/// Stationarity of omega -> P{x in . | y(omega)} across shifts.
[[nodiscard]] std::vector<StatReport> conditional_law_stationarity(
    double rho, double a, const DiagnosticsConfig& config,
    const std::vector<Index>& shifts);

/// Draws `pairs` noise-path pairs that share their past up to a random cut
/// n and differ afterwards; statistic = total count of past coordinates on
/// which the two conditional measures differ (threshold 0).
[[nodiscard]] StatReport consistency_suite(const MeasureBuilder& builder,
                                           std::size_t pairs, std::uint64_t seed,
                                           Exec exec = Exec::parallel);

/// One report per shift: seed-matched equivariance discrepancy against 1e-12.
[[nodiscard]] std::vector<StatReport> equivariance_suite(const MeasureBuilder& builder,
                                                         const std::vector<Index>& shifts,
                                                         std::uint64_t seed,
                                                         Exec exec = Exec::parallel);

}  // namespace srm
