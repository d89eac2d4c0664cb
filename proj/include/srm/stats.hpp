#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace srm {

/// Outcome of one statistical or exact check. passed <=> statistic <= threshold.
struct StatReport {
  std::string test_name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::int64_t sample_size = 0;
  std::uint64_t seed = 0;

  static StatReport make(std::string name, double statistic, double threshold,
                         std::int64_t sample_size, std::uint64_t seed) {
    return {std::move(name), statistic, threshold, statistic <= threshold,
            sample_size, seed};
  }
};

/// Pairwise summation over a fixed binary tree (split at n/2, leaves of 8).
/// The result depends only on the input order, never on threads.
[[nodiscard]] double pairwise_sum(std::span<const double> xs);
[[nodiscard]] std::complex<double> pairwise_sum(
    std::span<const std::complex<double>> xs);

/// Asymptotic Kolmogorov critical value c(alpha) = sqrt(-ln(alpha / 2) / 2).
[[nodiscard]] double ks_critical_value(double alpha);

/// c(alpha) * sqrt((n + m) / (n m)).
[[nodiscard]] double ks_two_sample_threshold(double alpha, std::size_t n,
                                             std::size_t m);

/// sup |F_n - F| for a continuous reference CDF.
[[nodiscard]] double ks_one_sample(std::vector<double> samples,
                                   const std::function<double(double)>& cdf);

[[nodiscard]] double ks_uniform(std::vector<double> samples);

/// sup |F_a - F_b| with ties handled by stepping through equal values jointly.
[[nodiscard]] double ks_two_sample(std::vector<double> a, std::vector<double> b);

[[nodiscard]] double normal_cdf(double x, double mean, double variance);

}  // namespace srm
