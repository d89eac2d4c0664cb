#include "srm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srm {

namespace {

template <class T>
T pairwise(std::span<const T> xs) {
  constexpr std::size_t leaf = 8;
  if (xs.size() <= leaf) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise(xs.first(half)) + pairwise(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise(xs); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
  return pairwise(xs);
}

double ks_critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("ks_critical_value: alpha must lie in (0, 1)");
  }
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

double ks_two_sample_threshold(double alpha, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::domain_error("ks threshold: empty sample");
  const auto dn = static_cast<double>(n);
  const auto dm = static_cast<double>(m);
  return ks_critical_value(alpha) * std::sqrt((dn + dm) / (dn * dm));
}

double ks_one_sample(std::vector<double> samples,
                     const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::domain_error("ks_one_sample: empty sample");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const auto di = static_cast<double>(i);
    d = std::max({d, (di + 1.0) / n - f, f - di / n});
  }
  return d;
}

double ks_uniform(std::vector<double> samples) {
  return ks_one_sample(std::move(samples),
                       [](double x) { return std::clamp(x, 0.0, 1.0); });
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::domain_error("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const auto na = static_cast<double>(a.size());
  const auto nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

double normal_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

}  // namespace srm
