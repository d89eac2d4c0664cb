#include "srm/path_space.hpp"

#include <algorithm>
#include <cmath>

namespace srm {

SampledFunction::SampledFunction(std::vector<double> times,
                                 std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) {
    throw std::domain_error("sampled function: times/values length mismatch");
  }
  if (times_.empty()) throw std::domain_error("sampled function is empty");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i - 1] < times_[i])) {
      throw std::domain_error("sampled function: times not strictly increasing");
    }
  }
}

PathWindow truncate_path(const PathWindow& p, Index t) {
  if (!p.covers(t)) {
    throw std::domain_error("truncate_path: stopping index outside window");
  }
  std::vector<double> out = p.values();
  const auto stop = static_cast<std::size_t>(t - p.offset());
  std::fill(out.begin() + static_cast<std::ptrdiff_t>(stop) + 1, out.end(),
            out[stop]);
  return PathWindow(p.offset(), std::move(out));
}

MetricValue traj_metric(const SampledFunction& f, const SampledFunction& g,
                        int K) {
  if (K < 1) throw std::domain_error("traj_metric: K must be positive");
  if (f.times() != g.times()) {
    throw std::domain_error("traj_metric: functions sampled on different grids");
  }
  const auto& times = f.times();
  const double k_max = static_cast<double>(K);
  if (times.front() > -k_max || times.back() < k_max) {
    throw std::domain_error("traj_metric: grid does not cover [-K, K]");
  }

  // sup_k[k] = max |f - g| over grid points with |t| <= k.
  std::vector<double> sup_k(static_cast<std::size_t>(K) + 1, 0.0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double at = std::abs(times[i]);
    if (at > k_max) continue;
    const auto first_k = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(at)));
    const double diff = std::abs(f.values()[i] - g.values()[i]);
    sup_k[first_k] = std::max(sup_k[first_k], diff);
  }
  for (std::size_t k = 2; k < sup_k.size(); ++k) {
    sup_k[k] = std::max(sup_k[k], sup_k[k - 1]);
  }

  MetricValue out;
  double weight = 1.0;
  for (std::size_t k = 1; k < sup_k.size(); ++k) {
    weight *= 0.5;
    const double r = sup_k[k];
    out.value += weight * (r / (1.0 + r));
  }
  out.tail_bound = std::ldexp(1.0, -K);
  return out;
}

}  // namespace srm
