#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srm {

using Index = std::int64_t;

/// Closed integer index range [lo, hi].
struct IndexRange {
  Index lo = 0;
  Index hi = 0;

  [[nodiscard]] bool contains(Index i) const { return lo <= i && i <= hi; }
  [[nodiscard]] std::size_t length() const {
    return static_cast<std::size_t>(hi - lo + 1);
  }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Non-owning view of a window of a bi-infinite real sequence.
/// The coordinate at absolute index i is values[i - offset].
class SequenceView {
 public:
  SequenceView(Index offset, std::span<const double> values)
      : offset_(offset), values_(values) {}

  [[nodiscard]] Index offset() const { return offset_; }
  [[nodiscard]] Index first_index() const { return offset_; }
  [[nodiscard]] Index last_index() const {
    return offset_ + static_cast<Index>(values_.size()) - 1;
  }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] bool covers(Index i) const {
    return first_index() <= i && i <= last_index();
  }
  [[nodiscard]] std::span<const double> values() const { return values_; }

  /// Unchecked coordinate access.
  [[nodiscard]] double operator[](Index i) const {
    return values_[static_cast<std::size_t>(i - offset_)];
  }
  [[nodiscard]] double at(Index i) const {
    if (!covers(i)) {
      throw std::domain_error("index " + std::to_string(i) +
                              " outside window");
    }
    return (*this)[i];
  }

 private:
  Index offset_;
  std::span<const double> values_;
};

/// Owning window of a real sequence. The tag separates trajectory windows
/// from noise windows at the type level; both share the addressing rule.
template <class Tag>
class Window {
 public:
  Window(Index offset, std::vector<double> values)
      : offset_(offset), values_(std::move(values)) {
    if (values_.empty()) throw std::domain_error("window must be non-empty");
  }

  [[nodiscard]] Index offset() const { return offset_; }
  [[nodiscard]] Index first_index() const { return offset_; }
  [[nodiscard]] Index last_index() const {
    return offset_ + static_cast<Index>(values_.size()) - 1;
  }
  [[nodiscard]] IndexRange range() const { return {first_index(), last_index()}; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] bool covers(Index i) const {
    return first_index() <= i && i <= last_index();
  }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }

  [[nodiscard]] double operator[](Index i) const {
    return values_[static_cast<std::size_t>(i - offset_)];
  }
  [[nodiscard]] double at(Index i) const { return view().at(i); }

  [[nodiscard]] SequenceView view() const { return {offset_, values_}; }
  operator SequenceView() const { return view(); }  // NOLINT

  friend bool operator==(const Window&, const Window&) = default;

 private:
  Index offset_;
  std::vector<double> values_;
};

struct PathTag {};
struct NoiseTag {};

using PathWindow = Window<PathTag>;
using NoiseWindow = Window<NoiseTag>;

/// A function sampled on a strictly increasing time grid.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> times, std::vector<double> values);

  [[nodiscard]] const std::vector<double>& times() const { return times_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Translation u_t(s) = u(s + t): the result at index i is p at i + t.
template <class Tag>
[[nodiscard]] Window<Tag> shift_path(const Window<Tag>& p, Index t) {
  return Window<Tag>(p.offset() - t, p.values());
}

/// Stopped path x_t(s) = x(min(t, s)) on the same window.
[[nodiscard]] PathWindow truncate_path(const PathWindow& p, Index t);

struct MetricValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

/// Finite-window version of the locally uniform trajectory metric
///   sum_{k=1..K} 2^-k phi(max_{|t|<=k} |f(t) - g(t)|),  phi(r) = r / (1 + r).
/// The maximum is taken over grid points; the omitted tail is at most 2^-K.
[[nodiscard]] MetricValue traj_metric(const SampledFunction& f,
                                      const SampledFunction& g, int K);

}  // namespace srm
