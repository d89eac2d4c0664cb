#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "srm/path_space.hpp"

namespace srm {

/// Raised when an operation needs a capability the update map lacks.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// x - floor(x), folded into [0, 1) even when rounding lands on 1.
[[nodiscard]] double frac(double x);

/// The update rule x_{n+1} = phi(x_n, xi_{n+1}) with an optional inverse
/// x_n = phi^{-1}(x_{n+1}, xi_{n+1}).
struct UpdateMap {
  using Fn = std::function<double(double, double)>;

  std::string name;
  Fn apply;
  std::optional<Fn> inverse_apply;
  /// State lives on the circle [0, 1); the initializer must be uniform there.
  bool circle_valued = false;
};

/// phi(x, y) = frac(x + y), inverse frac(x - y).
[[nodiscard]] UpdateMap fractional_map();

/// phi(x, y) = a x + y with |a| < 1; inverse (x - y) / a when a != 0.
[[nodiscard]] UpdateMap contraction_map(double a);

/// "fractional" or "contraction:a=<value>"; throws std::invalid_argument.
[[nodiscard]] UpdateMap parse_map(std::string_view spec);

enum class NoiseLaw { uniform, normal };

/// i.i.d. noise, counter-based: the value at absolute index i depends only on
/// (seed, i), so windows drawn over different ranges agree where they overlap.
struct NoiseModel {
  NoiseLaw law = NoiseLaw::uniform;
  std::uint64_t seed = 0;

  [[nodiscard]] double value_at(Index i) const;
  [[nodiscard]] NoiseWindow generate(IndexRange range) const;
};

[[nodiscard]] std::string_view to_string(NoiseLaw law);

/// x_{n0} = x0 with noise starting at n0 + 1; returns (x_{n0}, ..., x_{n0+L}).
[[nodiscard]] PathWindow iterate_forward(double x0, const NoiseWindow& noise,
                                         const UpdateMap& map);

/// Ends at the last noise index with value xn and walks back through the
/// inverse map; the result starts one index before the noise window.
[[nodiscard]] PathWindow iterate_backward(double xn, const NoiseWindow& noise,
                                          const UpdateMap& map);

/// Uniform law on [lo, hi) for the initializer eta.
struct InitializerLaw {
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const InitializerLaw&, const InitializerLaw&) = default;
};

[[nodiscard]] double draw_initializer(std::uint64_t init_seed, InitializerLaw law);

/// Where eta sits and which coordinates are returned.
struct Placement {
  Index init_index = 0;
  IndexRange window{0, 0};
};

/// Noise indices the sampler reads for a placement (empty when lo > hi).
[[nodiscard]] IndexRange required_noise(const Placement& placement);

/// Places eta at placement.init_index, runs the recursion forward (and
/// backward through the inverse when the window reaches left of eta), and
/// writes the window coordinates into `out`.
void fill_trajectory(const UpdateMap& map, const SequenceView& noise, double eta,
                     const Placement& placement, std::span<double> out);

/// Stationary-solution sampler: eta drawn from init_seed, independent of the
/// noise. Default placement puts eta one index before the noise window and
/// returns the whole forward path.
[[nodiscard]] PathWindow stationary_sampler(const UpdateMap& map,
                                            const NoiseWindow& noise,
                                            std::uint64_t init_seed);

[[nodiscard]] PathWindow stationary_sampler(const UpdateMap& map,
                                            const NoiseWindow& noise,
                                            std::uint64_t init_seed,
                                            const Placement& placement,
                                            InitializerLaw law = {});

}  // namespace srm
