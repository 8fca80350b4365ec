#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

#include "droneqc/constants.hpp"

namespace droneqc {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Counter-based random stream: the stream for (seed, index) is a pure
/// function of both values, so sample `index` draws the same numbers no
/// matter how work is split across threads or in what order samples run.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t a = detail::splitmix64(s);
    s = index ^ 0xd1b54a32d192ed03ULL;
    std::uint64_t b = detail::splitmix64(s);
    state_ = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }

  /// Uniform draw on [0, 1).
  double uniform() {
    return static_cast<double>(detail::splitmix64(state_) >> 11) * 0x1.0p-53;
  }

  /// Uniform draw on (0, 1], safe as a logarithm argument.
  double uniform_positive() { return 1.0 - uniform(); }

  /// Box-Muller pair of independent standard normals. Consumes exactly two
  /// uniforms, keeping the draw count per sample fixed.
  std::pair<double, double> normal_pair() {
    const double u1 = uniform_positive();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace droneqc
