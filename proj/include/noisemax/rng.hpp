#ifndef NOISEMAX_RNG_HPP
#define NOISEMAX_RNG_HPP

// Counter-based Gaussian variates. Every variate is a pure function of
// (master seed, replicate, index): no generator state, so results do not
// depend on evaluation order or thread count.

#include <array>
#include <cstdint>
#include <utility>

#include "noisemax/errors.hpp"

namespace noisemax {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

/// SplitMix64 finalizer; used to spread the master seed over the key.
std::uint64_t splitmix64(std::uint64_t x);

/// Uniform in (0, 1] from the top 53 bits of a 64-bit word.
inline double uniform_open_closed(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Uniform in [0, 1) from the top 53 bits of a 64-bit word.
inline double uniform_closed_open(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

class GaussianStream {
 public:
  explicit GaussianStream(SeedPath path);

  /// Independent standard normal pair number `index` (Box-Muller on one
  /// Philox block).
  std::pair<double, double> normal_pair(std::uint64_t index) const;

  /// Raw 128-bit block number `index`.
  PhiloxCounter block(std::uint64_t index) const;

  const SeedPath& path() const { return path_; }

 private:
  SeedPath path_;
  PhiloxKey key_;
};

}  // namespace noisemax

#endif  // NOISEMAX_RNG_HPP
