#ifndef NOISEMAX_MAXFIND_HPP
#define NOISEMAX_MAXFIND_HPP

#include <Eigen/Core>

#include "noisemax/synth.hpp"

namespace noisemax {

/// Global extremum of a draw over one period.
struct MaxResult {
  double value = 0;       ///< polished extremum
  double location = 0;    ///< in [-pi, pi)
  int iterations = 0;     ///< total refinement steps over all candidates
  double grid_value = 0;  ///< best grid value before refinement
  int candidates = 0;     ///< grid maxima that were polished
};

inline constexpr int kDefaultOversample = 8;
inline constexpr int kMaxRefineIterations = 100;

/// sup_{t in [-pi, pi]} X_n(t).
///
/// Samples X and X'' on N = next_pow2(oversample * n) points, keeps every
/// strict grid maximum within Delta = (pi n / N)^2 * max|X''|/n^2 of the best
/// grid value, and polishes each one with Newton's method on X' inside its
/// grid bracket (bisection whenever a step leaves the bracket or the
/// curvature has the wrong sign). Ties within 1e-12 sigma go to the smaller
/// location.
///
/// Throws DomainError if oversample < 4 and RefinementError (carrying the
/// draw's seed path) if a candidate fails to converge in 100 steps.
MaxResult global_max(const NoiseDraw& d, int oversample = kDefaultOversample);

/// inf_t X_n(t), computed as -global_max(-X_n).
MaxResult global_min(const NoiseDraw& d, int oversample = kDefaultOversample);

}  // namespace noisemax

#endif  // NOISEMAX_MAXFIND_HPP
