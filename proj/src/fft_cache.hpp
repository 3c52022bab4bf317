#ifndef NOISEMAX_SRC_FFT_CACHE_HPP
#define NOISEMAX_SRC_FFT_CACHE_HPP

#include <unsupported/Eigen/FFT>

namespace noisemax::detail {

// Eigen's FFT caches plans per size and is not safe to share across threads.
inline Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}

}  // namespace noisemax::detail

#endif  // NOISEMAX_SRC_FFT_CACHE_HPP
