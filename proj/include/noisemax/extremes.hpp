#ifndef NOISEMAX_EXTREMES_HPP
#define NOISEMAX_EXTREMES_HPP

// Gumbel normalization of path maxima and goodness-of-fit against
// G(z) = exp(-exp(-z)).

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "noisemax/coeffs.hpp"
#include "noisemax/errors.hpp"
#include "noisemax/maxfind.hpp"

namespace noisemax {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Location/scale of the Gumbel limit for sup X_n, with no fitted parameters:
/// M / sigma_n <= a_n + (shift + z) / a_n, a_n = sqrt(2 log n),
/// shift = log(sqrt(c) / (sqrt(2) pi)), c = 2 pi^2 (1 - alpha) / (3 - alpha).
struct GumbelNormalization {
  std::int64_t n = 0;
  double sigma_n = 0;
  double a_n = 0;
  double c = 0;
  double shift = 0;
};

/// Throws DomainError for n < 2.
GumbelNormalization normalization(const CoefficientModel& m, std::int64_t n);

/// Same from explicit parameters; n is real so that e.g. n = e^8 can be used.
GumbelNormalization normalization(double alpha, double n, double sigma_n);

/// z = a_n (raw_max / sigma_n - a_n) - shift.
inline double to_z(const GumbelNormalization& g, double raw_max) {
  return g.a_n * (raw_max / g.sigma_n - g.a_n) - g.shift;
}

/// Normalized threshold a_n + (shift + z)/a_n that raw_max / sigma_n is compared to.
inline double threshold(const GumbelNormalization& g, double z) {
  return g.a_n + (g.shift + z) / g.a_n;
}

template <typename Scalar>
Scalar gumbel_cdf(Scalar z) {
  using std::exp;
  return exp(-exp(-z));
}

/// -log(-log p); DomainError unless 0 < p < 1.
template <typename Scalar>
Scalar gumbel_quantile(Scalar p) {
  using std::log;
  if (!(p > Scalar(0) && p < Scalar(1))) throw DomainError("gumbel_quantile needs 0 < p < 1");
  return -log(-log(p));
}

/// Asymptotic Kolmogorov distribution K(x) = 1 - 2 sum_{j>=1} (-1)^{j-1} e^{-2 j^2 x^2}.
double kolmogorov_cdf(double x);

struct KsResult {
  double distance = 0;
  double p_value = 1;
};

/// One-sample KS distance to G, exact over the order statistics (the
/// empirical CDF is right-continuous with jumps 1/m), and the asymptotic
/// p-value 1 - K(sqrt(m) D). Needs at least 2 samples.
KsResult ks_test(std::span<const double> z_samples);

/// Two-sample KS distance between empirical CDFs.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Maximum-likelihood Gumbel fit; diagnostics only.
struct GumbelFit {
  double location = 0;
  double scale = 1;
  bool converged = false;
};
GumbelFit fit_gumbel(std::span<const double> samples);

struct MaxSample {
  std::uint64_t replicate = 0;
  double raw_max = 0;
  double z = 0;
  double location = 0;
};

inline constexpr std::array<double, 7> kReportProbabilities = {0.01, 0.05, 0.25, 0.5,
                                                               0.75, 0.95, 0.99};

struct QuantileRow {
  double p = 0;
  double empirical = 0;
  double gumbel = 0;
};

struct GumbelReport {
  std::int64_t n = 0;
  std::uint64_t replicates = 0;
  std::uint64_t seed = 0;
  GumbelNormalization norm;
  KsResult ks;
  double sample_mean = 0;
  double sample_var = 0;
  std::vector<QuantileRow> quantiles;
  GumbelFit fitted;
  std::vector<MaxSample> samples;  ///< in replicate order
};

struct ReportOptions {
  int oversample = kDefaultOversample;
  unsigned threads = 1;
  /// Test hook for the self-test: added to every raw maximum, in units of sigma_n.
  double perturbation = 0;
};

/// Empirical quantile: smallest order statistic x with F_hat(x) >= p.
double empirical_quantile(std::span<const double> sorted, double p);

/// Aggregates already computed samples into a report.
GumbelReport summarize(const GumbelNormalization& norm, std::vector<MaxSample> samples,
                       std::uint64_t seed);

/// draw -> global_max -> to_z for replicates 0..reps-1 of `seed`. Results do
/// not depend on `opts.threads`. A refinement failure is rethrown as a
/// RefinementError naming the replicate. Needs reps >= 100.
GumbelReport report(const CoefficientModel& m, std::int64_t n, std::uint64_t reps,
                    std::uint64_t seed, const ReportOptions& opts = {});

}  // namespace noisemax

#endif  // NOISEMAX_EXTREMES_HPP
