#include "noisemax/extremes.hpp"

#include <algorithm>
#include <numbers>

#include "noisemax/covar.hpp"
#include "noisemax/parallel.hpp"
#include "noisemax/summation.hpp"
#include "noisemax/synth.hpp"

namespace noisemax {

GumbelNormalization normalization(double alpha, double n, double sigma_n) {
  if (!(n >= 2)) throw DomainError("Gumbel normalization needs n >= 2");
  if (!(alpha < 1)) throw DomainError("Gumbel normalization needs alpha < 1");
  if (!(sigma_n > 0)) throw DomainError("sigma_n must be positive");
  GumbelNormalization g;
  g.n = static_cast<std::int64_t>(n);
  g.sigma_n = sigma_n;
  g.a_n = std::sqrt(2.0 * std::log(n));
  g.c = c_limit(alpha);
  g.shift = std::log(std::sqrt(g.c) / (std::numbers::sqrt2 * std::numbers::pi));
  return g;
}

GumbelNormalization normalization(const CoefficientModel& m, std::int64_t n) {
  if (n < 2) throw DomainError("Gumbel normalization needs n >= 2");
  m.validate();
  return normalization(m.alpha, static_cast<double>(n), std::sqrt(sigma_sq(m, n)));
}

double kolmogorov_cdf(double x) {
  if (!(x > 0)) return 0.0;
  constexpr double kTol = 1e-10;
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  if (x < 1.0) {
    // Theta-dual form of the same series; converges fast for small x.
    double sum = 0;
    for (int j = 1; j < 1000; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * x * x));
      sum += term;
      if (term < kTol) break;
    }
    return std::sqrt(2.0 * std::numbers::pi) / x * sum;
  }
  double sum = 0;
  for (int j = 1; j < 1000; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1) ? term : -term;
    if (term < kTol) break;
  }
  return 1.0 - 2.0 * sum;
}

KsResult ks_test(std::span<const double> z_samples) {
  if (z_samples.size() < 2) throw DomainError("ks_test needs at least 2 samples");
  std::vector<double> x(z_samples.begin(), z_samples.end());
  std::ranges::sort(x);
  const double m = static_cast<double>(x.size());
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = gumbel_cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / m - g, g - static_cast<double>(i) / m});
  }
  KsResult r;
  r.distance = std::clamp(d, 0.0, 1.0);
  r.p_value = std::clamp(1.0 - kolmogorov_cdf(std::sqrt(m) * r.distance), 0.0, 1.0);
  return r;
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample needs nonempty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::ranges::sort(x);
  std::ranges::sort(y);
  std::size_t i = 0, j = 0;
  double d = 0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / x.size() - static_cast<double>(j) / y.size()));
  }
  return d;
}

GumbelFit fit_gumbel(std::span<const double> samples) {
  if (samples.size() < 2) throw DomainError("fit_gumbel needs at least 2 samples");
  const double m = static_cast<double>(samples.size());
  CompensatedSum<double> s, s2;
  for (double x : samples) s += x;
  const double mean = s.value() / m;
  for (double x : samples) s2 += (x - mean) * (x - mean);
  const double sd = std::sqrt(s2.value() / (m - 1));

  // The scale solves beta = -sum y e^{-y/beta} / sum e^{-y/beta}, y = x - mean.
  GumbelFit fit;
  double beta = sd * std::sqrt(6.0) / std::numbers::pi;
  for (int it = 0; it < 500 && beta > 0; ++it) {
    double num = 0, den = 0;
    for (double x : samples) {
      const double y = x - mean;
      const double e = std::exp(-y / beta);
      num += y * e;
      den += e;
    }
    const double next = 0.5 * beta + 0.5 * (-num / den);
    if (std::abs(next - beta) <= 1e-13 * beta) {
      beta = next;
      fit.converged = true;
      break;
    }
    beta = next;
  }
  double den = 0;
  for (double x : samples) den += std::exp(-(x - mean) / beta);
  fit.scale = beta;
  fit.location = mean - beta * std::log(den / m);
  return fit;
}

double empirical_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw DomainError("empirical_quantile of empty sample");
  if (!(p > 0 && p <= 1)) throw DomainError("empirical_quantile needs 0 < p <= 1");
  const auto m = static_cast<double>(sorted.size());
  auto i = static_cast<std::size_t>(std::ceil(p * m - 1e-9));
  i = std::clamp<std::size_t>(i, 1, sorted.size());
  return sorted[i - 1];
}

GumbelReport summarize(const GumbelNormalization& norm, std::vector<MaxSample> samples,
                       std::uint64_t seed) {
  GumbelReport r;
  r.n = norm.n;
  r.norm = norm;
  r.seed = seed;
  r.replicates = samples.size();
  std::vector<double> z;
  z.reserve(samples.size());
  for (const auto& s : samples) z.push_back(s.z);
  r.ks = ks_test(z);

  const double m = static_cast<double>(z.size());
  CompensatedSum<double> sum, sq;
  for (double v : z) sum += v;
  r.sample_mean = sum.value() / m;
  for (double v : z) sq += (v - r.sample_mean) * (v - r.sample_mean);
  r.sample_var = sq.value() / (m - 1);

  std::vector<double> sorted = z;
  std::ranges::sort(sorted);
  for (double p : kReportProbabilities) {
    r.quantiles.push_back({p, empirical_quantile(sorted, p), gumbel_quantile(p)});
  }
  r.fitted = fit_gumbel(z);
  r.samples = std::move(samples);
  return r;
}

GumbelReport report(const CoefficientModel& m, std::int64_t n, std::uint64_t reps,
                    std::uint64_t seed, const ReportOptions& opts) {
  if (reps < 100) throw PreconditionError("report needs at least 100 replicates");
  const GumbelNormalization norm = normalization(m, n);
  std::vector<MaxSample> samples(reps);
  parallel_for(reps, opts.threads, [&](std::size_t i) {
    const SeedPath path{seed, i};
    const NoiseDraw d = draw(m, n, path);
    MaxResult best;
    try {
      best = global_max(d, opts.oversample);
    } catch (const RefinementError& e) {
      throw RefinementError("replicate " + std::to_string(i) + ": " + e.what(), path);
    }
    const double raw = best.value + opts.perturbation * norm.sigma_n;
    samples[i] = {i, raw, to_z(norm, raw), best.location};
  });
  return summarize(norm, std::move(samples), seed);
}

}  // namespace noisemax
