#ifndef NOISEMAX_COEFFS_HPP
#define NOISEMAX_COEFFS_HPP

// Regularly varying spectral weights R(t) = L(t) t^{-alpha} and numeric
// checks of their partial-sum asymptotics.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace noisemax {

/// Slowly varying part L of the weight function.
enum class SlowFamily {
  constant,  ///< L(t) = c0
  logpower,  ///< L(t) = c0 * log(e + t)^beta
};

std::string_view to_string(SlowFamily f);
SlowFamily parse_family(std::string_view name);

/// R(t) = L(t) t^{-alpha} with alpha < 1. Below the monotonization cut A the
/// weight is frozen at R(A), which makes R monotone on (0, inf) for the
/// supported families without changing its tail.
struct CoefficientModel {
  double alpha = 0.0;
  SlowFamily family = SlowFamily::constant;
  double c0 = 1.0;
  double beta = 0.0;
  double cut = 1.0;

  static CoefficientModel constant(double alpha, double c0 = 1.0);
  static CoefficientModel logpower(double alpha, double c0, double beta);

  /// Throws DomainError unless alpha < 1, c0 > 0, cut > 0 and all finite.
  void validate() const;

  friend bool operator==(const CoefficientModel&, const CoefficientModel&) = default;
};

/// Default cut: 1 for the constant family, e for logpower.
double default_cut(SlowFamily f);

/// Flat key=value form, e.g. "alpha=0.5 family=logpower c0=1 beta=1 cut=2.718281828459045".
/// Numbers use the shortest round-trip representation.
std::string to_string(const CoefficientModel& m);

/// Inverse of to_string. Missing keys take defaults (family=constant, c0=1,
/// beta=0, cut=default_cut(family)); alpha is required. The result is validated.
CoefficientModel parse_model(std::string_view text);

/// L(t), no cut applied.
double slowly_varying(const CoefficientModel& m, double t);

/// L(t) t^{-alpha}, no cut applied.
double raw_weight(const CoefficientModel& m, double t);

/// R(k) for integer k >= 1 with the cut applied. Throws DomainError for k < 1.
double weight(const CoefficientModel& m, std::int64_t k);

/// sigma_n^2 = sum_{k=1}^n R(k), compensated.
double sigma_sq(const CoefficientModel& m, std::int64_t n);

/// [sum_{k<=n} k^p R(k)] (1 + p - alpha) / (n^{p+1} R(n)); tends to 1.
/// Throws PreconditionError when p - alpha <= -1.
double karamata_ratio(const CoefficientModel& m, std::int64_t n, int power);

/// R(lambda x) / R(x) using the uncut weight; tends to lambda^{-alpha}.
double regular_variation_ratio(const CoefficientModel& m, double lambda, double x);

/// Smallest C >= 1 with L(x)/L(y) <= C max((x/y)^delta, (y/x)^delta) over
/// all pairs (x, y) in x_grid x y_grid. The floor of 1 is the diagonal x = y.
double potter_envelope(const CoefficientModel& m, double delta,
                       std::span<const double> x_grid,
                       std::span<const double> y_grid);

/// Total change sum_{k<A} |R_raw(k) - R(k)| caused by the monotonization cut.
double cut_mass(const CoefficientModel& m);

}  // namespace noisemax

#endif  // NOISEMAX_COEFFS_HPP
