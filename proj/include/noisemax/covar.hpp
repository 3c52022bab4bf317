#ifndef NOISEMAX_COVAR_HPP
#define NOISEMAX_COVAR_HPP

// Covariance of the time-rescaled process xi_n(t) = X_n(2 pi t / n) / sigma_n,
//   rho_n(t) = sigma_n^{-2} sum_{k=1}^n R(k) cos(2 pi k t / n),
// and numeric checks of the three uniform conditions under which maxima of a
// sequence of stationary Gaussian processes are Gumbel:
//   1. rho_n(t) = 1 - c_n t^2 + eps_n(t), eps_n(t)/t^2 -> 0 uniformly;
//   2. rho_n(t) log t < eps on [T(eps), n/2];
//   3. sup rho_n(t) < 1 on [eps, n/2].

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noisemax/coeffs.hpp"

namespace noisemax {

/// rho_n at lattice points t_j = j / per_unit, j = 0..size()-1.
struct RhoTable {
  std::int64_t n = 0;
  int per_unit = 10;
  double sigma_sq = 0;
  Eigen::VectorXd values;

  Eigen::Index size() const { return values.size(); }
  double t(Eigen::Index j) const { return static_cast<double>(j) / per_unit; }
};

struct CovarianceProfile {
  std::int64_t n = 0;
  double sigma_sq = 0;
  double c_n = 0;
  std::string model_id;
  CoefficientModel model;
  RhoTable table;  ///< lattice over [0, n/2]

  /// Direct evaluation; see noisemax::rho.
  double rho(double t) const;
};

/// Direct compensated sum. Throws DomainError when |t| > n/2.
double rho(const CoefficientModel& m, std::int64_t n, double t);

/// Same sum without the domain restriction (rho_n is even and n-periodic).
double rho_periodic(const CoefficientModel& m, std::int64_t n, double t);

/// Lattice tabulation over [0, t_max] through one inverse FFT of length
/// per_unit * n. t_max defaults to n/2; larger values wrap periodically.
RhoTable tabulate_rho(const CoefficientModel& m, std::int64_t n, int per_unit = 10,
                      std::optional<double> t_max = std::nullopt);

/// Tabulates over [0, t_max] (default n/2).
CovarianceProfile make_profile(const CoefficientModel& m, std::int64_t n, int per_unit = 10,
                               std::optional<double> t_max = std::nullopt);

/// c_n = 2 pi^2 / (n^2 sigma_n^2) sum_{k<=n} k^2 R(k).
double c_n(const CoefficientModel& m, std::int64_t n);

/// Limit of c_n: 2 pi^2 (1 - alpha) / (3 - alpha).
double c_limit(double alpha);

/// eps_n(t) = rho_n(t) - 1 + c_n t^2, evaluated termwise without
/// cancellation so that eps_n(t)/t^2 stays accurate as t -> 0.
double taylor_remainder(const CoefficientModel& m, std::int64_t n, double t);

/// One condition check. Extra diagnostics go in `details` (ordered).
struct ConditionReport {
  int condition = 0;
  std::int64_t n = 0;
  double alpha = 0;
  std::string family;
  std::optional<double> sup_value;  ///< empty when the scan range is empty
  double achieving_t = 0;
  bool pass = false;
  std::vector<std::pair<std::string, double>> details;
  std::string note;

  std::optional<double> detail(const std::string& key) const;
};

/// sup_{0<t<=t_max} |eps_n(t)| / t^2 on `grid_points` equispaced points;
/// pass iff <= eps_budget. Requires 0 < t_max <= 1.
ConditionReport check_condition1(const CoefficientModel& m, std::int64_t n, double t_max,
                                 double eps_budget, int grid_points = 256);

/// sup_{t in [T, n/2]} rho_n(t) log t on a lattice of step 1/per_unit plus
/// the endpoint T; pass iff < eps. Requires 1 <= T <= n/2.
/// Details include the monotonization-cut term cut_mass / sigma_n^2.
ConditionReport check_condition2(const CoefficientModel& m, std::int64_t n, double T,
                                 double eps, int per_unit = 10);

/// sup_{t in [eps, L]} rho_n(t), L = max(n/2, 1); pass iff < 1 - margin.
/// Also reports the band bound 1 - (2^{1-alpha} - 1) a^{1-alpha} eta for the
/// best a in {2^-2, ..., 2^-14}, with eta the largest value such that
/// |cos(2 pi k t/n)| < 1 - eta for k in [an, 2an], t in [eps, T_half], where
/// T_half is where rho_n drops below 1/2 for good.
ConditionReport check_condition3(const CoefficientModel& m, std::int64_t n, double eps,
                                 double margin = 1e-3, int per_unit = 10);

/// D_k(t) = sum_{j=1}^k cos(2 pi j t) = (sin((2k+1) pi t) / sin(pi t) - 1) / 2.
/// Returns k at integer t.
template <typename Scalar>
Scalar dirichlet_kernel(std::int64_t k, Scalar t) {
  using std::acos;
  using std::round;
  using std::sin;
  const Scalar r = t - round(t);  // D_k has period 1
  if (r == Scalar(0)) return Scalar(k);
  const Scalar pi = acos(Scalar(-1));
  return (sin(Scalar(2 * k + 1) * pi * r) / sin(pi * r) - Scalar(1)) / Scalar(2);
}

/// |D_k(t/n)| <= 1/2 + n/(kappa t) with kappa = 2 (sin(pi x) >= 2x on [0, 1/2]).
inline double dirichlet_bound(std::int64_t n, double t) {
  return 0.5 + static_cast<double>(n) / (2.0 * t);
}

struct TailBoundReport {
  std::int64_t n = 0;
  double alpha = 0;
  double delta = 0;
  double envelope = 0;       ///< max_t |rho_n(t)| / max(t^{alpha-1+delta}, 1/t)
  double envelope_t = 0;
  double s1_constant = 0;    ///< max_t |S1| / (t^{alpha-1} L(n/t)/L(n))
  double s2_constant = 0;    ///< max_t |S2| / max(t^{alpha-1} L(n/t)/L(n), 1/t)
  double abel_identity_error = 0;  ///< max |S2 - summation-by-parts form|
  bool abel_bound_ok = true;       ///< |S2| <= bracketed Abel bound everywhere
  double dirichlet_worst = 0;      ///< max |D_k(t/n)| / (1/2 + n/(2t))
  bool dirichlet_ok = true;
  std::size_t points = 0;
};

/// Tail estimates on the given t values (each in [1, n/2]), all by direct
/// summation. Requires alpha - 1 + delta < 0 (PreconditionError).
TailBoundReport check_tail_bounds(const CoefficientModel& m, std::int64_t n,
                                  std::span<const double> t_grid, double delta);

/// Envelope over the whole lattice [1, n/2] (step 1/per_unit, via FFT), with
/// the S1/S2/Abel/Dirichlet checks on `sampled` log-spaced points.
TailBoundReport check_tail_bounds_dense(const CoefficientModel& m, std::int64_t n,
                                        double delta, int per_unit = 10, int sampled = 48);

struct EnvelopeGrowth {
  TailBoundReport small, large;
  double ratio = 0;
  bool pass = false;  ///< ratio < 2
};

EnvelopeGrowth tail_envelope_growth(const CoefficientModel& m, std::int64_t n_small,
                                    std::int64_t n_large, double delta, int per_unit = 10);

}  // namespace noisemax

#endif  // NOISEMAX_COVAR_HPP
