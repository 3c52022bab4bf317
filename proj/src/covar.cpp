#include "noisemax/covar.hpp"

#include <algorithm>
#include <complex>
#include <vector>

#include "fft_cache.hpp"
#include "noisemax/errors.hpp"
#include "noisemax/summation.hpp"

namespace noisemax {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// R(1..n) with its compensated total.
struct Spectrum {
  std::vector<double> r;  // r[k-1] = R(k)
  double total = 0;

  Spectrum(const CoefficientModel& m, std::int64_t n) : r(static_cast<std::size_t>(n)) {
    if (n < 1) throw DomainError("degree n must be >= 1");
    CompensatedSum<double> acc;
    for (std::int64_t k = 1; k <= n; ++k) {
      r[k - 1] = weight(m, k);
      acc += r[k - 1];
    }
    total = acc.value();
  }

  std::int64_t n() const { return static_cast<std::int64_t>(r.size()); }
};

// cos(2 pi k t / n) with the phase reduced in extended precision.
double cos_phase(std::int64_t k, double t, std::int64_t n) {
  long double x = static_cast<long double>(k) * static_cast<long double>(t) /
                  static_cast<long double>(n);
  x -= std::roundl(x);
  return std::cos(kTwoPi * static_cast<double>(x));
}

double rho_direct(const Spectrum& s, double t) {
  CompensatedSum<double> acc;
  for (std::int64_t k = 1; k <= s.n(); ++k) acc += s.r[k - 1] * cos_phase(k, t, s.n());
  return acc.value() / s.total;
}

// cos x - 1 + x^2/2 without cancellation for small x.
double quartic_remainder(double x) {
  const double x2 = x * x;
  if (std::abs(x) < 0.5) {
    // Taylor tail x^4/4! - x^6/6! + ... through x^16; truncation < 1e-20.
    double term = x2 * x2 / 24.0;
    double sum = 0;
    for (int j = 2; j <= 8; ++j) {
      sum += term;
      term *= -x2 / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
    }
    return sum;
  }
  return std::cos(x) - 1.0 + 0.5 * x2;
}

double remainder_direct(const Spectrum& s, double t) {
  CompensatedSum<double> acc;
  const double nd = static_cast<double>(s.n());
  for (std::int64_t k = 1; k <= s.n(); ++k) {
    acc += s.r[k - 1] * quartic_remainder(kTwoPi * static_cast<double>(k) * t / nd);
  }
  return acc.value() / s.total;
}

double c_n_from(const Spectrum& s) {
  CompensatedSum<double> acc;
  for (std::int64_t k = 1; k <= s.n(); ++k) {
    const double kd = static_cast<double>(k);
    acc += kd * kd * s.r[k - 1];
  }
  const double nd = static_cast<double>(s.n());
  return 2.0 * std::numbers::pi * std::numbers::pi * acc.value() / (nd * nd * s.total);
}

Eigen::VectorXd lattice_rho(const Spectrum& s, int per_unit, Eigen::Index count) {
  if (per_unit < 1) throw DomainError("per_unit must be >= 1");
  const std::int64_t M = static_cast<std::int64_t>(per_unit) * s.n();
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(M)), out;
  for (std::int64_t k = 1; k <= s.n(); ++k) spectrum[k % M] += s.r[k - 1];
  detail::thread_fft().inv(out, spectrum);
  Eigen::VectorXd values(count);
  for (Eigen::Index j = 0; j < count; ++j) values[j] = out[j % M].real() / s.total;
  values[0] = 1.0;
  return values;
}

ConditionReport blank_report(int condition, const CoefficientModel& m, std::int64_t n) {
  ConditionReport r;
  r.condition = condition;
  r.n = n;
  r.alpha = m.alpha;
  r.family = std::string(to_string(m.family));
  return r;
}

// Lattice indices covering [lo, hi] at step 1/per_unit.
std::pair<Eigen::Index, Eigen::Index> lattice_span(double lo, double hi, int per_unit) {
  const auto first = static_cast<Eigen::Index>(std::ceil(lo * per_unit - 1e-9));
  const auto last = static_cast<Eigen::Index>(std::floor(hi * per_unit + 1e-9));
  return {first, last};
}

}  // namespace

double CovarianceProfile::rho(double t) const { return noisemax::rho(model, n, t); }

double rho_periodic(const CoefficientModel& m, std::int64_t n, double t) {
  return rho_direct(Spectrum(m, n), t);
}

double rho(const CoefficientModel& m, std::int64_t n, double t) {
  if (n < 1) throw DomainError("degree n must be >= 1");
  if (!(std::abs(t) <= 0.5 * static_cast<double>(n))) {
    throw DomainError("rho_n is defined for |t| <= n/2");
  }
  if (t == 0.0) return 1.0;
  return rho_periodic(m, n, t);
}

RhoTable tabulate_rho(const CoefficientModel& m, std::int64_t n, int per_unit,
                      std::optional<double> t_max) {
  const Spectrum s(m, n);
  const double hi = t_max.value_or(0.5 * static_cast<double>(n));
  if (hi < 0) throw DomainError("t_max must be non-negative");
  RhoTable table;
  table.n = n;
  table.per_unit = per_unit;
  table.sigma_sq = s.total;
  table.values = lattice_rho(s, per_unit, lattice_span(0.0, hi, per_unit).second + 1);
  return table;
}

CovarianceProfile make_profile(const CoefficientModel& m, std::int64_t n, int per_unit,
                               std::optional<double> t_max) {
  CovarianceProfile p;
  p.n = n;
  p.model = m;
  p.model_id = to_string(m);
  p.table = tabulate_rho(m, n, per_unit, t_max);
  p.sigma_sq = p.table.sigma_sq;
  p.c_n = c_n(m, n);
  return p;
}

double c_n(const CoefficientModel& m, std::int64_t n) { return c_n_from(Spectrum(m, n)); }

double c_limit(double alpha) {
  return 2.0 * std::numbers::pi * std::numbers::pi * (1.0 - alpha) / (3.0 - alpha);
}

double taylor_remainder(const CoefficientModel& m, std::int64_t n, double t) {
  return remainder_direct(Spectrum(m, n), t);
}

std::optional<double> ConditionReport::detail(const std::string& key) const {
  for (const auto& [k, v] : details) {
    if (k == key) return v;
  }
  return std::nullopt;
}

ConditionReport check_condition1(const CoefficientModel& m, std::int64_t n, double t_max,
                                 double eps_budget, int grid_points) {
  if (!(t_max > 0 && t_max <= 1)) throw DomainError("condition 1 needs 0 < t_max <= 1");
  if (grid_points < 1) throw DomainError("grid_points must be >= 1");
  const Spectrum s(m, n);
  ConditionReport r = blank_report(1, m, n);
  double sup = -1;
  for (int i = 1; i <= grid_points; ++i) {
    const double t = t_max * i / grid_points;
    const double ratio = std::abs(remainder_direct(s, t)) / (t * t);
    if (ratio > sup) {
      sup = ratio;
      r.achieving_t = t;
    }
  }
  r.sup_value = sup;
  r.pass = sup <= eps_budget;
  r.details = {{"c_n", c_n_from(s)},
               {"c_limit", c_limit(m.alpha)},
               {"t_max", t_max},
               {"eps_budget", eps_budget}};
  return r;
}

ConditionReport check_condition2(const CoefficientModel& m, std::int64_t n, double T,
                                 double eps, int per_unit) {
  const double half = 0.5 * static_cast<double>(n);
  if (T < 1.0) throw DomainError("condition 2 needs T >= 1");
  if (T > half) throw DomainError("condition 2 needs T <= n/2");
  const Spectrum s(m, n);
  ConditionReport r = blank_report(2, m, n);

  double sup = rho_direct(s, T) * std::log(T);
  r.achieving_t = T;
  const auto [first, last] = lattice_span(T, half, per_unit);
  if (last >= first) {
    const Eigen::VectorXd table = lattice_rho(s, per_unit, last + 1);
    for (Eigen::Index j = first; j <= last; ++j) {
      const double t = static_cast<double>(j) / per_unit;
      const double value = table[j] * std::log(t);
      if (value > sup) {
        sup = value;
        r.achieving_t = t;
      }
    }
  }
  r.sup_value = sup;
  r.pass = sup < eps;
  r.details = {{"T", T},
               {"eps", eps},
               {"step", 1.0 / per_unit},
               {"cut_effect", cut_mass(m) / s.total}};
  return r;
}

ConditionReport check_condition3(const CoefficientModel& m, std::int64_t n, double eps,
                                 double margin, int per_unit) {
  const double upper = std::max(0.5 * static_cast<double>(n), 1.0);
  if (!(eps > 0 && eps < upper)) throw DomainError("condition 3 needs 0 < eps < max(n/2, 1)");
  const Spectrum s(m, n);
  ConditionReport r = blank_report(3, m, n);

  const auto [first, last] = lattice_span(eps, upper, per_unit);
  const Eigen::VectorXd table = lattice_rho(s, per_unit, std::max<Eigen::Index>(last, 0) + 1);
  double sup = rho_direct(s, eps);
  r.achieving_t = eps;
  for (Eigen::Index j = first; j <= last; ++j) {
    if (table[j] > sup) {
      sup = table[j];
      r.achieving_t = static_cast<double>(j) / per_unit;
    }
  }
  r.sup_value = sup;
  r.pass = sup < 1.0 - margin;

  // Where |rho_n| stays below 1/2 from then on (beyond the scanned lattice
  // condition 2 takes over).
  double t_half = eps;
  for (Eigen::Index j = last; j >= first; --j) {
    if (std::abs(table[j]) >= 0.5) {
      t_half = std::max(eps, static_cast<double>(j + 1) / per_unit);
      break;
    }
  }

  // Band argument: frequencies k in [an, 2an] keep |cos(2 pi k t/n)| away
  // from 1 on [eps, t_half] as long as 4 pi a t_half < pi.
  const double nd = static_cast<double>(n);
  double best_bound = 1.0, best_a = 0, best_eta = 0, best_finite = 1.0;
  for (int p = 2; p <= 14; ++p) {
    const double a = std::ldexp(1.0, -p);
    if (4.0 * a * t_half >= 1.0) continue;
    const double eta =
        1.0 - std::max(std::abs(std::cos(kTwoPi * a * eps)), std::abs(std::cos(2.0 * kTwoPi * a * t_half)));
    const double bound =
        1.0 - (std::pow(2.0, 1.0 - m.alpha) - 1.0) * std::pow(a, 1.0 - m.alpha) * eta;
    // Finite-n counterpart: 1 - eta * sum_{k in [an, 2an]} R(k) / sigma_n^2.
    CompensatedSum<double> band;
    const auto k_lo = static_cast<std::int64_t>(std::ceil(a * nd));
    const auto k_hi = std::min<std::int64_t>(static_cast<std::int64_t>(std::floor(2 * a * nd)), n);
    for (std::int64_t k = std::max<std::int64_t>(k_lo, 1); k <= k_hi; ++k) band += s.r[k - 1];
    const double finite = 1.0 - eta * band.value() / s.total;
    if (bound < best_bound) {
      best_bound = bound;
      best_a = a;
      best_eta = eta;
      best_finite = finite;
    }
  }
  r.details = {{"eps", eps},         {"margin", margin},         {"t_half", t_half},
               {"band_a", best_a},   {"band_eta", best_eta},     {"band_bound", best_bound},
               {"band_bound_finite_n", best_finite}};
  if (upper > 0.5 * nd) r.note = "scan extended to lag 1 (one full period for n = 1)";
  return r;
}

namespace {

struct SplitTerms {
  double s1 = 0, s2 = 0, abel = 0, abel_bound = 0, dirichlet_worst = 0;
};

// S1 = sum_{k < [n/t]} R(k) cos(2 pi k t/n) / sigma^2, S2 the rest, plus the
// summation-by-parts form of S2 and its absolute bound.
SplitTerms split_terms(const Spectrum& s, double t) {
  const std::int64_t n = s.n();
  const auto m = static_cast<std::int64_t>(std::floor(static_cast<double>(n) / t));
  const double x = t / static_cast<double>(n);
  const double dbound = dirichlet_bound(n, t);
  SplitTerms out;
  CompensatedSum<double> s1, s2, abel, bound;
  for (std::int64_t k = 1; k <= n; ++k) {
    const double term = s.r[k - 1] * cos_phase(k, t, n);
    if (k < m) {
      s1 += term;
    } else {
      s2 += term;
    }
  }
  auto kernel = [&](std::int64_t k) {
    const double d = dirichlet_kernel<double>(k, x);
    out.dirichlet_worst = std::max(out.dirichlet_worst, std::abs(d) / dbound);
    return d;
  };
  for (std::int64_t k = m; k <= n - 1; ++k) {
    const double d = kernel(k);
    const double diff = s.r[k - 1] - s.r[k];
    abel += d * diff;
    bound += std::abs(d) * std::abs(diff);
  }
  const double dn = kernel(n);
  const double dm = m - 1 >= 1 ? kernel(m - 1) : 0.0;
  abel += dn * s.r[n - 1] - dm * s.r[m - 1];
  bound += std::abs(dn) * s.r[n - 1] + std::abs(dm) * s.r[m - 1];
  out.s1 = s1.value() / s.total;
  out.s2 = s2.value() / s.total;
  out.abel = abel.value() / s.total;
  out.abel_bound = bound.value() / s.total;
  return out;
}

double envelope_denominator(double alpha, double delta, double t) {
  return std::max(std::pow(t, alpha - 1.0 + delta), 1.0 / t);
}

void accumulate_split(const CoefficientModel& m, const Spectrum& s, double t,
                      TailBoundReport& r) {
  const double nd = static_cast<double>(s.n());
  const SplitTerms st = split_terms(s, t);
  const double slow = slowly_varying(m, nd / t) / slowly_varying(m, nd);
  const double s1_scale = std::pow(t, m.alpha - 1.0) * slow;
  r.s1_constant = std::max(r.s1_constant, std::abs(st.s1) / s1_scale);
  r.s2_constant = std::max(r.s2_constant, std::abs(st.s2) / std::max(s1_scale, 1.0 / t));
  r.abel_identity_error = std::max(r.abel_identity_error, std::abs(st.s2 - st.abel));
  if (std::abs(st.s2) > st.abel_bound * (1 + 1e-12) + 1e-15) r.abel_bound_ok = false;
  r.dirichlet_worst = std::max(r.dirichlet_worst, st.dirichlet_worst);
  if (st.dirichlet_worst > 1.0 + 1e-12) r.dirichlet_ok = false;
}

void check_tail_preconditions(const CoefficientModel& m, std::int64_t n, double delta) {
  if (!(delta > 0)) throw PreconditionError("tail bounds need delta > 0");
  if (m.alpha - 1.0 + delta >= 0) {
    throw PreconditionError("tail bounds need alpha - 1 + delta < 0");
  }
  if (n < 2) throw DomainError("tail bounds need n >= 2");
}

}  // namespace

TailBoundReport check_tail_bounds(const CoefficientModel& m, std::int64_t n,
                                  std::span<const double> t_grid, double delta) {
  check_tail_preconditions(m, n, delta);
  const double half = 0.5 * static_cast<double>(n);
  for (double t : t_grid) {
    if (!(t >= 1.0 && t <= half)) throw DomainError("tail grid points must lie in [1, n/2]");
  }
  const Spectrum s(m, n);
  TailBoundReport r;
  r.n = n;
  r.alpha = m.alpha;
  r.delta = delta;
  for (double t : t_grid) {
    const double ratio = std::abs(rho_direct(s, t)) / envelope_denominator(m.alpha, delta, t);
    if (ratio > r.envelope) {
      r.envelope = ratio;
      r.envelope_t = t;
    }
    accumulate_split(m, s, t, r);
  }
  r.points = t_grid.size();
  return r;
}

TailBoundReport check_tail_bounds_dense(const CoefficientModel& m, std::int64_t n,
                                        double delta, int per_unit, int sampled) {
  check_tail_preconditions(m, n, delta);
  const Spectrum s(m, n);
  const double half = 0.5 * static_cast<double>(n);
  const auto [first, last] = lattice_span(1.0, half, per_unit);
  const Eigen::VectorXd table = lattice_rho(s, per_unit, last + 1);
  TailBoundReport r;
  r.n = n;
  r.alpha = m.alpha;
  r.delta = delta;
  for (Eigen::Index j = first; j <= last; ++j) {
    const double t = static_cast<double>(j) / per_unit;
    const double ratio = std::abs(table[j]) / envelope_denominator(m.alpha, delta, t);
    if (ratio > r.envelope) {
      r.envelope = ratio;
      r.envelope_t = t;
    }
  }
  r.points = static_cast<std::size_t>(last - first + 1);
  for (int i = 0; i < sampled; ++i) {
    const double t = sampled == 1 ? 1.0 : std::pow(half, static_cast<double>(i) / (sampled - 1));
    accumulate_split(m, s, std::clamp(t, 1.0, half), r);
  }
  return r;
}

EnvelopeGrowth tail_envelope_growth(const CoefficientModel& m, std::int64_t n_small,
                                    std::int64_t n_large, double delta, int per_unit) {
  EnvelopeGrowth g;
  g.small = check_tail_bounds_dense(m, n_small, delta, per_unit);
  g.large = check_tail_bounds_dense(m, n_large, delta, per_unit);
  g.ratio = g.large.envelope / g.small.envelope;
  g.pass = g.ratio < 2.0;
  return g;
}

}  // namespace noisemax
