#include "noisemax/synth.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <vector>

#include "fft_cache.hpp"
#include "noisemax/format.hpp"
#include "noisemax/rng.hpp"
#include "noisemax/summation.hpp"

namespace noisemax {

namespace {

constexpr int kAnchorStride = 32;

void check_grid_size(Eigen::Index n, Eigen::Index N) {
  if (N < 2 * n + 1) {
    throw AliasingError("grid of " + std::to_string(N) + " points aliases a degree-" +
                        std::to_string(n) + " polynomial (need N >= 2n+1)");
  }
  if (N < 1 || (N & (N - 1)) != 0) {
    throw DomainError("grid size must be a power of two, got " + std::to_string(N));
  }
}

// Complex coefficient of e^{ik t_j} relative to the grid origin -pi:
// X(t) = Re sum_k w_k (v_k - i u_k) e^{ikt} and e^{ik(-pi)} = (-1)^k.
std::complex<double> grid_coefficient(const NoiseDraw& d, Eigen::Index i) {
  const double sign = (i % 2 == 0) ? -1.0 : 1.0;  // k = i + 1
  return sign * d.w()[i] * std::complex<double>(d.v()[i], -d.u()[i]);
}

}  // namespace

NoiseDraw::NoiseDraw(Eigen::VectorXd u, Eigen::VectorXd v, Eigen::VectorXd w,
                     std::string model_id, SeedPath seed_path)
    : u_(std::move(u)), v_(std::move(v)), w_(std::move(w)),
      model_id_(std::move(model_id)), seed_path_(seed_path) {
  if (u_.size() != v_.size() || u_.size() != w_.size()) {
    throw DomainError("NoiseDraw arrays must have equal length");
  }
  if (u_.size() < 1) throw DomainError("NoiseDraw degree must be >= 1");
  if ((w_.array() <= 0.0).any()) throw DomainError("NoiseDraw weights must be positive");
}

NoiseDraw NoiseDraw::negated() const { return {-u_, -v_, w_, model_id_, seed_path_}; }

NoiseDraw NoiseDraw::reflected() const { return {-u_, v_, w_, model_id_, seed_path_}; }

NoiseDraw NoiseDraw::scaled(double lambda) const {
  if (!(lambda > 0)) throw DomainError("scale factor must be positive");
  return {u_, v_, lambda * w_, model_id_, seed_path_};
}

NoiseDraw draw(const CoefficientModel& model, std::int64_t n, SeedPath path) {
  if (n < 1) throw DomainError("degree n must be >= 1");
  model.validate();
  const GaussianStream stream(path);
  Eigen::VectorXd u(n), v(n), w(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto [a, b] = stream.normal_pair(static_cast<std::uint64_t>(i));
    u[i] = a;
    v[i] = b;
    w[i] = std::sqrt(weight(model, i + 1));
  }
  return {std::move(u), std::move(v), std::move(w), to_string(model), path};
}

double eval_at(const NoiseDraw& d, double t) {
  CompensatedSum<double> acc;
  for (Eigen::Index i = 0; i < d.degree(); ++i) {
    const double kt = static_cast<double>(i + 1) * t;
    acc += d.w()[i] * (d.u()[i] * std::sin(kt) + d.v()[i] * std::cos(kt));
  }
  return acc.value();
}

double deriv_at(const NoiseDraw& d, double t, int order) {
  if (order != 1 && order != 2) {
    throw DomainError("deriv_at supports order 1 or 2, got " + std::to_string(order));
  }
  CompensatedSum<double> acc;
  for (Eigen::Index i = 0; i < d.degree(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double s = std::sin(k * t), c = std::cos(k * t);
    if (order == 1) {
      acc += k * d.w()[i] * (d.u()[i] * c - d.v()[i] * s);
    } else {
      acc += -k * k * d.w()[i] * (d.u()[i] * s + d.v()[i] * c);
    }
  }
  return acc.value();
}

Jet jet_at(const NoiseDraw& d, double t) {
  const double ct = std::cos(t), st = std::sin(t);
  const double* u = d.u().data();
  const double* v = d.v().data();
  const double* w = d.w().data();
  double value = 0, first = 0, second = 0;
  double c = 1, s = 0;
  for (Eigen::Index i = 0; i < d.degree(); ++i) {
    const double k = static_cast<double>(i + 1);
    if (i % kAnchorStride == 0) {
      c = std::cos(k * t);
      s = std::sin(k * t);
    } else {
      const double cn = c * ct - s * st;
      s = s * ct + c * st;
      c = cn;
    }
    const double even = w[i] * (u[i] * s + v[i] * c);
    const double odd = w[i] * (u[i] * c - v[i] * s);
    value += even;
    first += k * odd;
    second -= k * k * even;
  }
  return {value, first, second};
}

double GridEvaluation::point(Eigen::Index j, Eigen::Index N) {
  return -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(N);
}

GridEvaluation eval_grid(const NoiseDraw& d, Eigen::Index N) {
  check_grid_size(d.degree(), N);
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(N)), out;
  for (Eigen::Index i = 0; i < d.degree(); ++i) spectrum[i + 1] = grid_coefficient(d, i);
  detail::thread_fft().inv(out, spectrum);
  GridEvaluation g;
  g.values.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) g.values[j] = out[j].real();
  g.draw_ref = d.model_id() + " " + to_string(d.seed_path());
  return g;
}

GridWithCurvature eval_grid_with_curvature(const NoiseDraw& d, Eigen::Index N) {
  check_grid_size(d.degree(), N);
  // Hermitian spectra A (for X) and B (for X''/n^2) have real inverse
  // transforms, so one transform of A + iB yields both. B is scaled to the
  // magnitude of A so its rounding does not swamp X.
  std::vector<std::complex<double>> spectrum(static_cast<std::size_t>(N)), out;
  const std::complex<double> I(0.0, 1.0);
  const double n = static_cast<double>(d.degree());
  for (Eigen::Index i = 0; i < d.degree(); ++i) {
    const double k = static_cast<double>(i + 1) / n;
    const std::complex<double> a = 0.5 * grid_coefficient(d, i);
    const std::complex<double> b = -k * k * a;
    spectrum[i + 1] = a + I * b;
    spectrum[N - i - 1] = std::conj(a) + I * std::conj(b);
  }
  detail::thread_fft().inv(out, spectrum);
  GridWithCurvature g;
  g.values.resize(N);
  g.second.resize(N);
  for (Eigen::Index j = 0; j < N; ++j) {
    g.values[j] = out[j].real();
    g.second[j] = out[j].imag() * n * n;
  }
  return g;
}

void write_draw_csv(const NoiseDraw& d, std::ostream& out) {
  out << "# model: " << d.model_id() << " seed_path: " << to_string(d.seed_path()) << "\n";
  out << "k,u,v,w\n";
  for (Eigen::Index i = 0; i < d.degree(); ++i) {
    out << (i + 1) << ',' << shortest(d.u()[i]) << ',' << shortest(d.v()[i]) << ','
        << shortest(d.w()[i]) << '\n';
  }
}

Eigen::Index next_pow2(Eigen::Index x) {
  Eigen::Index p = 1;
  while (p < x) p <<= 1;
  return p;
}

}  // namespace noisemax
