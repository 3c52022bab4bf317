#include "noisemax/maxfind.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace noisemax {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kStepTolerance = 1e-15;

double wrap_angle(double x) {
  double r = std::remainder(x, 2.0 * std::numbers::pi);
  if (r >= std::numbers::pi) r -= 2.0 * std::numbers::pi;
  return r;
}

struct Polished {
  double value;
  double location;
  int iterations;
};

struct Bracket {
  double lo, hi;
  double start;
  Jet start_jet;
};

// Finds an interval [lo, hi] with X'(lo) > 0 > X'(hi) around the best sample
// of [a, b]. Tries 2, 16 and 128 subintervals.
std::optional<Bracket> find_bracket(const NoiseDraw& d, double a, double b,
                                    double center) {
  for (int pieces : {2, 16, 128}) {
    std::vector<double> x(pieces + 1);
    std::vector<Jet> jet(pieces + 1);
    for (int i = 0; i <= pieces; ++i) {
      x[i] = (pieces == 2 && i == 1) ? center : a + (b - a) * i / pieces;
      jet[i] = jet_at(d, x[i]);
    }
    int best = pieces == 2 ? 1 : 0;
    for (int i = 0; i <= pieces; ++i) {
      if (jet[i].value > jet[best].value) best = i;
    }
    if (jet[best].first == 0.0) return Bracket{x[best], x[best], x[best], jet[best]};
    if (jet[best].first > 0 && best < pieces && jet[best + 1].first < 0) {
      return Bracket{x[best], x[best + 1], x[best], jet[best]};
    }
    if (jet[best].first < 0 && best > 0 && jet[best - 1].first > 0) {
      return Bracket{x[best - 1], x[best], x[best], jet[best]};
    }
  }
  return std::nullopt;
}

Polished polish(const NoiseDraw& d, double a, double b, double center,
                double derivative_tol) {
  const auto bracket = find_bracket(d, a, b, center);
  if (!bracket) {
    throw RefinementError("no derivative sign change around grid maximum", d.seed_path());
  }
  double lo = bracket->lo, hi = bracket->hi;
  double x = bracket->start;
  Jet j = bracket->start_jet;
  int iterations = 0;
  bool converged = false;
  while (iterations < kMaxRefineIterations) {
    if (std::abs(j.first) <= derivative_tol || hi - lo < kStepTolerance) {
      converged = true;
      break;
    }
    if (j.first > 0) {
      lo = x;
    } else {
      hi = x;
    }
    double next = 0.5 * (lo + hi);
    if (j.second < 0) {
      const double newton = x - j.first / j.second;
      if (std::abs(newton - x) < kStepTolerance) {
        converged = true;
        break;
      }
      if (newton > lo && newton < hi) next = newton;
    }
    const double step = std::abs(next - x);
    x = next;
    j = jet_at(d, x);
    ++iterations;
    if (step < kStepTolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw RefinementError("Newton refinement did not converge in " +
                              std::to_string(kMaxRefineIterations) + " steps",
                          d.seed_path());
  }
  return {eval_at(d, x), x, iterations};
}

}  // namespace

MaxResult global_max(const NoiseDraw& d, int oversample) {
  if (oversample < 4) throw DomainError("oversample must be >= 4");
  const Eigen::Index n = d.degree();
  const Eigen::Index N = next_pow2(std::max<Eigen::Index>(oversample * n, 2 * n + 1));
  const GridWithCurvature grid = eval_grid_with_curvature(d, N);
  const Eigen::VectorXd& g = grid.values;

  const double sigma = d.w().norm();
  const double h = 2.0 * std::numbers::pi / static_cast<double>(N);

  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < N; ++j) {
    if (g[j] > g[best]) best = j;
  }
  const double curvature = grid.second.cwiseAbs().maxCoeff();
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const double band = std::pow(std::numbers::pi * static_cast<double>(n) / N, 2) *
                      (curvature / n2);

  std::vector<Eigen::Index> candidates{best};
  for (Eigen::Index j = 0; j < N; ++j) {
    if (j == best) continue;
    const double left = g[(j + N - 1) % N], right = g[(j + 1) % N];
    if (g[j] > left && g[j] >= right && g[j] >= g[best] - band) candidates.push_back(j);
  }

  const double derivative_tol = 1e-12 * static_cast<double>(n) * sigma;
  std::vector<Polished> polished;
  polished.reserve(candidates.size());
  MaxResult result;
  result.grid_value = g[best];
  result.candidates = static_cast<int>(candidates.size());
  for (Eigen::Index j : candidates) {
    const double t = GridEvaluation::point(j, N);
    polished.push_back(polish(d, t - h, t + h, t, derivative_tol));
    result.iterations += polished.back().iterations;
  }

  double top = -HUGE_VAL;
  for (const auto& p : polished) top = std::max(top, p.value);
  bool found = false;
  for (const auto& p : polished) {
    if (p.value < top - kTieTolerance * sigma) continue;
    const double loc = wrap_angle(p.location);
    if (!found || loc < result.location) {
      result.location = loc;
      result.value = p.value;
      found = true;
    }
  }
  return result;
}

MaxResult global_min(const NoiseDraw& d, int oversample) {
  MaxResult r = global_max(d.negated(), oversample);
  r.value = -r.value;
  r.grid_value = -r.grid_value;
  return r;
}

}  // namespace noisemax
