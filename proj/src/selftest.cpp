#include "noisemax/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "noisemax/maxfind.hpp"
#include "noisemax/rng.hpp"
#include "noisemax/synth.hpp"

namespace noisemax {

namespace {

// Horner evaluation of Re sum_k w_k (v_k - i u_k) z^k, z = e^{it}, on
// `points` equispaced nodes; independent of both the FFT and the Newton path.
double dense_grid_max(const NoiseDraw& d, std::int64_t points) {
  const Eigen::Index n = d.degree();
  std::vector<std::complex<double>> c(n);
  for (Eigen::Index i = 0; i < n; ++i) c[i] = d.w()[i] * std::complex<double>(d.v()[i], -d.u()[i]);
  double best = -HUGE_VAL;
  for (std::int64_t j = 0; j < points; ++j) {
    const double t = -std::numbers::pi + 2.0 * std::numbers::pi * static_cast<double>(j) / points;
    const std::complex<double> z(std::cos(t), std::sin(t));
    std::complex<double> p = c[n - 1];
    for (Eigen::Index i = n - 2; i >= 0; --i) p = p * z + c[i];
    best = std::max(best, (p * z).real());
  }
  return best;
}

SelfTestCase make_case(std::string name, double error, double tolerance) {
  return {std::move(name), error, tolerance, error <= tolerance};
}

}  // namespace

std::vector<SelfTestCase> run_selftest(const SelfTestOptions& opts) {
  const auto model = CoefficientModel::constant(0.0);
  const double bump = opts.perturb ? 1e-6 : 0.0;
  std::vector<SelfTestCase> cases;

  double max_err = 0, grid_err = 0, fd1_err = 0, fd2_err = 0;
  const double nd = static_cast<double>(opts.n);
  for (int r = 0; r < opts.draws; ++r) {
    const NoiseDraw d = draw(model, opts.n, {opts.seed, static_cast<std::uint64_t>(r)});
    const double sigma = d.w().norm();

    const double found = global_max(d).value + bump * sigma;
    max_err = std::max(max_err, std::abs(found - dense_grid_max(d, opts.oracle_points)) / sigma);

    const Eigen::Index N = next_pow2(std::max<Eigen::Index>(8 * opts.n, 2 * opts.n + 1));
    const GridEvaluation g = eval_grid(d, N);
    for (Eigen::Index j = 0; j < N; ++j) {
      const double direct = eval_at(d, GridEvaluation::point(j, N));
      grid_err = std::max(grid_err, std::abs(g.values[j] + bump * sigma - direct) / sigma);
    }

    constexpr double h = 1e-6;
    for (double t : {-2.5, -0.4, 0.3, 1.7, 3.0}) {
      const double fd1 = (eval_at(d, t + h) - eval_at(d, t - h)) / (2 * h);
      const double fd2 = (deriv_at(d, t + h, 1) - deriv_at(d, t - h, 1)) / (2 * h);
      fd1_err = std::max(fd1_err, std::abs(deriv_at(d, t, 1) - fd1) / (nd * nd * sigma));
      fd2_err = std::max(fd2_err, std::abs(deriv_at(d, t, 2) - fd2) / (nd * nd * nd * sigma));
    }
  }
  cases.push_back(make_case("max_vs_dense_grid", max_err, 1e-8));
  cases.push_back(make_case("transform_vs_direct", grid_err, 1e-9));
  cases.push_back(make_case("first_derivative_fd", fd1_err, 1e-10));
  cases.push_back(make_case("second_derivative_fd", fd2_err, 1e-10));

  // Single sinusoid a sin t + b cos t peaks at sqrt(a^2 + b^2).
  {
    const double a = 0.8, b = -1.3;
    const NoiseDraw one(Eigen::VectorXd::Constant(1, a), Eigen::VectorXd::Constant(1, b),
                        Eigen::VectorXd::Ones(1));
    const MaxResult m = global_max(one);
    const double err = std::max(std::abs(m.value + bump - std::hypot(a, b)),
                                std::abs(m.location - std::atan2(a, b)));
    cases.push_back(make_case("single_sinusoid", err, 1e-10));
  }

  {
    const PhiloxCounter got = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                            {0xa4093822u, 0x299f31d0u});
    const PhiloxCounter want = {0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u};
    cases.push_back(make_case("philox_known_answer", got == want ? 0.0 : 1.0, 0.0));
  }
  return cases;
}

void print_selftest(std::ostream& out, const std::vector<SelfTestCase>& cases) {
  out << std::left << std::setw(24) << "check" << std::setw(14) << "error" << std::setw(12)
      << "tolerance" << "result\n";
  for (const auto& c : cases) {
    out << std::left << std::setw(24) << c.name << std::setw(14) << std::setprecision(3)
        << std::scientific << c.error << std::setw(12) << c.tolerance
        << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  out << std::defaultfloat;
}

}  // namespace noisemax
