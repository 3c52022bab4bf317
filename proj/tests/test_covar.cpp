#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "noisemax/covar.hpp"
#include "noisemax/synth.hpp"
#include "oracles.hpp"

using namespace noisemax;
using std::numbers::pi;

TEST_CASE("rho closed forms") {
  const auto flat = CoefficientModel::constant(0.0);
  CHECK(rho(flat, 1000, 0.0) == 1.0);
  CHECK(rho(CoefficientModel::logpower(0.5, 1, 1), 77, 0.0) == 1.0);
  for (double t : {0.0, 0.25, 0.6, -0.9, 1.0}) {
    CHECK(rho(flat, 2, t) ==
          doctest::Approx((std::cos(pi * t) + std::cos(2 * pi * t)) / 2).epsilon(1e-15));
  }
  CHECK_THROWS_AS(rho(flat, 2, 1.01), DomainError);
  CHECK_THROWS_AS(rho(flat, 10, -5.5), DomainError);
  CHECK_NOTHROW(rho(flat, 10, -5.0));
}

TEST_CASE("rho matches 50-digit summation") {
  const auto m = CoefficientModel::constant(0.5);
  CHECK(std::abs(rho(m, 1024, 3.7) - oracle::rho_big(0.5, 1024, 3.7)) <= 1e-12);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> t(-256.0, 256.0);
  for (int i = 0; i < 20; ++i) {
    const double x = t(rng);
    CHECK(std::abs(rho(m, 512, x) - oracle::rho_big(0.5, 512, x)) <= 1e-12);
  }
}

TEST_CASE("rho symmetry and periodicity") {
  const auto m = CoefficientModel::logpower(0.3, 1.0, -1.0);
  const std::int64_t n = 300;
  for (double t : {0.1, 3.3, 77.0, 149.9}) {
    CHECK(rho(m, n, -t) == rho(m, n, t));
    CHECK(std::abs(rho_periodic(m, n, t + n) - rho(m, n, t)) <= 1e-12);
    CHECK(std::abs(rho_periodic(m, n, t - 3 * n) - rho(m, n, t)) <= 1e-12);
  }
}

TEST_CASE("tabulation agrees with direct summation") {
  for (const auto& m : {CoefficientModel::constant(0.5), CoefficientModel::logpower(0.0, 2.0, 1.0)}) {
    const std::int64_t n = 1024;
    const RhoTable tab = tabulate_rho(m, n, 10);
    REQUIRE(tab.size() == 10 * n / 2 + 1);
    CHECK(tab.values[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tab.values.cwiseAbs().maxCoeff() <= 1.0 + 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Eigen::Index> pick(0, tab.size() - 1);
    for (int i = 0; i < 100; ++i) {
      const Eigen::Index j = pick(rng);
      CHECK(std::abs(tab.values[j] - rho(m, n, tab.t(j))) <= 1e-12);
    }
  }
  const RhoTable wide = tabulate_rho(CoefficientModel::constant(0.0), 16, 10, 40.0);
  for (Eigen::Index j = 0; j < wide.size(); j += 7) {
    CHECK(std::abs(wide.values[j] - rho_periodic(CoefficientModel::constant(0.0), 16, wide.t(j))) <=
          1e-12);
  }
}

TEST_CASE("profile") {
  const CovarianceProfile p = make_profile(CoefficientModel::constant(0.5), 64);
  CHECK(p.n == 64);
  CHECK(p.sigma_sq == sigma_sq(p.model, 64));
  CHECK(p.c_n == c_n(p.model, 64));
  CHECK(p.model_id == to_string(p.model));
  CHECK(p.rho(2.5) == rho(p.model, 64, 2.5));
  CHECK(p.table.t(p.table.size() - 1) == 32.0);
}

TEST_CASE("c_n") {
  const std::int64_t n = 1000000;
  const double nd = 1e6;
  const double flat_closed = 2 * pi * pi * (nd + 1) * (2 * nd + 1) / (6 * nd * nd);
  CHECK(c_n(CoefficientModel::constant(0.0), n) == doctest::Approx(flat_closed).epsilon(1e-12));
  CHECK(c_n(CoefficientModel::constant(0.0), n) == doctest::Approx(6.57974).epsilon(0.01));
  CHECK(c_n(CoefficientModel::constant(0.5), n) == doctest::Approx(3.94784).epsilon(0.01));
  CHECK(c_n(CoefficientModel::constant(-1.0), n) == doctest::Approx(9.8696).epsilon(0.01));
  for (double alpha : {0.5, -1.0}) {
    const long double brute =
        2 * std::numbers::pi_v<long double> * std::numbers::pi_v<long double> *
        oracle::power_sum(alpha, 2, n) / (1e12L * oracle::power_sum(alpha, 0, n));
    CHECK(c_n(CoefficientModel::constant(alpha), n) ==
          doctest::Approx(static_cast<double>(brute)).epsilon(1e-12));
  }
  CHECK(c_limit(0.0) == doctest::Approx(2 * pi * pi / 3));
  CHECK(c_n(CoefficientModel::constant(0.7), 1) == doctest::Approx(2 * pi * pi));
}

TEST_CASE("taylor remainder") {
  const auto m = CoefficientModel::constant(0.5);
  for (double t : {0.4, 0.05, 1e-3, 1e-6}) {
    const double direct = rho(m, 256, t) - 1 + c_n(m, 256) * t * t;
    const double scale = std::max(1e-15, t * t * 1e-6);
    CHECK(std::abs(taylor_remainder(m, 256, t) - direct) <= scale + 4e-16);
  }
  // Fourth-order leading term: eps(t)/t^4 -> (2pi)^4 sum k^4 R / (24 n^4 sigma^2).
  const double t = 1e-4;
  const double lead = std::pow(2 * pi, 4) * static_cast<double>(oracle::power_sum(0.5, 4, 256)) /
                      (24 * std::pow(256.0, 4) * sigma_sq(m, 256));
  CHECK(taylor_remainder(m, 256, t) / std::pow(t, 4) == doctest::Approx(lead).epsilon(1e-6));
}

TEST_CASE("condition 1") {
  const auto flat = CoefficientModel::constant(0.0);
  // The fourth-order term gives about (2 pi)^4 t_max^2 / 120 at t_max = 0.1.
  const ConditionReport wide = check_condition1(flat, 1024, 0.1, 0.01);
  CHECK(wide.condition == 1);
  REQUIRE(wide.sup_value);
  CHECK(*wide.sup_value == doctest::Approx(std::pow(2 * pi, 4) * 0.01 / 120).epsilon(0.03));
  CHECK_FALSE(wide.pass);

  const ConditionReport narrow = check_condition1(flat, 1024, 0.025, 0.01);
  CHECK(narrow.pass);
  CHECK(*narrow.sup_value <= 0.01);

  // Halving t_max at least halves the residual ratio.
  for (const auto& m : {flat, CoefficientModel::constant(0.5), CoefficientModel::logpower(0.5, 1, 1)}) {
    double prev = *check_condition1(m, 4096, 0.4, 0.01).sup_value;
    for (double tm : {0.2, 0.1, 0.05, 0.025}) {
      const double cur = *check_condition1(m, 4096, tm, 0.01).sup_value;
      CHECK(cur <= 0.5 * prev);
      prev = cur;
    }
  }

  // n = 1: rho = cos(2 pi t).
  const ConditionReport one = check_condition1(flat, 1, 0.01, 0.01);
  CHECK(*one.sup_value == doctest::Approx(std::pow(2 * pi, 4) * 1e-4 / 24).epsilon(0.01));

  CHECK_THROWS_AS(check_condition1(flat, 16, 0.0, 0.01), DomainError);
  CHECK_THROWS_AS(check_condition1(flat, 16, 1.5, 0.01), DomainError);
}

TEST_CASE("condition 2") {
  const auto flat = CoefficientModel::constant(0.0);
  double prev = HUGE_VAL;
  for (double T : {10.0, 20.0, 50.0, 200.0}) {
    const ConditionReport r = check_condition2(flat, 16384, T, 0.5);
    REQUIRE(r.sup_value);
    CHECK(*r.sup_value <= prev);
    CHECK(r.achieving_t >= T);
    CHECK(r.achieving_t <= 8192);
    prev = *r.sup_value;
  }
  CHECK(check_condition2(flat, 16384, 20, 0.5).pass);

  const ConditionReport worst = check_condition2(CoefficientModel::constant(0.9), 16384, 1000, 0.5);
  REQUIRE(worst.sup_value);
  CHECK(std::isfinite(*worst.sup_value));

  const ConditionReport tiny = check_condition2(flat, 2, 1.0, 0.5);
  REQUIRE(tiny.sup_value);
  CHECK(std::isfinite(*tiny.sup_value));

  CHECK_THROWS_AS(check_condition2(flat, 16, 9.0, 0.5), DomainError);
  CHECK_THROWS_AS(check_condition2(flat, 16, 0.5, 0.5), DomainError);
  CHECK(check_condition2(CoefficientModel::logpower(0.5, 1, 1), 64, 2, 0.5).detail("cut_effect").value() > 0);
}

TEST_CASE("condition 3") {
  const auto flat = CoefficientModel::constant(0.0);
  const ConditionReport r = check_condition3(flat, 4096, 0.5);
  REQUIRE(r.sup_value);
  CHECK(*r.sup_value < 1 - 1e-3);
  CHECK(r.pass);
  CHECK(r.detail("band_bound").value() < 1.0);

  const ConditionReport degenerate = check_condition3(flat, 4096, 1e-6);
  CHECK_FALSE(degenerate.pass);
  CHECK(*degenerate.sup_value > 1 - 1e-9);

  const ConditionReport one = check_condition3(flat, 1, 0.5);
  REQUIRE(one.sup_value);
  CHECK(*one.sup_value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.achieving_t == doctest::Approx(1.0));
  CHECK_FALSE(one.pass);
}

TEST_CASE("dirichlet kernel") {
  CHECK(dirichlet_kernel<double>(5, 0.0) == 5.0);
  CHECK(dirichlet_kernel<double>(5, 3.0) == 5.0);
  CHECK(dirichlet_kernel<double>(1, 0.3) == doctest::Approx(std::cos(0.6 * pi)).epsilon(1e-14));
  CHECK(dirichlet_kernel<double>(1, 0.3) == doctest::Approx(-0.30902).epsilon(1e-5));
  oracle::Big direct = 0;
  for (int j = 1; j <= 100; ++j) direct += cos(2 * oracle::big_pi() * j * oracle::Big("0.137"));
  CHECK(std::abs(dirichlet_kernel<double>(100, 0.137) - static_cast<double>(direct)) <= 1e-10);
  CHECK(std::abs(static_cast<double>(dirichlet_kernel<oracle::Big>(100, oracle::Big("0.137")) - direct)) <=
        1e-40);
  CHECK(std::abs(dirichlet_kernel<double>(50, 0.25)) <= dirichlet_bound(1000, 250));
  CHECK(dirichlet_bound(1000, 250) == 2.5);
}

TEST_CASE("tail bounds") {
  const auto flat = CoefficientModel::constant(0.0);
  const std::vector<double> grid = {1.0, 2.5, 10.0, 100.0, 511.0, 512.0};
  const TailBoundReport r = check_tail_bounds(flat, 1024, grid, 0.25);
  CHECK(r.points == grid.size());
  CHECK(r.dirichlet_ok);
  CHECK(r.abel_bound_ok);
  CHECK(r.abel_identity_error <= 1e-10);
  CHECK(r.envelope > 0);
  CHECK(std::isfinite(r.s1_constant));
  CHECK(std::isfinite(r.s2_constant));
  // Direct re-computation of the envelope on the same grid.
  double env = 0;
  for (double t : grid) {
    env = std::max(env, std::abs(oracle::rho_big(0.0, 1024, t)) / std::max(std::pow(t, -0.75), 1 / t));
  }
  CHECK(r.envelope == doctest::Approx(env).epsilon(1e-10));

  CHECK_THROWS_AS(check_tail_bounds(flat, 1024, grid, 1.0), PreconditionError);
  CHECK_THROWS_AS(check_tail_bounds(CoefficientModel::constant(0.9), 1024, grid, 0.1),
                  PreconditionError);
  CHECK_THROWS_AS(check_tail_bounds(flat, 1024, std::vector<double>{0.5}, 0.25), DomainError);
  CHECK_THROWS_AS(check_tail_bounds(flat, 1024, std::vector<double>{513.0}, 0.25), DomainError);

  const TailBoundReport lp =
      check_tail_bounds_dense(CoefficientModel::logpower(0.5, 1, 1), 4096, 0.25);
  CHECK(lp.dirichlet_ok);
  CHECK(lp.abel_bound_ok);
}

TEST_CASE("tail envelope stays bounded in n") {
  const auto flat = CoefficientModel::constant(0.0);
  const double c10 = check_tail_bounds_dense(flat, 1 << 10, 0.25).envelope;
  const double c13 = check_tail_bounds_dense(flat, 1 << 13, 0.25).envelope;
  const double c16 = check_tail_bounds_dense(flat, 1 << 16, 0.25).envelope;
  CHECK(c13 / c10 <= 2);
  CHECK(c16 / c10 <= 2);
  const EnvelopeGrowth g = tail_envelope_growth(flat, 1 << 10, 1 << 13, 0.25);
  CHECK(g.ratio == doctest::Approx(c13 / c10));
  CHECK(g.pass);
}

TEST_CASE("empirical covariance of the rescaled process") {
  const auto m = CoefficientModel::constant(0.5);
  const std::int64_t n = 256;
  const int reps = 10000;
  const std::vector<double> ts = {0.1, 0.3, 0.5, 1.0, 1.7, 2.5, 4.0, 10.0, 33.3, 100.0};
  std::vector<double> acc(ts.size(), 0.0);
  double acc0 = 0;
  for (int r = 0; r < reps; ++r) {
    const NoiseDraw d = draw(m, n, {17, static_cast<std::uint64_t>(r)});
    const double x0 = eval_at(d, 0.0);
    acc0 += x0 * x0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      acc[i] += x0 * eval_at(d, 2 * pi * ts[i] / static_cast<double>(n));
    }
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CAPTURE(ts[i]);
    CHECK(std::abs(acc[i] / acc0 - rho(m, n, ts[i])) <= 4 / std::sqrt(double(reps)));
  }
}
