#ifndef NOISEMAX_SELFTEST_HPP
#define NOISEMAX_SELFTEST_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace noisemax {

struct SelfTestCase {
  std::string name;
  double error = 0;      ///< worst observed discrepancy
  double tolerance = 0;  ///< pass iff error <= tolerance
  bool pass = false;
};

struct SelfTestOptions {
  std::int64_t n = 16;
  std::uint64_t seed = 1;
  int draws = 5;
  std::int64_t oracle_points = 1 << 22;
  /// Test hook: shifts every transform and maximizer output by 1e-6 sigma.
  bool perturb = false;
};

/// Small-n oracle suite: dense-grid maximum, transform vs direct summation,
/// finite differences, the analytic n = 1 maximum, a Philox known-answer test.
std::vector<SelfTestCase> run_selftest(const SelfTestOptions& opts);

void print_selftest(std::ostream& out, const std::vector<SelfTestCase>& cases);

}  // namespace noisemax

#endif  // NOISEMAX_SELFTEST_HPP
