#ifndef NOISEMAX_SUMMATION_HPP
#define NOISEMAX_SUMMATION_HPP

#include <cmath>
#include <cstdint>

namespace noisemax {

// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
// when an addend is larger in magnitude than the running sum.
template <typename Scalar>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Scalar init) : sum_(init) {}

  CompensatedSum& operator+=(Scalar x) {
    using std::abs;
    const Scalar t = sum_ + x;
    if (abs(sum_) >= abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

/// Compensated sum of term(k) for k = first..last inclusive.
template <typename Scalar = double, typename Term>
Scalar compensated_sum(std::int64_t first, std::int64_t last, Term&& term) {
  CompensatedSum<Scalar> acc;
  for (std::int64_t k = first; k <= last; ++k) acc += static_cast<Scalar>(term(k));
  return acc.value();
}

}  // namespace noisemax

#endif  // NOISEMAX_SUMMATION_HPP
