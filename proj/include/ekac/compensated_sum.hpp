#pragma once

#include <cmath>

namespace ekac {

// Neumaier's variant of Kahan summation: the running compensation stays
// correct when an addend is larger in magnitude than the partial sum.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double initial) : sum_(initial) {}

  CompensatedSum& operator+=(double value) {
    const double t = sum_ + value;
    if (std::fabs(sum_) >= std::fabs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  CompensatedSum& operator-=(double value) { return *this += -value; }

  // Merges keep both error terms; merging segments in a fixed order is
  // deterministic regardless of how the segments were scheduled.
  CompensatedSum& operator+=(const CompensatedSum& other) {
    *this += other.sum_;
    compensation_ += other.compensation_;
    return *this;
  }

  double value() const { return sum_ + compensation_; }
  explicit operator double() const { return value(); }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace ekac
