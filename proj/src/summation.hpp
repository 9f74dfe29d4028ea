#pragma once

#include "ibstring/spectral.hpp"

#include <cmath>

namespace ibstring::detail {

// Neumaier compensated summation. Quadrature sums on near-equilibrium curves
// are small differences of O(1) terms, and the energy balance checks need the
// last few digits.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedSum2 {
 public:
  void add(const Vec2& v) noexcept {
    x_.add(v.x());
    y_.add(v.y());
  }
  Vec2 value() const noexcept { return {x_.value(), y_.value()}; }

 private:
  CompensatedSum x_;
  CompensatedSum y_;
};

}  // namespace ibstring::detail
