#pragma once

#include <cmath>

namespace hed::detail {

// Neumaier compensated accumulator. All score/baseline/phase sums in the
// library go through this so that additivity identities hold to 1e-12
// even on long windows.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// softplus_beta(x) = log(1 + exp(beta*x)) / beta, with asymptotic branches
// outside |beta*x| <= 30. Both branches agree with the middle expression to
// double-precision rounding at the switchover.
inline double softplus(double x, double beta) {
  const double y = beta * x;
  if (y > 30.0) {
    return x;
  }
  if (y < -30.0) {
    return std::exp(y) / beta;
  }
  return std::log1p(std::exp(y)) / beta;
}

}  // namespace hed::detail
