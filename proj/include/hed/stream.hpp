#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "hed/errors.hpp"

namespace hed {

// A detector's posterior stream P_t on the uniform unit grid t = 0..T, with
// the regime onset t_start marked. The onset is known at evaluation time;
// both the pre-onset window [0, t_start) and the post-onset window
// [t_start, T] must be non-empty. Immutable after construction; every
// invariant is enforced here so downstream operations can assume a valid
// stream.
class ProbabilityStream {
 public:
  ProbabilityStream(std::vector<double> probs, int t_start)
      : probs_(std::move(probs)), t_start_(t_start) {
    const int T = static_cast<int>(probs_.size()) - 1;
    if (t_start_ <= 0) {
      throw EmptyPreOnsetWindow(
          "onset invariant violated: t_start must be >= 1 so the pre-onset "
          "window [0, t_start) is non-empty (got t_start=" +
          std::to_string(t_start_) + ")");
    }
    if (T <= t_start_) {
      throw DegenerateWindow(
          "window invariant violated: t_start must be < T so the post-onset "
          "window has positive length (got t_start=" +
          std::to_string(t_start_) + ", T=" + std::to_string(T) + ")");
    }
    for (std::size_t t = 0; t < probs_.size(); ++t) {
      const double p = probs_[t];
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidProbability(
            "probability range invariant violated: p must lie in [0,1] "
            "(got p=" +
            std::to_string(p) + " at t=" + std::to_string(t) + ")");
      }
    }
  }

  int onset() const { return t_start_; }
  int horizon() const { return static_cast<int>(probs_.size()) - 1; }
  const std::vector<double>& probs() const { return probs_; }
  double at(int t) const { return probs_[static_cast<std::size_t>(t)]; }

  // Number of samples in [t_start, T], i.e. T - t_start + 1.
  int post_onset_length() const { return horizon() - t_start_ + 1; }

 private:
  std::vector<double> probs_;
  int t_start_;
};

// The per-step exponential discount rate lambda_h and everything derived
// from it. Strictly positive; zero and negative rates are rejected.
struct DecayParams {
  explicit DecayParams(double rate) : lambda_h(rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw NonPositiveDecay(
          "decay invariant violated: lambda_h must be a positive finite real "
          "(got " +
          std::to_string(rate) + ")");
    }
  }

  double lambda_h;
};

// Delay after which a detection's utility has halved: ln(2) / lambda_h.
inline double half_life(const DecayParams& decay) {
  return std::log(2.0) / decay.lambda_h;
}

// Calibrates the decay rate from a response-latency budget so that the
// half-life equals the budget exactly: lambda_h = ln(2) / dt_min.
inline DecayParams lambda_from_budget(double delta_t_min) {
  if (!(delta_t_min > 0.0) || !std::isfinite(delta_t_min)) {
    throw NonPositiveBudget(
        "budget invariant violated: delta_t_min must be a positive finite "
        "real (got " +
        std::to_string(delta_t_min) + ")");
  }
  return DecayParams(std::log(2.0) / delta_t_min);
}

}  // namespace hed
