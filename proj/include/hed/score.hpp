#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hed/detail/numeric.hpp"
#include "hed/errors.hpp"
#include "hed/stream.hpp"

namespace hed {

// Score plus its audit trail. Index k runs over the post-onset window,
// k = t - t_start for t = t_start..T, so lifts and discounts both have
// T - t_start + 1 entries while the normalizer stays T - t_start.
struct HedResult {
  double score = 0.0;
  double baseline = 0.0;
  std::vector<double> lifts;
  std::vector<double> discounts;
  double normalizer = 0.0;
};

struct PhaseReport {
  std::vector<int> boundaries;      // t_start = tau_0 < ... < tau_K = T
  std::vector<double> contributions;  // one per phase, sums to the full score
};

enum class BoundMode { continuous, discrete };

// Empirical pre-onset noise floor: arithmetic mean of P_t over [0, t_start).
inline double compute_baseline(const ProbabilityStream& stream) {
  detail::CompensatedSum acc;
  for (int t = 0; t < stream.onset(); ++t) acc.add(stream.at(t));
  return acc.value() / static_cast<double>(stream.onset());
}

// Discrete HED estimator:
//   (1 / (T - t_start)) * sum_{t=t_start}^{T} max(0, P_t - baseline)
//                                            * exp(-lambda_h (t - t_start)).
// The sum runs over T - t_start + 1 samples while the normalizer is
// T - t_start; this asymmetry is kept deliberately (hed_exact_piecewise is
// the self-consistent integral alternative).
inline HedResult hed_score(const ProbabilityStream& stream, const DecayParams& decay) {
  const int n = stream.horizon() - stream.onset();
  const double baseline = compute_baseline(stream);

  HedResult result;
  result.baseline = baseline;
  result.normalizer = static_cast<double>(n);
  result.lifts.resize(static_cast<std::size_t>(n) + 1);
  result.discounts.resize(static_cast<std::size_t>(n) + 1);

  detail::CompensatedSum acc;
  for (int k = 0; k <= n; ++k) {
    const double lift = std::max(0.0, stream.at(stream.onset() + k) - baseline);
    const double discount = std::exp(-decay.lambda_h * static_cast<double>(k));
    result.lifts[static_cast<std::size_t>(k)] = lift;
    result.discounts[static_cast<std::size_t>(k)] = discount;
    acc.add(lift * discount);
  }
  result.score = acc.value() / static_cast<double>(n);
  return result;
}

// Exact Lebesgue integral of the HED functional for the piecewise-constant
// extension of the stream: P is held at P_t on [t, t+1), so each cell
// contributes lift_t * (e^{-lambda k} - e^{-lambda (k+1)}) / lambda. The
// sample at t = T sits on a null set and does not contribute.
inline double hed_exact_piecewise(const ProbabilityStream& stream, const DecayParams& decay) {
  const int n = stream.horizon() - stream.onset();
  const double baseline = compute_baseline(stream);
  const double lambda = decay.lambda_h;

  detail::CompensatedSum acc;
  for (int k = 0; k < n; ++k) {
    const double lift = std::max(0.0, stream.at(stream.onset() + k) - baseline);
    const double cell = std::exp(-lambda * static_cast<double>(k)) -
                        std::exp(-lambda * static_cast<double>(k + 1));
    acc.add(lift * cell);
  }
  return acc.value() / (lambda * static_cast<double>(n));
}

// Score of the perfect detector sharing the stream's baseline. Continuous
// mode bounds hed_exact_piecewise; discrete mode bounds hed_score (the
// discrete estimator of a perfect step exceeds the continuous bound because
// of the sum/normalizer asymmetry, so bounds are mode-matched).
inline double hed_upper_bound(const ProbabilityStream& stream, const DecayParams& decay,
                              BoundMode mode) {
  const int n = stream.horizon() - stream.onset();
  const double baseline = compute_baseline(stream);
  const double lambda = decay.lambda_h;
  const double peak_lift = 1.0 - baseline;

  if (mode == BoundMode::continuous) {
    return peak_lift * (1.0 - std::exp(-lambda * static_cast<double>(n))) /
           (lambda * static_cast<double>(n));
  }
  // Summed with the same term shape as hed_score so the perfect detector
  // attains the bound exactly.
  detail::CompensatedSum acc;
  for (int k = 0; k <= n; ++k) {
    acc.add(peak_lift * std::exp(-lambda * static_cast<double>(k)));
  }
  return acc.value() / static_cast<double>(n);
}

// Additive phase decomposition over a partition
// t_start = tau_0 < ... < tau_K = T. Every phase shares the global baseline
// and normalizer; phase k covers [tau_k, tau_{k+1}) and the last phase also
// takes the closing sample at T. Contributions sum to hed_score.
inline PhaseReport hed_phase_decomposition(const ProbabilityStream& stream,
                                           const DecayParams& decay,
                                           const std::vector<int>& boundaries) {
  if (boundaries.size() < 2 || boundaries.front() != stream.onset() ||
      boundaries.back() != stream.horizon()) {
    throw InvalidPartition(
        "partition invariant violated: boundaries must start at t_start and "
        "end at T");
  }
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (boundaries[i] <= boundaries[i - 1]) {
      throw InvalidPartition(
          "partition invariant violated: boundaries must be strictly "
          "increasing");
    }
  }

  const int n = stream.horizon() - stream.onset();
  const double baseline = compute_baseline(stream);
  const std::size_t num_phases = boundaries.size() - 1;

  PhaseReport report;
  report.boundaries = boundaries;
  report.contributions.resize(num_phases);
  for (std::size_t k = 0; k < num_phases; ++k) {
    const int last = (k + 1 == num_phases) ? boundaries[k + 1] : boundaries[k + 1] - 1;
    detail::CompensatedSum acc;
    for (int t = boundaries[k]; t <= last; ++t) {
      const double lift = std::max(0.0, stream.at(t) - baseline);
      acc.add(lift * std::exp(-decay.lambda_h * static_cast<double>(t - stream.onset())));
    }
    report.contributions[k] = acc.value() / static_cast<double>(n);
  }
  return report;
}

// Differentiable surrogate: hed_score with the max(0, .) clamp replaced by
// softplus_beta. Converges to hed_score as beta grows.
inline double hed_smooth(const ProbabilityStream& stream, const DecayParams& decay,
                         double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw NonPositiveBeta("surrogate invariant violated: beta must be a positive finite real");
  }
  const int n = stream.horizon() - stream.onset();
  const double baseline = compute_baseline(stream);

  detail::CompensatedSum acc;
  for (int k = 0; k <= n; ++k) {
    const double lift = detail::softplus(stream.at(stream.onset() + k) - baseline, beta);
    acc.add(lift * std::exp(-decay.lambda_h * static_cast<double>(k)));
  }
  return acc.value() / static_cast<double>(n);
}

// Gradient of hed_smooth with respect to every sample of the stream,
// including the chain rule through the baseline:
//   t >= t_start:  sigma(beta (P_t - baseline)) e^{-lambda (t - t_start)} / n
//   t <  t_start:  -(1/t_start) * sum over the post-onset terms above.
// All pre-onset components are equal by symmetry of the baseline mean.
inline std::vector<double> hed_smooth_grad(const ProbabilityStream& stream,
                                           const DecayParams& decay, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw NonPositiveBeta("surrogate invariant violated: beta must be a positive finite real");
  }
  const int t0 = stream.onset();
  const int n = stream.horizon() - t0;
  const double baseline = compute_baseline(stream);

  std::vector<double> grad(stream.probs().size(), 0.0);
  detail::CompensatedSum post_total;
  for (int k = 0; k <= n; ++k) {
    const double g = detail::logistic(beta * (stream.at(t0 + k) - baseline)) *
                     std::exp(-decay.lambda_h * static_cast<double>(k)) /
                     static_cast<double>(n);
    grad[static_cast<std::size_t>(t0 + k)] = g;
    post_total.add(g);
  }
  const double pre = -post_total.value() / static_cast<double>(t0);
  for (int t = 0; t < t0; ++t) grad[static_cast<std::size_t>(t)] = pre;
  return grad;
}

}  // namespace hed
