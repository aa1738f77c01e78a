#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hed/detail/numeric.hpp"
#include "hed/errors.hpp"
#include "hed/fbm.hpp"
#include "hed/rng.hpp"
#include "hed/score.hpp"
#include "hed/stream.hpp"

namespace hed {

// Latent fractional SDE with regime-dependent linear mean reversion:
//   Z_{t+1} = Z_t + rate * (level[regime(t)] - Z_t) + diffusion * xi_t,
// where xi is fractional Gaussian noise with the given Hurst exponent and
// Z_0 ~ N(initial_mean, initial_var). Unit step size.
struct FsdeParams {
  double reversion_rate = 0.5;       // a >= 0
  std::vector<double> levels;        // m_k, one per regime
  double diffusion = 0.0;            // sigma_z >= 0 (0 gives the noise-free dynamics)
  double hurst = 0.5;
  double initial_mean = 0.0;
  double initial_var = 0.0;
};

// Switching linear-Gaussian observation model for the forward filter.
struct SldsParams {
  std::vector<std::vector<double>> transition;  // K x K, rows sum to 1
  std::vector<double> emission_mean;            // mu_k
  std::vector<double> emission_var;             // Sigma_k > 0
  std::vector<double> initial_occupancy;        // pi(0), simplex point
};

// Forward-filtered occupancy posteriors, probs[k][t].
struct RegimePosteriors {
  std::vector<std::vector<double>> probs;

  int num_regimes() const { return static_cast<int>(probs.size()); }
  int length() const { return probs.empty() ? 0 : static_cast<int>(probs.front().size()); }
};

namespace detail {

inline void validate_fsde(const FsdeParams& p) {
  if (!(p.reversion_rate >= 0.0)) {
    throw InvalidParams("fsde invariant violated: reversion rate must be >= 0");
  }
  if (!(p.diffusion >= 0.0)) {
    throw InvalidParams("fsde invariant violated: diffusion must be >= 0");
  }
  if (p.levels.empty()) {
    throw InvalidParams("fsde invariant violated: at least one regime level is required");
  }
  if (!(p.hurst > 0.0 && p.hurst < 1.0)) {
    throw InvalidParams("fsde invariant violated: hurst must lie in (0, 1)");
  }
  if (!(p.initial_var >= 0.0)) {
    throw InvalidParams("fsde invariant violated: initial variance must be >= 0");
  }
}

inline void validate_slds(const SldsParams& p) {
  const std::size_t K = p.transition.size();
  if (K == 0) {
    throw InvalidParams("slds invariant violated: transition matrix is empty");
  }
  for (const auto& row : p.transition) {
    if (row.size() != K) {
      throw InvalidParams("slds invariant violated: transition matrix must be square");
    }
    double total = 0.0;
    for (double v : row) {
      if (!(v >= 0.0)) {
        throw InvalidParams("slds invariant violated: transition entries must be >= 0");
      }
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) {
      throw InvalidParams("slds invariant violated: transition rows must sum to 1 (got " +
                          std::to_string(total) + ")");
    }
  }
  if (p.emission_mean.size() != K || p.emission_var.size() != K ||
      p.initial_occupancy.size() != K) {
    throw InvalidParams("slds invariant violated: per-regime parameter sizes disagree");
  }
  for (double v : p.emission_var) {
    if (!(v > 0.0)) {
      throw InvalidParams("slds invariant violated: emission variances must be > 0");
    }
  }
  double occ = 0.0;
  for (double v : p.initial_occupancy) {
    if (!(v >= 0.0)) {
      throw InvalidParams("slds invariant violated: initial occupancy entries must be >= 0");
    }
    occ += v;
  }
  if (std::abs(occ - 1.0) > 1e-12) {
    throw InvalidParams("slds invariant violated: initial occupancy must sum to 1");
  }
}

inline double log_gaussian(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * var) - d * d / (2.0 * var);
}

}  // namespace detail

// Euler path of the latent fSDE. regime_path[t] selects the drift level used
// on the step t -> t+1, so the returned path has regime_path.size() + 1
// points. Deterministic given the seed.
inline std::vector<double> fsde_euler(const FsdeParams& params,
                                      std::span<const int> regime_path,
                                      std::uint64_t seed) {
  detail::validate_fsde(params);
  const int n = static_cast<int>(regime_path.size());
  for (int r : regime_path) {
    if (r < 0 || r >= static_cast<int>(params.levels.size())) {
      throw InvalidParams("fsde invariant violated: regime index outside the level table");
    }
  }

  Rng init_rng(derive_seed(seed, 0));
  std::vector<double> path(static_cast<std::size_t>(n) + 1);
  path[0] = params.initial_mean + std::sqrt(params.initial_var) * init_rng.normal();

  std::vector<double> noise;
  if (params.diffusion > 0.0 && n > 0) {
    noise = fbm_sample({params.hurst, n, 1.0, derive_seed(seed, 1)});
  } else {
    noise.assign(static_cast<std::size_t>(std::max(n, 0)), 0.0);
  }

  for (int t = 0; t < n; ++t) {
    const double level = params.levels[static_cast<std::size_t>(regime_path[t])];
    path[static_cast<std::size_t>(t) + 1] =
        path[static_cast<std::size_t>(t)] +
        params.reversion_rate * (level - path[static_cast<std::size_t>(t)]) +
        params.diffusion * noise[static_cast<std::size_t>(t)];
  }
  return path;
}

// Standard forward filter over scalar observations: predict the occupancy
// through the transition matrix, correct by Gaussian emission likelihoods,
// renormalize. Likelihoods are handled in log space with a max-subtraction
// per step. At t = 0 the initial occupancy is corrected directly.
inline RegimePosteriors slds_forward(std::span<const double> observations,
                                     const SldsParams& params) {
  detail::validate_slds(params);
  if (observations.empty()) {
    throw InvalidParams("slds forward filter requires at least one observation");
  }

  const std::size_t K = params.transition.size();
  const std::size_t n = observations.size();
  RegimePosteriors out;
  out.probs.assign(K, std::vector<double>(n, 0.0));

  std::vector<double> posterior(K, 0.0);
  std::vector<double> prior(K, 0.0);
  std::vector<double> log_weight(K, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    if (t == 0) {
      prior = params.initial_occupancy;
    } else {
      for (std::size_t k = 0; k < K; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < K; ++j) acc += posterior[j] * params.transition[j][k];
        prior[k] = acc;
      }
    }
    double max_lw = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
      log_weight[k] = (prior[k] > 0.0 ? std::log(prior[k])
                                      : -std::numeric_limits<double>::infinity()) +
                      detail::log_gaussian(observations[t], params.emission_mean[k],
                                           params.emission_var[k]);
      max_lw = std::max(max_lw, log_weight[k]);
    }
    if (!std::isfinite(max_lw)) {
      throw ZeroLikelihood("all regime likelihoods vanished at t=" + std::to_string(t));
    }
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      posterior[k] = std::exp(log_weight[k] - max_lw);
      total += posterior[k];
    }
    for (std::size_t k = 0; k < K; ++k) {
      posterior[k] /= total;
      out.probs[k][t] = posterior[k];
    }
  }
  return out;
}

// One regime's posterior sequence annotated with the evaluation onset.
inline ProbabilityStream regime_stream(const RegimePosteriors& posteriors, int regime,
                                       int t_start) {
  if (regime < 0 || regime >= posteriors.num_regimes()) {
    throw InvalidParams("regime index outside [0, K)");
  }
  return ProbabilityStream(posteriors.probs[static_cast<std::size_t>(regime)], t_start);
}

// Deliberately sluggish reference detector in the EWMA control-chart mold.
// A location estimate is calibrated on a warm-up prefix of
// ceil(half_life_steps) samples (expanding mean during the warm-up, frozen
// afterwards); squared deviations from it are smoothed by an EWMA with the
// given half-life, centered on the grand mean of the squared deviations,
// and squashed through a logistic with a saturation floor:
//   P_t = logistic((ewma_t - mean(d)) / logistic_scale),
//   d_t = (y_t - ybar_warmup)^2,  P clamped to [1e-3, 1 - 1e-3].
// Constant observations give exactly logistic(0) = 0.5.
inline ProbabilityStream ewma_detector(std::span<const double> observations,
                                       double half_life_steps, double logistic_scale,
                                       int t_start) {
  if (!(half_life_steps > 0.0) || !(logistic_scale > 0.0)) {
    throw InvalidParams("ewma invariant violated: half-life and logistic scale must be > 0");
  }
  const std::size_t n = observations.size();
  const std::size_t warmup =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(half_life_steps)));

  std::vector<double> sq_dev(n, 0.0);
  double location = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    if (t < warmup) {
      location += (observations[t] - location) / static_cast<double>(t + 1);
    }
    const double d = observations[t] - location;
    sq_dev[t] = d * d;
  }

  detail::CompensatedSum total;
  for (double d : sq_dev) total.add(d);
  const double grand_mean = total.value() / static_cast<double>(n);

  // Chart initialized at the center line, as usual for EWMA monitors.
  const double keep = std::exp2(-1.0 / half_life_steps);
  std::vector<double> probs(n, 0.0);
  double ewma = grand_mean;
  for (std::size_t t = 0; t < n; ++t) {
    ewma = keep * ewma + (1.0 - keep) * sq_dev[t];
    const double p = detail::logistic((ewma - grand_mean) / logistic_scale);
    probs[t] = std::clamp(p, 1e-3, 1.0 - 1e-3);
  }
  return ProbabilityStream(std::move(probs), t_start);
}

// Right-shifts the post-onset profile by delta steps, back-filling the gap
// with the baseline mean so no spurious lift appears; the pre-onset segment
// is untouched.
inline ProbabilityStream delay_stream(const ProbabilityStream& stream, int delta) {
  if (delta < 0 || delta > stream.horizon() - stream.onset()) {
    throw DelayExceedsWindow("delay invariant violated: delta must lie in [0, T - t_start]");
  }
  if (delta == 0) return stream;
  const double baseline = compute_baseline(stream);
  std::vector<double> probs = stream.probs();
  const int t0 = stream.onset();
  for (int t = stream.horizon(); t >= t0 + delta; --t) {
    probs[static_cast<std::size_t>(t)] = stream.at(t - delta);
  }
  for (int t = t0; t < t0 + delta; ++t) {
    probs[static_cast<std::size_t>(t)] = baseline;
  }
  return ProbabilityStream(std::move(probs), t0);
}

}  // namespace hed
