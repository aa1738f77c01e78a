#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hed/errors.hpp"
#include "hed/rng.hpp"
#include "hed/score.hpp"
#include "hed/stream.hpp"

namespace hed {

struct BootstrapConfig {
  int num_resamples = 2000;
  std::optional<int> block_len;  // empty = floor(T^(1/3)), capped at post-onset length
  std::uint64_t seed = 0;
  double confidence_level = 0.95;
  int num_threads = 1;
};

struct BootstrapResult {
  double observed_diff = 0.0;
  std::vector<double> resampled_diffs;
  double p_value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int block_len = 0;
};

// floor(T^(1/3)) with a minimum of 1. Integer-corrected so exact cubes are
// not lost to floating-point cbrt rounding.
inline int default_block_len(int horizon) {
  if (horizon < 1) {
    throw InvalidParams("block length requires horizon >= 1");
  }
  int k = static_cast<int>(std::cbrt(static_cast<double>(horizon)));
  while (static_cast<long long>(k + 1) * (k + 1) * (k + 1) <= horizon) ++k;
  while (k > 1 && static_cast<long long>(k) * k * k > horizon) --k;
  return std::max(k, 1);
}

// Moving block bootstrap of one stream. The pre-onset segment and the onset
// are preserved verbatim (the baseline window is never resampled); the
// post-onset segment is rebuilt from uniformly drawn overlapping length-b
// blocks, truncated to the original length.
inline ProbabilityStream block_resample(const ProbabilityStream& stream, int block_len,
                                        std::uint64_t seed) {
  const int t0 = stream.onset();
  const int len = stream.post_onset_length();
  if (block_len < 1) {
    throw InvalidParams("block length must be >= 1");
  }
  if (block_len > len) {
    throw BlockTooLong("block length " + std::to_string(block_len) +
                       " exceeds post-onset segment length " + std::to_string(len));
  }

  std::vector<double> out = stream.probs();
  Rng rng(seed);
  const std::uint64_t num_starts = static_cast<std::uint64_t>(len - block_len + 1);
  int filled = 0;
  while (filled < len) {
    const int start = static_cast<int>(rng.below(num_starts));
    const int take = std::min(block_len, len - filled);
    for (int i = 0; i < take; ++i) {
      out[static_cast<std::size_t>(t0 + filled + i)] = stream.at(t0 + start + i);
    }
    filled += take;
  }
  return ProbabilityStream(std::move(out), t0);
}

namespace detail {

// Linear-interpolation percentile of an ascending-sorted sample.
inline double percentile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted.front();
  const double pos = p * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

// One-sided block-bootstrap comparison of two detectors on the same window.
// Each iteration derives its own seed from (cfg.seed, iteration index) and
// applies the same block draws to both streams, preserving cross-detector
// alignment; results are identical at any thread count.
inline BootstrapResult bootstrap_compare(const ProbabilityStream& stream_a,
                                         const ProbabilityStream& stream_b,
                                         const DecayParams& decay,
                                         const BootstrapConfig& cfg) {
  if (stream_a.onset() != stream_b.onset() || stream_a.horizon() != stream_b.horizon()) {
    throw MismatchedWindows(
        "comparison invariant violated: streams must share t_start and T (got t_start " +
        std::to_string(stream_a.onset()) + " vs " + std::to_string(stream_b.onset()) +
        ", T " + std::to_string(stream_a.horizon()) + " vs " +
        std::to_string(stream_b.horizon()) + ")");
  }
  if (cfg.num_resamples < 1) {
    throw InvalidParams("bootstrap config invariant violated: num_resamples must be >= 1");
  }
  if (!(cfg.confidence_level > 0.0 && cfg.confidence_level < 1.0)) {
    throw InvalidParams(
        "bootstrap config invariant violated: confidence_level must lie in (0, 1)");
  }

  int block_len;
  if (cfg.block_len.has_value()) {
    block_len = *cfg.block_len;  // validated by block_resample
  } else {
    block_len = std::min(default_block_len(stream_a.horizon()), stream_a.post_onset_length());
  }

  BootstrapResult result;
  result.block_len = block_len;
  result.observed_diff =
      hed_score(stream_a, decay).score - hed_score(stream_b, decay).score;

  const int B = cfg.num_resamples;
  result.resampled_diffs.resize(static_cast<std::size_t>(B));
  auto run_range = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const std::uint64_t iter_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
      const ProbabilityStream ra = block_resample(stream_a, block_len, iter_seed);
      const ProbabilityStream rb = block_resample(stream_b, block_len, iter_seed);
      result.resampled_diffs[static_cast<std::size_t>(i)] =
          hed_score(ra, decay).score - hed_score(rb, decay).score;
    }
  };

  const int num_threads = std::max(1, cfg.num_threads);
  if (num_threads == 1) {
    run_range(0, B);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(num_threads));
    const int chunk = (B + num_threads - 1) / num_threads;
    for (int w = 0; w < num_threads; ++w) {
      const int begin = w * chunk;
      const int end = std::min(B, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  int count_geq = 0;
  for (double d : result.resampled_diffs) {
    if (d >= result.observed_diff) ++count_geq;
  }
  result.p_value = static_cast<double>(count_geq) / static_cast<double>(B);

  std::vector<double> sorted = result.resampled_diffs;
  std::sort(sorted.begin(), sorted.end());
  const double alpha = 1.0 - cfg.confidence_level;
  result.ci_low = detail::percentile_sorted(sorted, alpha / 2.0);
  result.ci_high = detail::percentile_sorted(sorted, 1.0 - alpha / 2.0);
  return result;
}

}  // namespace hed
