#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hed/errors.hpp"
#include "hed/score.hpp"
#include "hed/stream.hpp"

namespace hed {

struct RegimeTransition {
  int from_regime = 0;
  int to_regime = 0;
  int onset = 0;
};

// A K-regime posterior log on a shared time grid: one posterior sequence per
// regime (a probability simplex point at every index) plus the observed
// transition events.
class RegimeTransitionLog {
 public:
  RegimeTransitionLog(int num_regimes, std::vector<RegimeTransition> transitions,
                      std::vector<std::vector<double>> regime_posteriors)
      : num_regimes_(num_regimes),
        transitions_(std::move(transitions)),
        posteriors_(std::move(regime_posteriors)) {
    if (num_regimes_ < 2) {
      throw InvalidParams("regime log invariant violated: num_regimes must be >= 2");
    }
    if (posteriors_.size() != static_cast<std::size_t>(num_regimes_)) {
      throw InvalidParams(
          "regime log invariant violated: one posterior stream per regime is required");
    }
    const std::size_t len = posteriors_.front().size();
    if (len == 0) {
      throw InvalidParams("regime log invariant violated: posterior streams are empty");
    }
    for (const auto& seq : posteriors_) {
      if (seq.size() != len) {
        throw InvalidParams(
            "regime log invariant violated: posterior streams must share one grid");
      }
    }
    for (std::size_t t = 0; t < len; ++t) {
      double total = 0.0;
      for (const auto& seq : posteriors_) {
        if (!(seq[t] >= 0.0)) {
          throw InvalidParams(
              "simplex invariant violated: regime posterior negative at t=" +
              std::to_string(t));
        }
        total += seq[t];
      }
      if (std::abs(total - 1.0) > 1e-9) {
        throw InvalidParams(
            "simplex invariant violated: regime posteriors sum to " +
            std::to_string(total) + " at t=" + std::to_string(t));
      }
    }
    for (const auto& tr : transitions_) {
      if (tr.from_regime < 0 || tr.from_regime >= num_regimes_ || tr.to_regime < 0 ||
          tr.to_regime >= num_regimes_) {
        throw InvalidParams(
            "regime log invariant violated: transition regime index outside [0, K)");
      }
      if (tr.from_regime == tr.to_regime) {
        throw InvalidParams(
            "regime log invariant violated: transitions must move between distinct regimes");
      }
      if (tr.onset < 0 || tr.onset >= static_cast<int>(len)) {
        throw InvalidParams("regime log invariant violated: transition onset off the grid");
      }
    }
  }

  int num_regimes() const { return num_regimes_; }
  const std::vector<RegimeTransition>& transitions() const { return transitions_; }
  const std::vector<std::vector<double>>& posteriors() const { return posteriors_; }
  int horizon() const { return static_cast<int>(posteriors_.front().size()) - 1; }

 private:
  int num_regimes_;
  std::vector<RegimeTransition> transitions_;
  std::vector<std::vector<double>> posteriors_;
};

// K x K matrix with absent cells (no observed transition, and the diagonal).
class RegimeMatrix {
 public:
  explicit RegimeMatrix(int num_regimes)
      : num_regimes_(num_regimes),
        cells_(static_cast<std::size_t>(num_regimes) * static_cast<std::size_t>(num_regimes)) {}

  int num_regimes() const { return num_regimes_; }

  std::optional<double>& at(int from, int to) {
    return cells_[static_cast<std::size_t>(from) * static_cast<std::size_t>(num_regimes_) +
                  static_cast<std::size_t>(to)];
  }
  const std::optional<double>& at(int from, int to) const {
    return cells_[static_cast<std::size_t>(from) * static_cast<std::size_t>(num_regimes_) +
                  static_cast<std::size_t>(to)];
  }

 private:
  int num_regimes_;
  std::vector<std::optional<double>> cells_;
};

// Multi-regime HED matrix: entry (i, j) is the mean, over all logged i->j
// transitions, of the HED score of the regime-j posterior stream scored with
// t_start at the transition onset. Each transition's window ends one step
// before the next transition begins (the last window runs to the global
// horizon), so overlapping regimes are never double-counted.
inline RegimeMatrix hed_matrix(const RegimeTransitionLog& log, const DecayParams& decay) {
  if (log.transitions().empty()) {
    throw NoTransitions("regime matrix requires at least one transition event");
  }

  std::vector<RegimeTransition> events = log.transitions();
  std::stable_sort(events.begin(), events.end(),
                   [](const RegimeTransition& a, const RegimeTransition& b) {
                     return a.onset < b.onset;
                   });

  const int K = log.num_regimes();
  std::vector<detail::CompensatedSum> sums(static_cast<std::size_t>(K) *
                                           static_cast<std::size_t>(K));
  std::vector<int> counts(sums.size(), 0);

  for (std::size_t i = 0; i < events.size(); ++i) {
    const RegimeTransition& ev = events[i];
    const int window_end =
        (i + 1 < events.size()) ? events[i + 1].onset - 1 : log.horizon();
    if (ev.onset == 0 || window_end <= ev.onset) {
      throw WindowTooShort(
          "transition window invariant violated: each i->j window needs a "
          "non-empty pre-onset segment and T > t_start (onset=" +
          std::to_string(ev.onset) + ", window end=" + std::to_string(window_end) + ")");
    }
    const auto& regime_probs = log.posteriors()[static_cast<std::size_t>(ev.to_regime)];
    std::vector<double> window(regime_probs.begin(),
                               regime_probs.begin() + window_end + 1);
    const ProbabilityStream sub(std::move(window), ev.onset);
    const std::size_t cell = static_cast<std::size_t>(ev.from_regime) *
                                 static_cast<std::size_t>(K) +
                             static_cast<std::size_t>(ev.to_regime);
    sums[cell].add(hed_score(sub, decay).score);
    counts[cell] += 1;
  }

  RegimeMatrix matrix(K);
  for (int i = 0; i < K; ++i) {
    for (int j = 0; j < K; ++j) {
      const std::size_t cell =
          static_cast<std::size_t>(i) * static_cast<std::size_t>(K) + static_cast<std::size_t>(j);
      if (counts[cell] > 0) {
        matrix.at(i, j) = sums[cell].value() / static_cast<double>(counts[cell]);
      }
    }
  }
  return matrix;
}

}  // namespace hed
