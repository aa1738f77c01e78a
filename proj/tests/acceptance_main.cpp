// Acceptance suite: one criterion per line, pass/fail with elapsed time.
// Exit code is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hed/hed.hpp"
#include "stat_util.hpp"

using hed::BoundMode;
using hed::DecayParams;
using hed::ProbabilityStream;

namespace {

struct Failure {
  std::string message;
};

using CheckFn = std::function<std::string()>;  // returns "" on pass

std::vector<double> random_probs(hed::Rng& rng, int count, double lo = 0.0, double hi = 1.0) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& p : out) p = lo + (hi - lo) * rng.uniform01();
  return out;
}

hed::ScenarioSpec canonical_spec() {
  hed::ScenarioSpec spec;
  spec.horizon = 200;
  spec.onset = 50;
  spec.nominal_mean = 0.0;
  spec.nominal_var = 1.0;
  spec.anomalous_mean = 3.0;
  spec.anomalous_var = 1.0;
  spec.hurst = 0.7;
  spec.seed = 73;
  spec.roster = {"slds", "ewma"};
  return spec;
}

const ProbabilityStream& stream_of(const hed::Scenario& sc, const std::string& name) {
  for (const auto& run : sc.streams) {
    if (run.name == name) return run.stream;
  }
  throw std::runtime_error("missing detector " + name);
}

int first_crossing(const ProbabilityStream& s, double level) {
  for (int t = s.onset(); t <= s.horizon(); ++t) {
    if (s.at(t) >= level) return t;
  }
  return s.horizon() + 1;
}

// ----- criterion bodies ----------------------------------------------------

std::string criterion_table() {
  const double lambdas[] = {0.50, 0.14, 0.05, 0.02, 0.01};
  const double printed[] = {1.39, 4.95, 13.86, 34.66, 69.31};
  for (int i = 0; i < 5; ++i) {
    const double computed = hed::half_life(DecayParams(lambdas[i]));
    const double rounded = std::round(computed * 100.0) / 100.0;
    if (std::abs(rounded - printed[i]) > 1e-9) {
      std::ostringstream msg;
      msg << "lambda " << lambdas[i] << ": computed half-life " << computed
          << " rounds to " << rounded << ", printed value is " << printed[i];
      return msg.str();
    }
  }
  return "";
}

std::string criterion_a1_monotonicity() {
  hed::Rng rng(101ull);
  const int t_start = 20, horizon = 100;
  const double lambdas[] = {0.01, 0.05, 0.14, 0.5};
  const int deltas[] = {0, 1, 2, 5, 10};
  int violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int profile_len = 3 + static_cast<int>(rng.below(58));
    std::vector<double> profile(static_cast<std::size_t>(profile_len));
    for (auto& g : profile) g = 0.05 + 0.95 * rng.uniform01();

    for (double lambda : lambdas) {
      double prev = std::numeric_limits<double>::infinity();
      for (int delta : deltas) {
        std::vector<double> probs(horizon + 1, 0.0);
        for (int i = 0; i < profile_len; ++i) {
          probs[static_cast<std::size_t>(t_start + delta + i)] = profile[i];
        }
        const double score =
            hed::hed_score(ProbabilityStream(probs, t_start), DecayParams(lambda)).score;
        if (!(score < prev)) ++violations;
        prev = score;
      }
    }
  }
  if (violations > 0) {
    return std::to_string(violations) + " monotonicity violations";
  }
  return "";
}

std::string criterion_a2_bias_invariance() {
  hed::Rng rng(202ull);
  int violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    // Detector-shaped stream: calm baseline window, post-onset reaching high.
    std::vector<double> probs = random_probs(rng, 151, 0.0, 0.5);
    for (int t = 40; t <= 150; ++t) probs[t] = 0.5 + 0.5 * rng.uniform01();
    const ProbabilityStream s(probs, 40);
    const DecayParams decay(0.14);
    const double original = hed::hed_score(s, decay).score;

    const double pre_max = *std::max_element(probs.begin(), probs.begin() + 40);
    const double post_max = *std::max_element(probs.begin() + 40, probs.end());
    const double global_max = std::max(pre_max, post_max);

    // no saturation: equality to 1e-12
    {
      const double c = (1.0 - global_max) * rng.uniform01();
      std::vector<double> shifted = probs;
      for (auto& p : shifted) p = std::min(1.0, p + c);
      const double moved = hed::hed_score(ProbabilityStream(shifted, 40), decay).score;
      if (std::abs(moved - original) > 1e-12) ++violations;
    }
    // saturation clamps the post-onset peak only: one-sided
    {
      const double c =
          (1.0 - post_max) + (post_max - pre_max) * (0.2 + 0.6 * rng.uniform01());
      std::vector<double> shifted = probs;
      for (auto& p : shifted) p = std::min(1.0, p + c);
      const double moved = hed::hed_score(ProbabilityStream(shifted, 40), decay).score;
      if (!(moved <= original + 1e-12)) ++violations;
    }
  }
  if (violations > 0) {
    return std::to_string(violations) + " bias-invariance violations";
  }
  return "";
}

std::string criterion_a3_decomposability() {
  hed::Rng rng(303ull);
  int violations = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int t_start = 10 + static_cast<int>(rng.below(30));
    const int horizon = t_start + 20 + static_cast<int>(rng.below(150));
    const ProbabilityStream s(random_probs(rng, horizon + 1), t_start);

    std::vector<int> bounds = {t_start, horizon};
    const int cuts = 1 + static_cast<int>(rng.below(6));
    for (int i = 0; i < cuts; ++i) {
      const int c =
          t_start + 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(horizon - t_start - 1)));
      if (std::find(bounds.begin(), bounds.end(), c) == bounds.end()) bounds.push_back(c);
    }
    std::sort(bounds.begin(), bounds.end());

    const DecayParams decay(0.01 + 0.5 * rng.uniform01());
    const auto report = hed::hed_phase_decomposition(s, decay, bounds);
    double total = 0.0;
    for (double c : report.contributions) total += c;
    if (std::abs(total - hed::hed_score(s, decay).score) > 1e-12) ++violations;
  }
  if (violations > 0) {
    return std::to_string(violations) + " additivity violations";
  }
  return "";
}

std::string criterion_boundedness() {
  hed::Rng rng(404ull);
  int violations = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const int horizon = 30 + static_cast<int>(rng.below(200));
    const int t_start = 5 + static_cast<int>(rng.below(static_cast<std::uint64_t>(horizon - 10)));
    const ProbabilityStream s(random_probs(rng, horizon + 1), t_start);
    const DecayParams decay(0.005 + 0.7 * rng.uniform01());

    const double score = hed::hed_score(s, decay).score;
    const double exact = hed::hed_exact_piecewise(s, decay);
    if (!(score >= 0.0) || !(exact >= 0.0)) ++violations;
    if (!(score <= hed::hed_upper_bound(s, decay, BoundMode::discrete))) ++violations;
    if (!(exact <= hed::hed_upper_bound(s, decay, BoundMode::continuous))) ++violations;
  }
  if (violations > 0) {
    return std::to_string(violations) + " bound violations";
  }
  return "";
}

std::string criterion_gradient() {
  // Window lengths and decay rates are kept in a range where the smallest
  // gradient components stay well above the cancellation noise floor of
  // central differences at step 1e-6, so the comparison is meaningful at
  // the 1e-5 relative tolerance.
  hed::Rng rng(505ull);
  const double step = 1e-6;
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int t_start = 10 + static_cast<int>(rng.below(15));
    const int horizon = t_start + 25 + static_cast<int>(rng.below(21));
    std::vector<double> probs = random_probs(rng, horizon + 1, 0.2, 0.8);
    const double lambda = 0.05 + 0.1 * rng.uniform01();
    const double beta = 2.0 + 6.0 * rng.uniform01();

    const auto grad =
        hed::hed_smooth_grad(ProbabilityStream(probs, t_start), DecayParams(lambda), beta);
    for (std::size_t t = 0; t < probs.size(); ++t) {
      std::vector<double> hi = probs, lo = probs;
      hi[t] += step;
      lo[t] -= step;
      const double fd =
          (hed::hed_smooth(ProbabilityStream(hi, t_start), DecayParams(lambda), beta) -
           hed::hed_smooth(ProbabilityStream(lo, t_start), DecayParams(lambda), beta)) /
          (2.0 * step);
      const double denom = std::max({std::abs(grad[t]), std::abs(fd), 1e-300});
      worst = std::max(worst, std::abs(grad[t] - fd) / denom);
    }
  }
  if (worst > 1e-5) {
    std::ostringstream msg;
    msg << "worst componentwise relative error " << worst;
    return msg.str();
  }
  return "";
}

std::string criterion_fbm_fidelity() {
  const int n = 100000;
  const std::uint64_t seeds[] = {881001, 881002, 881005};
  const double hursts[] = {0.5, 0.7, 0.9};
  std::ostringstream msg;
  for (int i = 0; i < 3; ++i) {
    const auto x = hed::fbm_sample({hursts[i], n, 1.0, seeds[i]});
    for (int k = 0; k <= 5; ++k) {
      const double expected = testutil::fgn_gamma(hursts[i], 1.0, k);
      const double se = testutil::acov_se(hursts[i], 1.0, n, k);
      const double got = testutil::acov_hat(x, k);
      if (std::abs(got - expected) > 3.0 * se) {
        msg << "H=" << hursts[i] << " lag " << k << ": " << got << " vs " << expected
            << " (3se=" << 3.0 * se << "); ";
      }
    }
  }
  return msg.str();
}

std::string criterion_ordering_end_to_end() {
  const auto sc = hed::generate_scenario(canonical_spec());
  const auto& slds = stream_of(sc, "slds");
  const auto& ewma = stream_of(sc, "ewma");
  const DecayParams decay(0.14);

  const int cross_slds = first_crossing(slds, 0.9);
  const int cross_ewma = first_crossing(ewma, 0.9);
  if (!(cross_slds < cross_ewma)) {
    std::ostringstream msg;
    msg << "ordering hypothesis not met: slds crosses at " << cross_slds << ", ewma at "
        << cross_ewma;
    return msg.str();
  }

  const double h_slds = hed::hed_score(slds, decay).score;
  const double h_ewma = hed::hed_score(ewma, decay).score;
  if (!(h_slds > h_ewma)) {
    std::ostringstream msg;
    msg << "hed ordering violated: " << h_slds << " vs " << h_ewma;
    return msg.str();
  }

  hed::BootstrapConfig cfg;
  cfg.num_resamples = 2000;
  cfg.block_len = 5;  // floor(200^(1/3))
  cfg.seed = 424242;
  const auto boot = hed::bootstrap_compare(slds, ewma, decay, cfg);
  if (!(boot.p_value < 0.01)) {
    std::ostringstream msg;
    msg << "bootstrap p-value " << boot.p_value << " not below 0.01";
    return msg.str();
  }
  return "";
}

std::string criterion_frontier_coherence() {
  const auto sc = hed::generate_scenario(canonical_spec());
  const DecayParams decay(0.14);
  const auto curve_slds = hed::frontier_curve(stream_of(sc, "slds"), decay, {}, "slds");
  const auto curve_ewma = hed::frontier_curve(stream_of(sc, "ewma"), decay, {}, "ewma");

  if (!hed::pareto_dominates(curve_slds, curve_ewma)) {
    return "slds frontier does not dominate the ewma frontier";
  }
  const auto ab = hed::abc(curve_slds, curve_ewma);
  const auto ba = hed::abc(curve_ewma, curve_slds);
  if (!(ab.abc > 0.0)) {
    return "abc not positive: " + std::to_string(ab.abc);
  }
  if (std::abs(ab.abc + ba.abc) > 1e-12) {
    return "abc antisymmetry violated: " + std::to_string(ab.abc + ba.abc);
  }
  return "";
}

template <typename T>
bool bytes_equal(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

std::string criterion_determinism() {
  // fBm sample (criterion 7 inputs) repeated
  const auto fbm_a = hed::fbm_sample({0.7, 100000, 1.0, 881002});
  const auto fbm_b = hed::fbm_sample({0.7, 100000, 1.0, 881002});
  if (!bytes_equal(fbm_a, fbm_b)) return "fbm sample not reproducible";

  // scenario + bootstrap (criterion 8) repeated at several thread counts
  const auto sc_a = hed::generate_scenario(canonical_spec());
  const auto sc_b = hed::generate_scenario(canonical_spec());
  if (!bytes_equal(sc_a.observations, sc_b.observations)) {
    return "scenario observations not reproducible";
  }
  for (std::size_t i = 0; i < sc_a.streams.size(); ++i) {
    if (!bytes_equal(sc_a.streams[i].stream.probs(), sc_b.streams[i].stream.probs())) {
      return "scenario stream " + sc_a.streams[i].name + " not reproducible";
    }
  }

  const DecayParams decay(0.14);
  hed::BootstrapConfig cfg;
  cfg.num_resamples = 2000;
  cfg.block_len = 5;
  cfg.seed = 424242;
  cfg.num_threads = 1;
  const auto serial =
      hed::bootstrap_compare(stream_of(sc_a, "slds"), stream_of(sc_a, "ewma"), decay, cfg);
  for (int threads : {2, 4}) {
    cfg.num_threads = threads;
    const auto parallel =
        hed::bootstrap_compare(stream_of(sc_b, "slds"), stream_of(sc_b, "ewma"), decay, cfg);
    if (parallel.observed_diff != serial.observed_diff ||
        parallel.p_value != serial.p_value || parallel.ci_low != serial.ci_low ||
        parallel.ci_high != serial.ci_high ||
        !bytes_equal(parallel.resampled_diffs, serial.resampled_diffs)) {
      return "bootstrap result differs at " + std::to_string(threads) + " threads";
    }
  }

  // frontier + abc (criterion 9) repeated
  auto run_frontier = [&](const hed::Scenario& sc) {
    const auto ca = hed::frontier_curve(stream_of(sc, "slds"), decay, {}, "slds");
    const auto cb = hed::frontier_curve(stream_of(sc, "ewma"), decay, {}, "ewma");
    return hed::abc(ca, cb);
  };
  const auto ab_a = run_frontier(sc_a);
  const auto ab_b = run_frontier(sc_b);
  if (ab_a.abc != ab_b.abc || !bytes_equal(ab_a.grid, ab_b.grid) ||
      ab_a.dominated != ab_b.dominated) {
    return "frontier comparison not reproducible";
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;  // <= 0: no budget
    CheckFn run;
  };

  const std::vector<Criterion> criteria = {
      {1, "table-reproduction", 1.0, criterion_table},
      {2, "axiom-a1-temporal-monotonicity", 10.0, criterion_a1_monotonicity},
      {3, "axiom-a2-bias-invariance", 10.0, criterion_a2_bias_invariance},
      {4, "axiom-a3-decomposability", 5.0, criterion_a3_decomposability},
      {5, "boundedness-mode-matched", 5.0, criterion_boundedness},
      {6, "smooth-gradient-check", 10.0, criterion_gradient},
      {7, "fbm-autocovariance-fidelity", 30.0, criterion_fbm_fidelity},
      {8, "detector-ordering-end-to-end", 60.0, criterion_ordering_end_to_end},
      {9, "frontier-coherence", 10.0, criterion_frontier_coherence},
      {10, "determinism-across-reruns-and-threads", 0.0, criterion_determinism},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string message;
    try {
      message = criterion.run();
    } catch (const std::exception& e) {
      message = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (message.empty() && criterion.budget_seconds > 0.0 &&
        elapsed > criterion.budget_seconds) {
      std::ostringstream msg;
      msg << "runtime " << elapsed << "s exceeds budget " << criterion.budget_seconds << "s";
      message = msg.str();
    }
    if (message.empty()) {
      std::printf("[PASS] %2d %s (%.2fs)\n", criterion.id, criterion.name, elapsed);
    } else {
      std::printf("[FAIL] %2d %s (%.2fs): %s\n", criterion.id, criterion.name, elapsed,
                  message.c_str());
      ++failures;
    }
  }
  return failures;
}
