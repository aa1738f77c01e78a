#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hed/detectors.hpp"
#include "hed/errors.hpp"
#include "hed/rng.hpp"
#include "hed/stream.hpp"

namespace hed {

// Synthetic scenario: a latent fSDE path snapping between a nominal and an
// anomalous regime level at a scripted onset, observed through
// regime-dependent Gaussian emission noise, with reference detectors run on
// the observations. Fully reproducible under the seed.
struct ScenarioSpec {
  int horizon = 0;   // T; observations indexed 0..T
  int onset = 0;     // t_start, strictly interior
  double nominal_mean = 0.0;
  double nominal_var = 1.0;
  double anomalous_mean = 0.0;
  double anomalous_var = 1.0;
  double hurst = 0.7;
  std::uint64_t seed = 0;
  std::vector<std::string> roster = {"slds", "ewma"};
};

struct DetectorRun {
  std::string name;
  ProbabilityStream stream;
};

struct Scenario {
  std::vector<double> observations;
  int truth_onset = 0;
  std::vector<DetectorRun> streams;
};

namespace detail {

// Generator constants shared by every scenario: latent mean-reversion rate
// and diffusion, switching-filter priors, and the sluggish detector's
// smoothing parameters.
inline constexpr double kFsdeRate = 1.0;
inline constexpr double kFsdeDiffusion = 0.25;
inline constexpr double kSldsSwitchProb = 0.02;
inline constexpr double kSldsInitialAnomalous = 0.5;
inline constexpr double kEwmaHalfLife = 20.0;
inline constexpr double kEwmaLogisticScale = 0.85;

inline void validate_scenario(const ScenarioSpec& spec) {
  if (!(spec.onset > 0 && spec.onset < spec.horizon)) {
    throw InvalidParams(
        "scenario invariant violated: onset must satisfy 0 < onset < horizon (got onset=" +
        std::to_string(spec.onset) + ", horizon=" + std::to_string(spec.horizon) + ")");
  }
  if (!(spec.nominal_var > 0.0) || !(spec.anomalous_var > 0.0)) {
    throw InvalidParams("scenario invariant violated: emission variances must be > 0");
  }
  if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
    throw InvalidParams("scenario invariant violated: hurst must lie in (0, 1)");
  }
  if (spec.roster.empty()) {
    throw InvalidParams("scenario invariant violated: detector roster is empty");
  }
  for (const std::string& name : spec.roster) {
    if (name != "slds" && name != "ewma") {
      throw InvalidParams("unknown detector '" + name + "'; valid names: slds, ewma");
    }
  }
}

}  // namespace detail

inline Scenario generate_scenario(const ScenarioSpec& spec) {
  detail::validate_scenario(spec);

  const int T = spec.horizon;
  // regime_path[t] drives the latent step t -> t+1, so the step arriving at
  // the onset index already uses the anomalous drift: the process is in
  // regime 1 from t = onset on, and y_onset is the first anomalous sample.
  std::vector<int> regime_path(static_cast<std::size_t>(T), 0);
  for (int t = spec.onset - 1; t < T; ++t) regime_path[static_cast<std::size_t>(t)] = 1;

  FsdeParams fsde;
  fsde.reversion_rate = detail::kFsdeRate;
  fsde.levels = {spec.nominal_mean, spec.anomalous_mean};
  fsde.diffusion = detail::kFsdeDiffusion;
  fsde.hurst = spec.hurst;
  fsde.initial_mean = spec.nominal_mean;
  // Stationary variance of the AR(1) reduction at H = 1/2.
  fsde.initial_var = detail::kFsdeDiffusion * detail::kFsdeDiffusion /
                     (1.0 - (1.0 - detail::kFsdeRate) * (1.0 - detail::kFsdeRate));

  const std::vector<double> latent =
      fsde_euler(fsde, regime_path, derive_seed(spec.seed, 0));

  Rng emission_rng(derive_seed(spec.seed, 1));
  Scenario scenario;
  scenario.truth_onset = spec.onset;
  scenario.observations.resize(static_cast<std::size_t>(T) + 1);
  for (int t = 0; t <= T; ++t) {
    const bool anomalous = t >= spec.onset;
    const double sd = std::sqrt(anomalous ? spec.anomalous_var : spec.nominal_var);
    scenario.observations[static_cast<std::size_t>(t)] =
        latent[static_cast<std::size_t>(t)] + sd * emission_rng.normal();
  }

  for (const std::string& name : spec.roster) {
    if (name == "slds") {
      SldsParams slds;
      slds.transition = {{1.0 - detail::kSldsSwitchProb, detail::kSldsSwitchProb},
                         {detail::kSldsSwitchProb, 1.0 - detail::kSldsSwitchProb}};
      slds.emission_mean = {spec.nominal_mean, spec.anomalous_mean};
      slds.emission_var = {spec.nominal_var + fsde.initial_var,
                           spec.anomalous_var + fsde.initial_var};
      slds.initial_occupancy = {1.0 - detail::kSldsInitialAnomalous,
                                detail::kSldsInitialAnomalous};
      const RegimePosteriors posteriors = slds_forward(scenario.observations, slds);
      scenario.streams.push_back({name, regime_stream(posteriors, 1, spec.onset)});
    } else {
      scenario.streams.push_back(
          {name, ewma_detector(scenario.observations, detail::kEwmaHalfLife,
                               detail::kEwmaLogisticScale, spec.onset)});
    }
  }
  return scenario;
}

}  // namespace hed
