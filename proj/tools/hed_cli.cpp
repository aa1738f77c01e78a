// hed — command-line surface for the HED scoring toolkit.
//
// Subcommands:
//   score     score one stream file (HED, exact-piecewise, bounds, phases,
//             smooth surrogate)
//   compare   block-bootstrap comparison of two detectors
//   frontier  FAR-HED frontier, ABC and dominance verdict, CSV/SVG export
//   simulate  generate a synthetic scenario bundle from a JSON config
//   table     print the Hiremath Standard Table with recomputed half-lives
//
// Reports are JSON on stdout. Exit codes: 0 success, 2 usage or parse
// error, 3 invariant violation.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hed/hed.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&tt, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

ordered_json make_report(const std::string& command) {
  ordered_json report;
  report["command"] = command;
  report["version"] = hed::kVersion;
  report["timestamp"] = iso_timestamp();
  report["inputs"] = ordered_json::object();
  report["parameters"] = ordered_json::object();
  report["results"] = ordered_json::object();
  return report;
}

void emit(const ordered_json& report) { std::cout << report.dump(2) << std::endl; }

hed::DecayParams decay_from_flags(const std::optional<double>& lambda,
                                  const std::optional<double>& budget,
                                  ordered_json& params) {
  if (lambda.has_value()) {
    params["lambda_h"] = *lambda;
    return hed::DecayParams(*lambda);
  }
  const hed::DecayParams decay = hed::lambda_from_budget(*budget);
  params["budget"] = *budget;
  params["lambda_h"] = decay.lambda_h;
  return decay;
}

// Equal-width integer partition of [t_start, T] into k phases.
std::vector<int> equal_phase_boundaries(const hed::ProbabilityStream& stream, int k) {
  if (k < 1 || k > stream.horizon() - stream.onset()) {
    throw hed::InvalidPartition(
        "partition invariant violated: --phases must lie in [1, T - t_start]");
  }
  std::vector<int> bounds;
  bounds.reserve(static_cast<std::size_t>(k) + 1);
  const int span = stream.horizon() - stream.onset();
  for (int i = 0; i <= k; ++i) {
    bounds.push_back(stream.onset() + (i * span) / k);
  }
  return bounds;
}

int run_score(const std::string& stream_path, const std::optional<double>& lambda,
              const std::optional<double>& budget, const std::optional<int>& phases,
              const std::optional<double>& smooth_beta,
              const std::optional<std::string>& out_csv) {
  ordered_json report = make_report("score");
  report["inputs"][stream_path] = hed::io::digest_file_hex(stream_path);

  const auto loaded = hed::io::read_stream(stream_path);
  const hed::DecayParams decay = decay_from_flags(lambda, budget, report["parameters"]);

  const hed::HedResult result = hed::hed_score(loaded.stream, decay);
  auto& res = report["results"];
  res["t_start"] = loaded.stream.onset();
  res["horizon"] = loaded.stream.horizon();
  res["baseline"] = result.baseline;
  res["hed_score"] = result.score;
  res["hed_exact_piecewise"] = hed::hed_exact_piecewise(loaded.stream, decay);
  res["half_life"] = hed::half_life(decay);
  res["upper_bound_discrete"] =
      hed::hed_upper_bound(loaded.stream, decay, hed::BoundMode::discrete);
  res["upper_bound_continuous"] =
      hed::hed_upper_bound(loaded.stream, decay, hed::BoundMode::continuous);

  if (phases.has_value()) {
    report["parameters"]["phases"] = *phases;
    const auto phase_report = hed::hed_phase_decomposition(
        loaded.stream, decay, equal_phase_boundaries(loaded.stream, *phases));
    res["phases"]["boundaries"] = phase_report.boundaries;
    res["phases"]["contributions"] = phase_report.contributions;
  }
  if (smooth_beta.has_value()) {
    report["parameters"]["smooth_beta"] = *smooth_beta;
    res["hed_smooth"] = hed::hed_smooth(loaded.stream, decay, *smooth_beta);
  }
  if (out_csv.has_value()) {
    std::ofstream csv(*out_csv, std::ios::binary);
    if (!csv) {
      throw hed::io::ParseError("cannot open output csv: " + *out_csv);
    }
    csv << "t,lift,discount\n";
    for (std::size_t k = 0; k < result.lifts.size(); ++k) {
      csv << (loaded.stream.onset() + static_cast<int>(k)) << ','
          << hed::io::format_double(result.lifts[k]) << ','
          << hed::io::format_double(result.discounts[k]) << '\n';
    }
    res["lifts_csv"] = *out_csv;
  }

  emit(report);
  return 0;
}

int run_compare(const std::string& path_a, const std::string& path_b, double lambda,
                int num_resamples, const std::optional<int>& block,
                std::uint64_t seed) {
  ordered_json report = make_report("compare");
  report["inputs"][path_a] = hed::io::digest_file_hex(path_a);
  report["inputs"][path_b] = hed::io::digest_file_hex(path_b);
  report["seed"] = seed;

  const auto a = hed::io::read_stream(path_a);
  const auto b = hed::io::read_stream(path_b);
  const hed::DecayParams decay(lambda);

  hed::BootstrapConfig cfg;
  cfg.num_resamples = num_resamples;
  cfg.block_len = block;
  cfg.seed = seed;

  auto& params = report["parameters"];
  params["lambda_h"] = lambda;
  params["num_resamples"] = num_resamples;

  const hed::BootstrapResult result = hed::bootstrap_compare(a.stream, b.stream, decay, cfg);
  auto& res = report["results"];
  res["hed_a"] = hed::hed_score(a.stream, decay).score;
  res["hed_b"] = hed::hed_score(b.stream, decay).score;
  res["observed_diff"] = result.observed_diff;
  res["p_value"] = result.p_value;
  res["ci_low"] = result.ci_low;
  res["ci_high"] = result.ci_high;
  res["block_len"] = result.block_len;
  res["test"] = "one-sided moving block bootstrap, percentile CI";

  emit(report);
  return 0;
}

int run_frontier(const std::string& path_a, const std::optional<std::string>& path_b,
                 double lambda, const std::optional<std::string>& out_csv,
                 const std::optional<std::string>& out_svg) {
  ordered_json report = make_report("frontier");
  report["inputs"][path_a] = hed::io::digest_file_hex(path_a);

  const auto a = hed::io::read_stream(path_a);
  const hed::DecayParams decay(lambda);
  report["parameters"]["lambda_h"] = lambda;

  const std::string label_a = a.meta.detector.empty() ? "A" : a.meta.detector;
  std::vector<hed::FrontierCurve> curves;
  curves.push_back(hed::frontier_curve(a.stream, decay, {}, label_a));

  if (path_b.has_value()) {
    report["inputs"][*path_b] = hed::io::digest_file_hex(*path_b);
    const auto b = hed::io::read_stream(*path_b);
    std::string label_b = b.meta.detector.empty() ? "B" : b.meta.detector;
    if (label_b == label_a) label_b += "-2";
    curves.push_back(hed::frontier_curve(b.stream, decay, {}, label_b));
  }

  auto& res = report["results"];
  for (const auto& curve : curves) {
    res["curves"].push_back(
        {{"label", curve.label}, {"points", curve.points.size()}});
  }
  if (curves.size() == 2) {
    const hed::AbcResult ab = hed::abc(curves[0], curves[1]);
    res["abc"] = ab.abc;
    switch (ab.dominated) {
      case hed::Dominance::a_dominates:
        res["dominance"] = curves[0].label + " dominates";
        break;
      case hed::Dominance::b_dominates:
        res["dominance"] = curves[1].label + " dominates";
        break;
      case hed::Dominance::neither:
        res["dominance"] = "neither";
        break;
    }
  }

  if (out_csv.has_value()) {
    std::ofstream csv(*out_csv, std::ios::binary);
    if (!csv) {
      throw hed::io::ParseError("cannot open output csv: " + *out_csv);
    }
    csv << "label,theta,far,hed\n";
    for (const auto& curve : curves) {
      for (const auto& p : curve.points) {
        csv << curve.label << ',' << hed::io::format_double(p.threshold) << ','
            << hed::io::format_double(p.far) << ',' << hed::io::format_double(p.hed)
            << '\n';
      }
    }
    res["frontier_csv"] = *out_csv;
  }
  if (out_svg.has_value()) {
    std::ofstream svg(*out_svg, std::ios::binary);
    if (!svg) {
      throw hed::io::ParseError("cannot open output svg: " + *out_svg);
    }
    svg << hed::io::frontier_svg(curves);
    res["frontier_svg"] = *out_svg;
  }

  emit(report);
  return 0;
}

// Flat JSON -> ScenarioSpec with field-path diagnostics.
hed::ScenarioSpec parse_scenario_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw hed::io::ParseError("cannot open config: " + path.string());
  }
  nlohmann::json cfg;
  try {
    in >> cfg;
  } catch (const nlohmann::json::exception& e) {
    throw hed::io::ParseError("malformed config " + path.string() + ": " + e.what());
  }
  if (!cfg.is_object()) {
    throw hed::io::ParseError("config root must be a flat JSON object");
  }

  auto require_number = [&](const char* field) {
    if (!cfg.contains(field) || !cfg[field].is_number()) {
      throw hed::io::ParseError(std::string("config field '") + field +
                                "': required number is missing or mistyped");
    }
    return cfg[field].get<double>();
  };

  hed::ScenarioSpec spec;
  spec.horizon = static_cast<int>(require_number("horizon"));
  spec.onset = static_cast<int>(require_number("onset"));
  spec.nominal_mean = require_number("nominal_mean");
  spec.nominal_var = require_number("nominal_var");
  spec.anomalous_mean = require_number("anomalous_mean");
  spec.anomalous_var = require_number("anomalous_var");
  spec.hurst = require_number("hurst");
  if (!cfg.contains("seed") || !cfg["seed"].is_number_unsigned()) {
    throw hed::io::ParseError("config field 'seed': required unsigned integer is missing");
  }
  spec.seed = cfg["seed"].get<std::uint64_t>();
  if (cfg.contains("detectors")) {
    if (!cfg["detectors"].is_array()) {
      throw hed::io::ParseError("config field 'detectors': must be an array of names");
    }
    spec.roster.clear();
    for (const auto& d : cfg["detectors"]) {
      if (!d.is_string()) {
        throw hed::io::ParseError("config field 'detectors': entries must be strings");
      }
      spec.roster.push_back(d.get<std::string>());
    }
  }
  return spec;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  ordered_json report = make_report("simulate");
  report["inputs"][config_path] = hed::io::digest_file_hex(config_path);

  // Config problems, including invariant violations in the spec values, are
  // usage errors (exit 2): surface them as ParseError before generation.
  hed::ScenarioSpec spec;
  hed::Scenario scenario;
  try {
    spec = parse_scenario_config(config_path);
    scenario = hed::generate_scenario(spec);
  } catch (const hed::Error& e) {
    throw hed::io::ParseError(std::string("config: ") + e.what());
  }

  report["seed"] = spec.seed;
  auto& params = report["parameters"];
  params["horizon"] = spec.horizon;
  params["onset"] = spec.onset;
  params["hurst"] = spec.hurst;
  params["detectors"] = spec.roster;

  const fs::path dir(out_dir);
  fs::create_directories(dir);

  const fs::path obs_path = dir / "observations.csv";
  {
    std::ofstream obs(obs_path, std::ios::binary);
    obs << "t,y\n";
    for (std::size_t t = 0; t < scenario.observations.size(); ++t) {
      obs << t << ',' << hed::io::format_double(scenario.observations[t]) << '\n';
    }
  }

  ordered_json truth;
  truth["onset"] = scenario.truth_onset;
  truth["horizon"] = spec.horizon;
  truth["seed"] = spec.seed;
  truth["nominal_mean"] = spec.nominal_mean;
  truth["nominal_var"] = spec.nominal_var;
  truth["anomalous_mean"] = spec.anomalous_mean;
  truth["anomalous_var"] = spec.anomalous_var;
  truth["hurst"] = spec.hurst;
  const fs::path truth_path = dir / "truth.json";
  {
    std::ofstream tj(truth_path, std::ios::binary);
    tj << truth.dump(2) << '\n';
  }

  auto& res = report["results"];
  res["out_dir"] = out_dir;
  res["truth_onset"] = scenario.truth_onset;
  for (const auto& run : scenario.streams) {
    const fs::path stream_path = dir / (run.name + ".csv");
    hed::io::StreamMeta meta;
    meta.t_start = scenario.truth_onset;
    meta.detector = run.name;
    hed::io::write_stream(stream_path, run.stream, meta);
    res["files"][stream_path.filename().string()] = hed::io::digest_file_hex(stream_path);
  }
  res["files"][obs_path.filename().string()] = hed::io::digest_file_hex(obs_path);
  res["files"][truth_path.filename().string()] = hed::io::digest_file_hex(truth_path);

  emit(report);
  return 0;
}

struct TableRow {
  const char* domain;
  const char* system;
  double lambda_h;
  double printed_half_life;
};

// The Hiremath Standard Table: domain-indexed decay calibration. Half-lives
// are recomputed from lambda and verified against the printed values.
constexpr TableRow kStandardTable[] = {
    {"Ultra-High Latency Sensitivity", "High-Frequency / Algorithmic Trading", 0.50, 1.39},
    {"Network Security & IDS", "Intrusion Detection (NSL-KDD)", 0.14, 4.95},
    {"Cyber-Physical & BioRefinery", "BIOLOOP Industrial Control", 0.05, 13.86},
    {"Epidemiological Surveillance", "Pandemic Onset Detection", 0.02, 34.66},
    {"Seismic Early Warning", "P-wave / S-wave Discrimination", 0.01, 69.31},
};

int run_table() {
  ordered_json report = make_report("table");
  auto& res = report["results"];
  bool all_match = true;
  for (const TableRow& row : kStandardTable) {
    const double computed = hed::half_life(hed::DecayParams(row.lambda_h));
    const bool matches =
        std::abs(std::round(computed * 100.0) / 100.0 - row.printed_half_life) < 1e-9;
    all_match = all_match && matches;
    res["rows"].push_back({{"domain", row.domain},
                           {"system", row.system},
                           {"lambda_h", row.lambda_h},
                           {"half_life", computed},
                           {"printed_half_life", row.printed_half_life},
                           {"matches_2dp", matches}});
  }
  res["all_match"] = all_match;
  emit(report);
  return all_match ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HED score toolkit: early-detection scoring, significance and frontiers"};
  app.require_subcommand(1);

  // score
  auto* score = app.add_subcommand("score", "score one posterior stream file");
  std::string score_stream;
  std::optional<double> score_lambda, score_budget, score_beta;
  std::optional<int> score_phases;
  std::optional<std::string> score_csv;
  score->add_option("stream", score_stream, "stream CSV (with sidecar metadata)")
      ->required();
  auto* decay_group = score->add_option_group("decay", "decay calibration");
  decay_group->add_option("--lambda", score_lambda, "decay rate lambda_h");
  decay_group->add_option("--budget", score_budget,
                          "response-latency budget dt_min (sets lambda_h = ln2/dt_min)");
  decay_group->require_option(1);
  score->add_option("--phases", score_phases, "equal-width phase decomposition count");
  score->add_option("--smooth", score_beta, "also report the softplus surrogate at this beta");
  score->add_option("--out-csv", score_csv, "write per-step lifts and discounts");

  // compare
  auto* compare = app.add_subcommand("compare", "block-bootstrap comparison of two streams");
  std::string cmp_a, cmp_b;
  double cmp_lambda = 0.0;
  int cmp_resamples = 2000;
  std::optional<int> cmp_block;
  std::uint64_t cmp_seed = 0;
  compare->add_option("stream_a", cmp_a, "first stream CSV")->required();
  compare->add_option("stream_b", cmp_b, "second stream CSV")->required();
  compare->add_option("--lambda", cmp_lambda, "decay rate lambda_h")->required();
  compare->add_option("--B", cmp_resamples, "number of bootstrap resamples");
  compare->add_option("--block", cmp_block, "block length (default floor(T^(1/3)))");
  compare->add_option("--seed", cmp_seed, "resampling seed (mandatory: no silent entropy)")
      ->required();

  // frontier
  auto* frontier = app.add_subcommand("frontier", "FAR-HED frontier and dominance");
  std::string fr_a;
  std::optional<std::string> fr_b;
  double fr_lambda = 0.0;
  std::optional<std::string> fr_csv, fr_svg;
  frontier->add_option("stream_a", fr_a, "stream CSV")->required();
  frontier->add_option("stream_b", fr_b, "optional second stream CSV");
  frontier->add_option("--lambda", fr_lambda, "decay rate lambda_h")->required();
  frontier->add_option("--out-csv", fr_csv, "write the frontier points");
  frontier->add_option("--out-svg", fr_svg, "write a static plot of the curves");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "generate a synthetic scenario bundle");
  std::string sim_config, sim_out;
  simulate->add_option("config", sim_config, "flat JSON scenario config")->required();
  simulate->add_option("--out-dir", sim_out, "output directory for the bundle")->required();

  // table
  app.add_subcommand("table", "print the Hiremath Standard Table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << std::endl;
    return kExitUsage;
  }

  try {
    if (score->parsed()) {
      return run_score(score_stream, score_lambda, score_budget, score_phases, score_beta,
                       score_csv);
    }
    if (compare->parsed()) {
      return run_compare(cmp_a, cmp_b, cmp_lambda, cmp_resamples, cmp_block, cmp_seed);
    }
    if (frontier->parsed()) {
      return run_frontier(fr_a, fr_b, fr_lambda, fr_csv, fr_svg);
    }
    if (simulate->parsed()) {
      return run_simulate(sim_config, sim_out);
    }
    return run_table();
  } catch (const hed::io::ParseError& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitUsage;
  } catch (const hed::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
