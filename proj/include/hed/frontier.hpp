#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "hed/detail/numeric.hpp"
#include "hed/errors.hpp"
#include "hed/score.hpp"
#include "hed/stream.hpp"

namespace hed {

struct FrontierPoint {
  double threshold = 0.0;
  double far = 0.0;
  double hed = 0.0;
};

// Threshold-parameterized (FAR, HED) curve for one detector; points ordered
// by ascending threshold, FAR nonincreasing along the sequence.
struct FrontierCurve {
  std::vector<FrontierPoint> points;
  std::string label;
};

enum class Dominance { a_dominates, b_dominates, neither };

struct AbcResult {
  double abc = 0.0;
  std::vector<double> grid;  // shared FAR abscissa the curves were compared on
  Dominance dominated = Dominance::neither;
};

// False-alarm rate at threshold theta: the fraction of pre-onset steps with
// P_t >= theta. Exact counting, so monotonicity in theta holds exactly.
inline double far(const ProbabilityStream& stream, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw InvalidParams("threshold invariant violated: theta must lie in [0, 1]");
  }
  int count = 0;
  for (int t = 0; t < stream.onset(); ++t) {
    if (stream.at(t) >= theta) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(stream.onset());
}

// H(theta) is the HED score of the binarized stream 1[P_t >= theta], with the
// baseline recomputed on the binarized pre-onset segment; FAR(theta) is
// counted on the original stream. An empty theta list selects the auto grid:
// the sorted unique stream values plus {0, 1}, which is lossless for the
// step functions involved.
inline FrontierCurve frontier_curve(const ProbabilityStream& stream, const DecayParams& decay,
                                    std::vector<double> thetas = {},
                                    std::string label = "") {
  if (thetas.empty()) {
    thetas = stream.probs();
    thetas.push_back(0.0);
    thetas.push_back(1.0);
  } else {
    for (double theta : thetas) {
      if (!(theta >= 0.0 && theta <= 1.0)) {
        throw InvalidParams("threshold invariant violated: theta must lie in [0, 1]");
      }
    }
  }
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());

  FrontierCurve curve;
  curve.label = std::move(label);
  curve.points.reserve(thetas.size());
  for (double theta : thetas) {
    std::vector<double> binarized(stream.probs().size());
    for (std::size_t t = 0; t < binarized.size(); ++t) {
      binarized[t] = stream.probs()[t] >= theta ? 1.0 : 0.0;
    }
    const ProbabilityStream alarm(std::move(binarized), stream.onset());
    curve.points.push_back({theta, far(stream, theta), hed_score(alarm, decay).score});
  }
  return curve;
}

namespace detail {

// Tie-reduced step function: for each FAR value reached by the curve, the
// best HED achievable at that FAR.
struct StepCurve {
  std::vector<double> fars;  // strictly increasing
  std::vector<double> heds;
};

inline StepCurve reduce_curve(const FrontierCurve& curve) {
  if (curve.points.empty()) {
    throw EmptyCurve("frontier curve has no points");
  }
  std::map<double, double> best;
  for (const FrontierPoint& p : curve.points) {
    auto [it, inserted] = best.emplace(p.far, p.hed);
    if (!inserted) it->second = std::max(it->second, p.hed);
  }
  StepCurve out;
  out.fars.reserve(best.size());
  out.heds.reserve(best.size());
  for (const auto& [f, h] : best) {
    out.fars.push_back(f);
    out.heds.push_back(h);
  }
  return out;
}

// Right-continuous step interpolation: the value at the largest knot <= u;
// below the first knot the first value extends left.
inline double step_interp(const StepCurve& curve, double u) {
  auto it = std::upper_bound(curve.fars.begin(), curve.fars.end(), u);
  if (it == curve.fars.begin()) return curve.heds.front();
  const std::size_t idx = static_cast<std::size_t>(it - curve.fars.begin()) - 1;
  return curve.heds[idx];
}

}  // namespace detail

// Area between two FAR-HED curves, integrated over an explicit shared FAR
// grid (the union of both curves' FAR values plus {0, 1}) by the trapezoid
// rule; positive means curve A carries more HED on average. Dominance is
// decided on the same grid: uniformly at-or-above with a strict advantage
// somewhere.
inline AbcResult abc(const FrontierCurve& curve_a, const FrontierCurve& curve_b) {
  const detail::StepCurve a = detail::reduce_curve(curve_a);
  const detail::StepCurve b = detail::reduce_curve(curve_b);

  std::vector<double> grid;
  grid.reserve(a.fars.size() + b.fars.size() + 2);
  grid.insert(grid.end(), a.fars.begin(), a.fars.end());
  grid.insert(grid.end(), b.fars.begin(), b.fars.end());
  grid.push_back(0.0);
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  bool a_ge = true, b_ge = true, a_strict = false, b_strict = false;
  std::vector<double> delta(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ha = detail::step_interp(a, grid[i]);
    const double hb = detail::step_interp(b, grid[i]);
    delta[i] = ha - hb;
    if (ha < hb) a_ge = false;
    if (hb < ha) b_ge = false;
    if (ha > hb) a_strict = true;
    if (hb > ha) b_strict = true;
  }

  hed::detail::CompensatedSum area;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    area.add((grid[i + 1] - grid[i]) * 0.5 * (delta[i] + delta[i + 1]));
  }

  AbcResult result;
  result.abc = area.value();
  result.grid = std::move(grid);
  if (a_ge && a_strict) {
    result.dominated = Dominance::a_dominates;
  } else if (b_ge && b_strict) {
    result.dominated = Dominance::b_dominates;
  } else {
    result.dominated = Dominance::neither;
  }
  return result;
}

// True iff A's curve lies at-or-above B's on the whole shared grid with a
// strict advantage at some grid point.
inline bool pareto_dominates(const FrontierCurve& curve_a, const FrontierCurve& curve_b) {
  return abc(curve_a, curve_b).dominated == Dominance::a_dominates;
}

}  // namespace hed
