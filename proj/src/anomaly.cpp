#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "trigrid/analysis.hpp"
#include "trigrid/error.hpp"

namespace trigrid {

namespace {

// Small patch: a centre cell and every cell sharing a corner with it; the
// rest of the grid stays infinite.
constexpr int kRows = 4;
constexpr int kCols = 7;
constexpr Cell kCentre{1, 3};

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Sample {
  AnomalyCandidate cand;
  bool has_p2 = false;
};

std::optional<Sample> evaluate(const WeightMap& w, Corner s, Corner t, int level) {
  const Tessellation& tess = w.tessellation();
  OracleResult sp;
  try {
    sp = approx_shortest_path(s, t, w, SteinerLevel{level});
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kUnreachable) return std::nullopt;
    throw;
  }
  if (!(sp.path.cost > 0.0)) return std::nullopt;
  const CrossingPath x = crossing_path(sp.path.polyline, tess);
  const double x_cost = grid_walk_cost(x.corners, w);
  const CoincidenceDecomposition d = decompose(sp.path.polyline, x, tess);

  Sample out{{w, s, t, 0.0, 0.0, 0}, false};
  for (const PolygonRecord& poly : d.polygons) out.cand.p2_count += poly.type.k == 2;
  out.has_p2 = out.cand.p2_count > 0;
  double best = x_cost;
  for (const Shortcut& sc : shortcut_paths(x, tess)) best = std::min(best, grid_walk_cost(sc.corners, w));
  out.cand.x_ratio = x_cost / sp.path.cost;
  out.cand.shortcut_ratio = best / sp.path.cost;
  return out;
}

}  // namespace

AnomalyResult search_p2_anomaly(std::uint64_t seed, int trials, int steiner_level) {
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  const Tessellation tess(kRows, kCols);

  std::set<Cell> patch_set;
  for (const Corner& c : tess.cell_vertices(kCentre)) {
    for (const Cell& cell : tess.corner_cells(c)) patch_set.insert(cell);
  }
  const std::vector<Cell> patch(patch_set.begin(), patch_set.end());
  std::set<Corner> corner_set;
  for (const Cell& cell : patch) {
    for (const Corner& c : tess.cell_vertices(cell)) corner_set.insert(c);
  }
  const std::vector<Corner> corners(corner_set.begin(), corner_set.end());

  AnomalyResult result;
  std::optional<AnomalyCandidate> fallback;
  for (int trial = 0; trial < trials; ++trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial)};
    std::mt19937_64 rng(seq);
    ++result.trials;

    WeightMap w(tess);
    const bool uniform = rng() % 16 == 0;
    for (const Cell& cell : patch) {
      if (uniform) {
        w.set(cell, 1.0);
        continue;
      }
      if (cell != kCentre && unit_double(rng) < 0.25) continue;
      w.set(cell, std::exp(std::log(0.05) + unit_double(rng) * std::log(400.0)));
    }
    const Corner s = corners[rng() % corners.size()];
    const Corner t = corners[rng() % corners.size()];
    if (s == t) continue;

    const auto sample = evaluate(w, s, t, steiner_level);
    if (!sample) continue;
    if (!fallback || sample->cand.x_ratio > fallback->x_ratio) fallback = sample->cand;
    if (!sample->has_p2) continue;
    ++result.samples_with_p2;
    if (sample->cand.shortcut_ratio > kTightBound + 1e-6) continue;
    if (!result.best || sample->cand.x_ratio > result.best->x_ratio) result.best = sample->cand;
  }
  if (!result.best) result.best = fallback;
  return result;
}

}  // namespace trigrid
