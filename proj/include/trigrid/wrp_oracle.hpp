#pragma once
// Upper-bound approximation of the weighted shortest path between two corners.
//
// Level l places 2^l - 1 Steiner points at the dyadic fractions k / 2^l of
// every lattice edge, so the node sets of consecutive levels are nested. The
// search graph joins any two boundary nodes of a common cell by a straight
// segment, and additionally contains every corner-to-corner segment of the
// vertex graph. Every path it finds is feasible, so its cost never undercuts
// the true optimum, and it never exceeds the shortest vertex path.

#include <optional>
#include <vector>

#include "trigrid/metric.hpp"

namespace trigrid {

struct SteinerLevel {
  int level = 0;

  int points_per_edge() const { return (1 << level) - 1; }
};

inline constexpr int kMaxSteinerLevel = 10;

struct OracleResult {
  PathResult path;
  SteinerLevel level_used;
  bool converged = false;
};

struct OracleConfig {
  double rel_tol = 1e-6;
  int max_level = 7;
};

OracleResult approx_shortest_path(Corner s, Corner t, const WeightMap& w, SteinerLevel level);

OracleResult refine_until(Corner s, Corner t, const WeightMap& w, double rel_tol, int max_level);

inline OracleResult refine_until(Corner s, Corner t, const WeightMap& w,
                                 const OracleConfig& cfg = {}) {
  return refine_until(s, t, w, cfg.rel_tol, cfg.max_level);
}

}  // namespace trigrid
