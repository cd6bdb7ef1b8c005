#include <algorithm>
#include <cmath>

#include "trigrid/analysis.hpp"
#include "trigrid/error.hpp"

namespace trigrid {

RatioReport ratio_report(const WeightMap& w, Corner s, Corner t, const OracleConfig& cfg) {
  RatioReport r;
  r.sgp = shortest_grid_path(s, t, w);
  r.svp = shortest_vertex_path(s, t, w);
  const OracleResult oracle = refine_until(s, t, w, cfg);
  r.sp = oracle.path;
  r.level = oracle.level_used;
  r.converged = oracle.converged;

  r.sgp_cost = r.sgp.path.cost;
  r.svp_cost = r.svp.path.cost;
  r.sp_cost = r.sp.cost;
  r.sgp_sp = cost_ratio(r.sgp_cost, r.sp_cost);
  r.svp_sp = cost_ratio(r.svp_cost, r.sp_cost);
  r.sgp_svp = cost_ratio(r.sgp_cost, r.svp_cost);

  if (s == t) {
    r.crossing.corners = {s};
    return r;
  }
  try {
    const Tessellation& tess = w.tessellation();
    r.crossing = crossing_path(r.sp.polyline, tess);
    r.x_cost = grid_walk_cost(r.crossing.corners, w);
    r.decomposition = decompose(r.sp.polyline, r.crossing, tess);
    r.polygons = per_polygon_ratios(r.decomposition, r.sp.polyline, r.crossing, w);
    r.max_poly_ratio = 0.0;
    for (const PolygonRatio& p : r.polygons) {
      r.max_poly_ratio = std::max(r.max_poly_ratio, p.ratio);
      ++r.histogram[p.type.k - 1];
    }
  } catch (const Error& e) {
    r.analysis_error = std::string(to_string(e.kind())) + ": " + e.what();
  }
  return r;
}

double svp_lower_bound_constant() {
  const double q = 7.0 * kSqrt3 - 12.0;
  return 2.0 * std::sqrt(q) / ((7.0 - 4.0 * kSqrt3) * (6.0 * std::sqrt(2.0) + std::sqrt(q)));
}

double svp_lower_bound_offset() {
  return (7.0 * kSqrt3 - 12.0) / std::sqrt(56.0 * kSqrt3 - 96.0);
}

}  // namespace trigrid
