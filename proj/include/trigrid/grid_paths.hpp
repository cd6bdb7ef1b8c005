#pragma once
// Exact shortest paths on the two discrete graphs over tessellation corners:
//
//   grid graph   - the six lattice edges per corner, priced by grid_edge_cost
//   vertex graph - every corner pair, priced by segment_cost of the straight
//                  segment between them
//
// Both searches break ties towards the corner that is smaller in (j, i).

#include <vector>

#include "trigrid/metric.hpp"

namespace trigrid {

struct CornerPath {
  std::vector<Corner> corners;
  PathResult path;
};

CornerPath shortest_grid_path(Corner s, Corner t, const WeightMap& w);
CornerPath shortest_vertex_path(Corner s, Corner t, const WeightMap& w);

// Cost of walking the given corner sequence along lattice edges. Throws
// kInvalidArgument when two consecutive corners are neither equal nor adjacent.
double grid_walk_cost(const std::vector<Corner>& corners, const WeightMap& w);
bool is_grid_walk(const std::vector<Corner>& corners);

// Validates that c is a lattice corner inside the domain.
void require_domain_corner(Corner c, const Tessellation& tess);

}  // namespace trigrid
