#include "trigrid/grid_paths.hpp"

#include <cstdlib>
#include <string>

#include "dijkstra.hpp"
#include "trigrid/error.hpp"

namespace trigrid {

namespace {

bool lattice_adjacent(Corner a, Corner b) {
  const int di = std::abs(a.i - b.i);
  const int dj = std::abs(a.j - b.j);
  return (dj == 0 && di == 2) || (dj == 1 && di == 1);
}

CornerPath finish(const detail::ShortestPathTree& tree, int target, const Tessellation& tess) {
  if (std::isinf(tree.dist[target])) {
    throw Error(ErrorKind::kUnreachable, "target unreachable: every route has infinite cost");
  }
  CornerPath out;
  for (int idx : tree.path_to(target)) out.corners.push_back(tess.corner_from_index(idx));
  out.path.polyline = corners_to_polyline(out.corners);
  out.path.cost = tree.dist[target];
  return out;
}

}  // namespace

void require_domain_corner(Corner c, const Tessellation& tess) {
  if (!c.valid()) {
    throw Error(ErrorKind::kInvalidCorner, "corner (" + std::to_string(c.i) + "," +
                                               std::to_string(c.j) + ") violates parity");
  }
  if (!tess.contains(c)) {
    throw Error(ErrorKind::kOutOfDomain, "corner (" + std::to_string(c.i) + "," +
                                             std::to_string(c.j) + ") outside the domain");
  }
}

bool is_grid_walk(const std::vector<Corner>& corners) {
  for (size_t k = 0; k + 1 < corners.size(); ++k) {
    if (corners[k] != corners[k + 1] && !lattice_adjacent(corners[k], corners[k + 1])) return false;
  }
  return true;
}

double grid_walk_cost(const std::vector<Corner>& corners, const WeightMap& w) {
  double total = 0.0;
  for (size_t k = 0; k + 1 < corners.size(); ++k) {
    if (corners[k] == corners[k + 1]) continue;
    if (!lattice_adjacent(corners[k], corners[k + 1])) {
      throw Error(ErrorKind::kInvalidArgument, "corner sequence is not a grid walk");
    }
    total += grid_edge_cost(Edge(corners[k], corners[k + 1]), w);
  }
  return total;
}

CornerPath shortest_grid_path(Corner s, Corner t, const WeightMap& w) {
  const Tessellation& tess = w.tessellation();
  require_domain_corner(s, tess);
  require_domain_corner(t, tess);
  const auto tree = detail::dijkstra(
      tess.corner_index_bound(), tess.corner_index(s), tess.corner_index(t),
      [&](int u, auto&& relax, const std::vector<char>&) {
        const Corner c = tess.corner_from_index(u);
        for (const auto& d : kNeighborOffsets) {
          const Corner n{c.i + d[0], c.j + d[1]};
          if (!tess.contains(n)) continue;
          relax(tess.corner_index(n), grid_edge_cost(Edge(c, n), w));
        }
      });
  return finish(tree, tess.corner_index(t), tess);
}

CornerPath shortest_vertex_path(Corner s, Corner t, const WeightMap& w) {
  const Tessellation& tess = w.tessellation();
  require_domain_corner(s, tess);
  require_domain_corner(t, tess);
  const std::vector<Corner> all = tess.corners();
  std::vector<Point2> pos;
  pos.reserve(all.size());
  for (const Corner& c : all) pos.push_back(corner_position(c));
  std::vector<int> dense(tess.corner_index_bound(), -1);
  for (size_t k = 0; k < all.size(); ++k) dense[tess.corner_index(all[k])] = static_cast<int>(k);

  const auto tree = detail::dijkstra(
      static_cast<int>(all.size()), dense[tess.corner_index(s)], dense[tess.corner_index(t)],
      [&](int u, auto&& relax, const std::vector<char>& settled) {
        for (size_t v = 0; v < all.size(); ++v) {
          if (settled[v]) continue;
          relax(static_cast<int>(v), segment_cost(pos[u], pos[v], w));
        }
      });
  const int target = dense[tess.corner_index(t)];
  if (std::isinf(tree.dist[target])) {
    throw Error(ErrorKind::kUnreachable, "target unreachable: every route has infinite cost");
  }
  CornerPath out;
  for (int idx : tree.path_to(target)) out.corners.push_back(all[idx]);
  out.path.polyline = corners_to_polyline(out.corners);
  out.path.cost = tree.dist[target];
  return out;
}

}  // namespace trigrid
