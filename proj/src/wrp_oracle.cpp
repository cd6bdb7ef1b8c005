#include "trigrid/wrp_oracle.hpp"

#include <algorithm>
#include <string>

#include "dijkstra.hpp"
#include "trigrid/error.hpp"
#include "trigrid/grid_paths.hpp"

namespace trigrid {

namespace {

// Corner set plus a lazily filled corner-to-corner cost matrix, shared by all
// levels of one refinement run.
class CornerTable {
 public:
  explicit CornerTable(const WeightMap& w) : w_(w) {
    const Tessellation& tess = w.tessellation();
    corners_ = tess.corners();
    dense_.assign(tess.corner_index_bound(), -1);
    for (size_t k = 0; k < corners_.size(); ++k) {
      dense_[tess.corner_index(corners_[k])] = static_cast<int>(k);
      pos_.push_back(corner_position(corners_[k]));
    }
    cost_.assign(corners_.size() * corners_.size(), -1.0);
  }

  int size() const { return static_cast<int>(corners_.size()); }
  int dense(Corner c) const { return dense_[w_.tessellation().corner_index(c)]; }
  Corner corner(int k) const { return corners_[k]; }
  Point2 pos(int k) const { return pos_[k]; }

  double pair_cost(int a, int b) {
    double& c = cost_[static_cast<size_t>(a) * corners_.size() + b];
    if (c < 0.0) {
      c = segment_cost(pos_[a], pos_[b], w_);
      cost_[static_cast<size_t>(b) * corners_.size() + a] = c;
    }
    return c;
  }

 private:
  const WeightMap& w_;
  std::vector<Corner> corners_;
  std::vector<Point2> pos_;
  std::vector<int> dense_;
  std::vector<double> cost_;
};

// Steiner node graph of one level. Each cell's boundary nodes are listed as a
// ring: v0, side v0->v1, v1, side v1->v2, v2, side v2->v0, where (v0, v1, v2)
// is the clockwise vertex order. Cells of the same orientation are
// translates, so ring distances come from one table per orientation.
class SteinerGraph {
 public:
  SteinerGraph(const WeightMap& w, SteinerLevel level, CornerTable& corners)
      : w_(w), corners_(corners), m_(level.points_per_edge()), ring_(3 * (m_ + 1)) {
    const Tessellation& tess = w.tessellation();
    const int nc = corners_.size();

    edge_id_.assign(static_cast<size_t>(nc) * 3, -1);
    for (int a = 0; a < nc; ++a) {
      const Corner c = corners_.corner(a);
      for (int d = 0; d < 3; ++d) {
        const Corner n{c.i + kNeighborOffsets[d][0], c.j + kNeighborOffsets[d][1]};
        if (!tess.contains(Edge(c, n))) continue;
        edge_id_[static_cast<size_t>(a) * 3 + d] = static_cast<int>(edges_.size());
        edges_.push_back({a, corners_.dense(n)});
      }
    }
    node_count_ = nc + static_cast<int>(edges_.size()) * m_;

    for (int orient = 0; orient < 2; ++orient) {
      const Cell ref = orient == 0 ? Cell{0, 0} : Cell{0, 1};
      const auto ring = ring_positions(ref);
      auto& table = dist_[orient];
      table.resize(static_cast<size_t>(ring_) * ring_);
      for (int p = 0; p < ring_; ++p) {
        for (int q = 0; q < ring_; ++q) table[static_cast<size_t>(p) * ring_ + q] = distance(ring[p], ring[q]);
      }
    }

    const auto cells = tess.cells();
    std::vector<int> count(node_count_, 0);
    for (const Cell& cell : cells) {
      CellInfo info;
      info.cell = cell;
      info.weight = w.value(cell);
      const auto v = cell_vertices_unchecked(cell);
      for (int s = 0; s < 3; ++s) {
        info.side_weight[s] = w.edge_weight(Edge(v[s], v[(s + 1) % 3]));
      }
      info.first_node = static_cast<int>(ring_nodes_.size());
      for (int s = 0; s < 3; ++s) {
        const int a = corners_.dense(v[s]);
        const int b = corners_.dense(v[(s + 1) % 3]);
        ring_nodes_.push_back(a);
        for (int k = 1; k <= m_; ++k) ring_nodes_.push_back(steiner_node(a, b, k));
      }
      for (int p = 0; p < ring_; ++p) ++count[ring_nodes_[info.first_node + p]];
      cells_.push_back(info);
    }

    member_start_.assign(node_count_ + 1, 0);
    for (int n = 0; n < node_count_; ++n) member_start_[n + 1] = member_start_[n] + count[n];
    members_.resize(member_start_.back());
    std::vector<int> fill(member_start_.begin(), member_start_.end() - 1);
    for (int ci = 0; ci < static_cast<int>(cells_.size()); ++ci) {
      for (int p = 0; p < ring_; ++p) {
        const int n = ring_nodes_[cells_[ci].first_node + p];
        members_[fill[n]++] = {ci, p};
      }
    }
  }

  int node_count() const { return node_count_; }

  Point2 position(int node) const {
    if (node < corners_.size()) return corners_.pos(node);
    const int local = node - corners_.size();
    const auto& e = edges_[local / m_];
    const double t = static_cast<double>(local % m_ + 1) / (m_ + 1);
    return lerp(corners_.pos(e.a), corners_.pos(e.b), t);
  }

  template <class Relax>
  void expand(int u, Relax&& relax, const std::vector<char>& settled) {
    const double step = kSideLength / (m_ + 1);
    for (int k = member_start_[u]; k < member_start_[u + 1]; ++k) {
      const auto [ci, p] = members_[k];
      const CellInfo& info = cells_[ci];
      const int* nodes = &ring_nodes_[info.first_node];
      const int side_p = p / (m_ + 1);
      const bool vertex_p = p % (m_ + 1) == 0;

      // neighbours along the boundary ring lie on a common edge
      const int next = (p + 1) % ring_;
      const int prev = (p + ring_ - 1) % ring_;
      relax(nodes[next], weighted_length(info.side_weight[side_p], step));
      relax(nodes[prev], weighted_length(info.side_weight[prev / (m_ + 1)], step));

      if (std::isinf(info.weight)) continue;
      const double* row = &dist_[info.cell.upward() ? 0 : 1][static_cast<size_t>(p) * ring_];
      for (int q = 0; q < ring_; ++q) {
        if (settled[nodes[q]]) continue;
        const int side_q = q / (m_ + 1);
        const bool vertex_q = q % (m_ + 1) == 0;
        if (shares_side(side_p, vertex_p, side_q, vertex_q)) continue;
        relax(nodes[q], info.weight * row[q]);
      }
    }
    if (u < corners_.size()) {
      for (int v = 0; v < corners_.size(); ++v) {
        if (v == u || settled[v]) continue;
        relax(v, corners_.pair_cost(u, v));
      }
    }
  }

 private:
  struct CellInfo {
    Cell cell;
    double weight = kInf;
    double side_weight[3] = {kInf, kInf, kInf};
    int first_node = 0;
  };
  struct DenseEdge {
    int a;
    int b;
  };
  struct Membership {
    int cell;
    int ring_pos;
  };

  // A vertex at the start of side s also lies on side s - 1.
  static bool shares_side(int sp, bool vp, int sq, bool vq) {
    if (sp == sq) return true;
    if (vp && (sp + 2) % 3 == sq) return true;
    if (vq && (sq + 2) % 3 == sp) return true;
    return false;
  }

  std::vector<Point2> ring_positions(Cell cell) const {
    std::vector<Point2> out;
    const auto v = cell_vertices_unchecked(cell);
    for (int s = 0; s < 3; ++s) {
      const Point2 a = corner_position(v[s]);
      const Point2 b = corner_position(v[(s + 1) % 3]);
      for (int k = 0; k <= m_; ++k) out.push_back(lerp(a, b, static_cast<double>(k) / (m_ + 1)));
    }
    return out;
  }

  // k-th Steiner point walking from corner a towards corner b.
  int steiner_node(int a, int b, int k) const {
    const Corner ca = corners_.corner(a);
    const Corner cb = corners_.corner(b);
    const bool forward = ca < cb;
    const Corner lo = forward ? ca : cb;
    const Corner hi = forward ? cb : ca;
    int d = 0;
    if (hi.j == lo.j) d = 0;
    else if (hi.i == lo.i + 1) d = 1;
    else d = 2;
    const int e = edge_id_[static_cast<size_t>(forward ? a : b) * 3 + d];
    const int from_lo = forward ? k : (m_ + 1 - k);
    return corners_.size() + e * m_ + (from_lo - 1);
  }

  const WeightMap& w_;
  CornerTable& corners_;
  int m_;
  int ring_;
  int node_count_ = 0;
  std::vector<int> edge_id_;
  std::vector<DenseEdge> edges_;
  std::vector<CellInfo> cells_;
  std::vector<int> ring_nodes_;
  std::vector<int> member_start_;
  std::vector<Membership> members_;
  std::vector<double> dist_[2];
};

OracleResult solve_level(Corner s, Corner t, const WeightMap& w, SteinerLevel level,
                         CornerTable& corners) {
  if (level.level < 0 || level.level > kMaxSteinerLevel) {
    throw Error(ErrorKind::kInvalidArgument,
                "Steiner level must be in [0, " + std::to_string(kMaxSteinerLevel) + "]");
  }
  OracleResult out;
  out.level_used = level;
  if (s == t) {
    out.path.polyline = {corner_position(s)};
    out.path.cost = 0.0;
    return out;
  }
  SteinerGraph graph(w, level, corners);
  const int src = corners.dense(s);
  const int dst = corners.dense(t);
  const auto tree = detail::dijkstra(
      graph.node_count(), src, dst,
      [&](int u, auto&& relax, const std::vector<char>& settled) { graph.expand(u, relax, settled); });
  if (std::isinf(tree.dist[dst])) {
    throw Error(ErrorKind::kUnreachable, "target unreachable: every route has infinite cost");
  }
  // drop interior points of straight runs (Steiner points along one line)
  for (int node : tree.path_to(dst)) {
    const Point2 p = graph.position(node);
    auto& poly = out.path.polyline;
    if (poly.size() >= 2) {
      const Point2 a = poly[poly.size() - 2];
      const Point2 b = poly.back();
      if (std::abs(orient(a, b, p)) <= kGeoEps * distance(a, p) && dot(b - a, p - b) > 0.0) poly.back() = p;
      else poly.push_back(p);
    } else {
      poly.push_back(p);
    }
  }
  out.path.cost = tree.dist[dst];
  return out;
}

}  // namespace

OracleResult approx_shortest_path(Corner s, Corner t, const WeightMap& w, SteinerLevel level) {
  require_domain_corner(s, w.tessellation());
  require_domain_corner(t, w.tessellation());
  CornerTable corners(w);
  return solve_level(s, t, w, level, corners);
}

OracleResult refine_until(Corner s, Corner t, const WeightMap& w, double rel_tol, int max_level) {
  if (!(rel_tol > 0.0)) throw Error(ErrorKind::kInvalidArgument, "rel_tol must be > 0");
  require_domain_corner(s, w.tessellation());
  require_domain_corner(t, w.tessellation());
  CornerTable corners(w);
  if (max_level <= 0) return solve_level(s, t, w, SteinerLevel{0}, corners);

  OracleResult prev = solve_level(s, t, w, SteinerLevel{1}, corners);
  if (s == t) {
    prev.converged = true;
    return prev;
  }
  // two quiet steps in a row, not before level 4: coarse levels often agree
  // because they share the same corner hops
  constexpr int kFirstCheckedLevel = 4;
  int quiet = 0;
  for (int level = 2; level <= max_level; ++level) {
    OracleResult cur = solve_level(s, t, w, SteinerLevel{level}, corners);
    const double change = std::abs(prev.path.cost - cur.path.cost) / cur.path.cost;
    quiet = change < rel_tol && level >= kFirstCheckedLevel ? quiet + 1 : 0;
    prev = std::move(cur);
    if (quiet == 2) {
      prev.converged = true;
      return prev;
    }
  }
  return prev;
}

}  // namespace trigrid
