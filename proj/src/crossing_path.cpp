#include <algorithm>
#include <string>

#include "trigrid/analysis.hpp"
#include "trigrid/error.hpp"

namespace trigrid {

namespace {

constexpr double kOnTol = 1e-7;
constexpr double kTieTol = 1e-9;

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, lerp(a, b, t));
}

// Where a point sits on the boundary of one cell. Side s runs from vertex s to
// vertex s + 1 of the clockwise vertex order.
struct OnCell {
  int corner = -1;
  int side_mask = 0;
};

OnCell locate_on_cell(Point2 p, const std::array<Corner, 3>& v) {
  OnCell out;
  for (int k = 0; k < 3; ++k) {
    if (distance(p, corner_position(v[k])) <= kOnTol) {
      out.corner = k;
      out.side_mask = (1 << k) | (1 << ((k + 2) % 3));
      return out;
    }
  }
  for (int s = 0; s < 3; ++s) {
    if (segment_distance(p, corner_position(v[s]), corner_position(v[(s + 1) % 3])) <= kOnTol) {
      out.side_mask |= 1 << s;
    }
  }
  return out;
}

int lowest_bit(int mask) {
  for (int s = 0; s < 3; ++s) {
    if (mask & (1 << s)) return s;
  }
  return -1;
}

// Endpoints of [a, b] ordered so that `first` is met before `second` when
// walking from the returned start.
std::pair<Corner, Corner> orient_edge(Corner a, Corner b, Point2 first, Point2 second) {
  const Point2 pa = corner_position(a);
  const Point2 d = corner_position(b) - pa;
  if (dot(first - pa, d) <= dot(second - pa, d)) return {a, b};
  return {b, a};
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorKind::kMalformedPath, what);
}

CrossingSegment crossing_segment(const WalkRecord& rec, const Tessellation& tess) {
  CrossingSegment seg;
  seg.piece = rec.kind;
  seg.entry = rec.entry;
  seg.exit = rec.exit;
  if (rec.kind == PieceKind::kEdgeCollinear) {
    seg.edge = rec.edge;
    const auto cells = tess.edge_cells(rec.edge);
    seg.cell = cells.empty() ? edge_adjacent_cells(rec.edge)[0] : cells.front();
    seg.kind = CrossingCase::kSameEdge;
    const auto [v, w] = orient_edge(rec.edge.a, rec.edge.b, rec.entry, rec.exit);
    seg.vertices = {v, w};
    return seg;
  }

  seg.cell = rec.cell;
  const auto v = cell_vertices_unchecked(rec.cell);
  const OnCell in = locate_on_cell(rec.entry, v);
  const OnCell out = locate_on_cell(rec.exit, v);
  if (in.side_mask == 0 || out.side_mask == 0) {
    malformed("shortest path vertex strictly inside a cell");
  }

  if (const int common = in.side_mask & out.side_mask; common != 0) {
    const int s = lowest_bit(common);
    seg.kind = CrossingCase::kSameEdge;
    seg.edge = Edge(v[s], v[(s + 1) % 3]);
    const auto [a, b] = orient_edge(v[s], v[(s + 1) % 3], rec.entry, rec.exit);
    seg.vertices = {a, b};
    return seg;
  }

  if (in.corner >= 0) {
    // exit lies inside the side opposite the entry corner
    const Corner c = v[in.corner];
    const Corner q1 = v[(in.corner + 1) % 3];
    const Corner q2 = v[(in.corner + 2) % 3];
    const Point2 pc = corner_position(c);
    const Point2 mid = 0.5 * (corner_position(q1) + corner_position(q2));
    const bool q1_right = orient(pc, mid, corner_position(q1)) < 0.0;
    const Corner right = q1_right ? q1 : q2;
    const Corner left = q1_right ? q2 : q1;
    const bool exit_left = orient(pc, mid, rec.exit) >= -kTieTol;
    seg.kind = CrossingCase::kEndpointPivot;
    seg.edge = Edge(q1, q2);
    seg.vertices = {c, exit_left ? right : left};
    return seg;
  }

  if (out.corner >= 0) {
    seg.kind = CrossingCase::kToCorner;
    seg.vertices = {v[out.corner]};
    return seg;
  }

  const int s_in = lowest_bit(in.side_mask);
  const int s_out = lowest_bit(out.side_mask);
  seg.kind = CrossingCase::kBetweenEdges;
  seg.vertices = {(s_in + 1) % 3 == s_out ? v[s_out] : v[s_in]};
  return seg;
}

}  // namespace

const char* to_string(CrossingCase c) {
  switch (c) {
    case CrossingCase::kSameEdge: return "same-edge";
    case CrossingCase::kEndpointPivot: return "endpoint-pivot";
    case CrossingCase::kToCorner: return "to-corner";
    case CrossingCase::kBetweenEdges: return "between-edges";
  }
  return "?";
}

std::vector<WalkRecord> cell_traversals(std::span<const Point2> sp, const Tessellation& tess) {
  std::vector<WalkRecord> out;
  auto same_piece = [](const WalkRecord& a, const WalkRecord& b) {
    if (a.kind != b.kind) return false;
    return a.kind == PieceKind::kInterior ? a.cell == b.cell : a.edge == b.edge;
  };
  for (size_t k = 0; k + 1 < sp.size(); ++k) {
    for (const WalkRecord& rec : tess.segment_walk(sp[k], sp[k + 1])) {
      if (!out.empty() && same_piece(out.back(), rec)) {
        out.back().exit = rec.exit;
        continue;
      }
      out.push_back(rec);
    }
  }
  return out;
}

CrossingPath crossing_path(std::span<const Point2> sp, const Tessellation& tess) {
  if (sp.empty()) malformed("empty shortest path");
  const Location first = locate_unbounded(sp.front());
  const Location last = locate_unbounded(sp.back());
  const auto* s = std::get_if<LocCorner>(&first);
  const auto* t = std::get_if<LocCorner>(&last);
  if (s == nullptr || t == nullptr) malformed("shortest path must start and end at corners");
  for (const Point2& p : sp) {
    const Location loc = locate_unbounded(p);
    if (std::holds_alternative<LocInterior>(loc)) {
      malformed("shortest path vertex strictly inside a cell");
    }
  }

  CrossingPath x;
  x.corners.push_back(s->corner);
  for (const WalkRecord& rec : cell_traversals(sp, tess)) {
    if (rec.length() <= kGeoEps) continue;
    CrossingSegment seg = crossing_segment(rec, tess);
    for (const Corner& c : seg.vertices) {
      // a partial edge run can send the walk out and straight back; drop the spur
      if (x.corners.size() >= 2 && x.corners[x.corners.size() - 2] == c) {
        x.corners.pop_back();
      } else if (x.corners.back() != c) {
        x.corners.push_back(c);
      }
    }
    x.segments.push_back(std::move(seg));
  }
  if (x.corners.back() != t->corner) malformed("crossing path does not reach the target");
  if (!is_grid_walk(x.corners)) malformed("crossing path is not a grid walk");
  return x;
}

}  // namespace trigrid
