#include "trigrid/tessellation.hpp"

#include <algorithm>
#include <string>

#include "trigrid/error.hpp"

namespace trigrid {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidCorner: return "invalid-corner";
    case ErrorKind::kOutOfDomain: return "out-of-domain";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kUnreachable: return "unreachable";
    case ErrorKind::kMalformedPath: return "malformed-path";
    case ErrorKind::kUnexpectedTopology: return "unexpected-topology";
    case ErrorKind::kDegeneratePolygon: return "degenerate-polygon";
    case ErrorKind::kInfiniteNeighbor: return "infinite-neighbor";
    case ErrorKind::kParse: return "parse";
  }
  return "unknown";
}

namespace {

int floor_div2(int v) { return (v >= 0) ? v / 2 : -((-v + 1) / 2); }

std::string corner_str(Corner c) {
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
}

}  // namespace

Edge::Edge(Corner p, Corner q) {
  if (q < p) std::swap(p, q);
  a = p;
  b = q;
}

Point2 corner_position(Corner c) {
  if (!c.valid()) {
    throw Error(ErrorKind::kInvalidCorner, "corner " + corner_str(c) + " violates i+j even");
  }
  return {static_cast<double>(c.i), c.j * kSqrt3};
}

Point2 edge_point(const Edge& e, double t) {
  return lerp(corner_position(e.a), corner_position(e.b), t);
}

std::array<Corner, 3> cell_vertices_unchecked(Cell c) {
  const int r = c.row;
  const int k = c.col;
  if (c.upward()) return {Corner{k, r}, Corner{k + 1, r + 1}, Corner{k + 2, r}};
  return {Corner{k + 1, r}, Corner{k, r + 1}, Corner{k + 2, r + 1}};
}

std::array<Cell, 2> edge_adjacent_cells(const Edge& e) {
  const Corner a = e.a;
  const Corner b = e.b;
  if (a.j == b.j) {
    // horizontal: upward cell above, downward cell below
    return {Cell{a.j, a.i}, Cell{a.j - 1, a.i}};
  }
  if (b.i == a.i + 1) {
    return {Cell{a.j, a.i}, Cell{a.j, a.i - 1}};
  }
  return {Cell{a.j, a.i - 2}, Cell{a.j, a.i - 1}};
}

Cell cell_containing(Point2 p) {
  const double v = p.y / kSqrt3;
  const int row = static_cast<int>(std::floor(v));
  const int pm = static_cast<int>(std::floor((p.x - v) / 2.0));
  const int qm = static_cast<int>(std::floor((p.x + v) / 2.0));
  if (qm - pm <= row) return Cell{row, 2 * pm + row};
  return Cell{row, 2 * pm + row + 1};
}

Location locate_unbounded(Point2 p) {
  const double v = p.y / kSqrt3;

  // nearest corner among the two candidate rows
  double best = 1e300;
  Corner best_c;
  for (int j : {static_cast<int>(std::floor(v)), static_cast<int>(std::floor(v)) + 1}) {
    int i = static_cast<int>(std::lround(p.x));
    if (((i + j) & 1) != 0) i += (p.x >= i) ? 1 : -1;
    for (int di : {-2, 0, 2}) {
      Corner c{i + di, j};
      double d = distance(p, corner_position(c));
      if (d < best) {
        best = d;
        best_c = c;
      }
    }
  }
  if (best <= kGeoEps) return LocCorner{best_c};

  // distances to the three line families
  const double half_sqrt3 = kSqrt3 / 2.0;
  const int jh = static_cast<int>(std::lround(v));
  const double dh = std::abs(p.y - jh * kSqrt3);
  const double s = p.x - v;
  const int mr = static_cast<int>(std::lround(s / 2.0));
  const double dr = std::abs(s - 2.0 * mr) * half_sqrt3;
  const double u = p.x + v;
  const int ml = static_cast<int>(std::lround(u / 2.0));
  const double dl = std::abs(u - 2.0 * ml) * half_sqrt3;

  const double dmin = std::min({dh, dr, dl});
  if (dmin <= kGeoEps) {
    const int j = static_cast<int>(std::floor(v));
    if (dmin == dh) {
      const int i = jh + 2 * floor_div2(static_cast<int>(std::floor(p.x)) - jh);
      Edge e(Corner{i, jh}, Corner{i + 2, jh});
      return LocEdge{e, std::clamp((p.x - i) / 2.0, 0.0, 1.0)};
    }
    if (dmin == dr) {
      Edge e(Corner{j + 2 * mr, j}, Corner{j + 2 * mr + 1, j + 1});
      return LocEdge{e, std::clamp(v - j, 0.0, 1.0)};
    }
    Edge e(Corner{2 * ml - j, j}, Corner{2 * ml - j - 1, j + 1});
    return LocEdge{e, std::clamp(v - j, 0.0, 1.0)};
  }
  return LocInterior{cell_containing(p)};
}

Tessellation::Tessellation(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "tessellation needs positive rows and cols");
  }
}

std::vector<Cell> Tessellation::corner_cells(Corner c) const {
  std::vector<Cell> out;
  if (!c.valid()) return out;
  for (int r : {c.j - 1, c.j}) {
    for (int k : {c.i - 2, c.i - 1, c.i}) {
      Cell cell{r, k};
      if (contains(cell)) out.push_back(cell);
    }
  }
  return out;
}

bool Tessellation::contains(Corner c) const {
  if (!c.valid()) return false;
  for (int r : {c.j - 1, c.j}) {
    for (int k : {c.i - 2, c.i - 1, c.i}) {
      if (contains(Cell{r, k})) return true;
    }
  }
  return false;
}

std::vector<Cell> Tessellation::edge_cells(const Edge& e) const {
  std::vector<Cell> out;
  for (const Cell& c : edge_adjacent_cells(e)) {
    if (contains(c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Tessellation::contains(const Edge& e) const { return !edge_cells(e).empty(); }

std::array<Corner, 3> Tessellation::cell_vertices(Cell c) const {
  if (!contains(c)) {
    throw Error(ErrorKind::kOutOfDomain, "cell (" + std::to_string(c.row) + "," +
                                             std::to_string(c.col) + ") outside domain");
  }
  return cell_vertices_unchecked(c);
}

std::array<Edge, 3> Tessellation::cell_edges(Cell c) const {
  const auto v = cell_vertices(c);
  return {Edge(v[0], v[1]), Edge(v[1], v[2]), Edge(v[2], v[0])};
}

std::vector<Corner> Tessellation::corner_neighbors(Corner c) const {
  std::vector<Corner> out;
  if (!c.valid()) return out;
  for (const auto& d : kNeighborOffsets) {
    Corner n{c.i + d[0], c.j + d[1]};
    if (contains(Edge(c, n))) out.push_back(n);
  }
  return out;
}

std::vector<Corner> Tessellation::corners() const {
  std::vector<Corner> out;
  for (int j = 0; j <= rows_; ++j) {
    for (int i = 0; i <= cols_ + 1; ++i) {
      Corner c{i, j};
      if (contains(c)) out.push_back(c);
    }
  }
  return out;
}

std::vector<Cell> Tessellation::cells() const {
  std::vector<Cell> out;
  out.reserve(static_cast<size_t>(rows_) * cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out.push_back({r, c});
  }
  return out;
}

Location Tessellation::locate_point(Point2 p) const {
  Location loc = locate_unbounded(p);
  if (const auto* c = std::get_if<LocCorner>(&loc)) {
    if (!contains(c->corner)) return LocOutside{};
  } else if (const auto* e = std::get_if<LocEdge>(&loc)) {
    if (!contains(e->edge)) return LocOutside{};
  } else if (const auto* in = std::get_if<LocInterior>(&loc)) {
    if (!contains(in->cell)) return LocOutside{};
  }
  return loc;
}

bool Tessellation::in_closed_domain(Point2 p) const {
  return !std::holds_alternative<LocOutside>(locate_point(p));
}

SegmentWalk Tessellation::segment_walk(Point2 a, Point2 b) const {
  if (!in_closed_domain(a) || !in_closed_domain(b)) {
    throw Error(ErrorKind::kOutOfDomain, "segment endpoint outside the domain");
  }
  SegmentWalk walk;
  if (distance(a, b) <= kGeoEps) return walk;

  // Parameters where the segment meets a lattice line of any of the three
  // families; between consecutive ones it stays in one cell or on one edge.
  std::vector<double> ts{0.0, 1.0};
  auto add_crossings = [&](double f0, double f1, double step) {
    if (std::abs(f1 - f0) < 1e-15) return;
    const double lo = std::min(f0, f1);
    const double hi = std::max(f0, f1);
    for (double k = std::ceil(lo / step) * step; k <= hi; k += step) {
      const double t = (k - f0) / (f1 - f0);
      if (t > 0.0 && t < 1.0) ts.push_back(t);
    }
  };
  const double va = a.y / kSqrt3;
  const double vb = b.y / kSqrt3;
  add_crossings(va, vb, 1.0);
  add_crossings(a.x - va, b.x - vb, 2.0);
  add_crossings(a.x + va, b.x + vb, 2.0);
  std::sort(ts.begin(), ts.end());

  std::vector<Point2> pts;
  pts.reserve(ts.size());
  for (double t : ts) {
    Point2 p = (t == 0.0) ? a : (t == 1.0) ? b : lerp(a, b, t);
    if (t != 0.0 && t != 1.0) {
      const Location loc = locate_unbounded(p);
      if (const auto* c = std::get_if<LocCorner>(&loc)) p = corner_position(c->corner);
    }
    if (!pts.empty() && distance(pts.back(), p) <= kGeoEps) {
      if (t == 1.0) pts.back() = p;
      continue;
    }
    pts.push_back(p);
  }
  if (pts.size() < 2) {
    pts = {a, b};
  }
  pts.front() = a;
  pts.back() = b;

  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    const Point2 m = lerp(pts[k], pts[k + 1], 0.5);
    WalkRecord rec;
    rec.entry = pts[k];
    rec.exit = pts[k + 1];
    Location loc = locate_unbounded(m);
    if (const auto* e = std::get_if<LocEdge>(&loc)) {
      rec.kind = PieceKind::kEdgeCollinear;
      rec.edge = e->edge;
    } else {
      rec.kind = PieceKind::kInterior;
      rec.cell = cell_containing(m);
    }
    if (!walk.empty()) {
      WalkRecord& prev = walk.back();
      const bool same = prev.kind == rec.kind &&
                        (rec.kind == PieceKind::kInterior ? prev.cell == rec.cell
                                                          : prev.edge == rec.edge);
      if (same) {
        prev.exit = rec.exit;
        continue;
      }
    }
    walk.push_back(rec);
  }
  return walk;
}

}  // namespace trigrid
