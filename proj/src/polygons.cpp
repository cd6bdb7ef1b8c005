#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>

#include "trigrid/analysis.hpp"
#include "trigrid/error.hpp"

namespace trigrid {

namespace {

constexpr double kTouchTol = 1e-7;

std::vector<double> arclengths(std::span<const Point2> path) {
  std::vector<double> cum(path.size(), 0.0);
  for (size_t k = 1; k < path.size(); ++k) cum[k] = cum[k - 1] + distance(path[k - 1], path[k]);
  return cum;
}

double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 d = b - a;
  const double len2 = dot(d, d);
  const double t = len2 > 0.0 ? std::clamp(dot(p - a, d) / len2, 0.0, 1.0) : 0.0;
  return distance(p, lerp(a, b, t));
}

bool on_polyline(Point2 p, std::span<const Point2> path, double tol) {
  if (path.size() == 1) return distance(p, path[0]) <= tol;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    if (point_segment_distance(p, path[k], path[k + 1]) <= tol) return true;
  }
  return false;
}

// Closed segments [a, b] and [c, d] share a point (within tol).
bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d, double tol) {
  const double d1 = orient(a, b, c);
  const double d2 = orient(a, b, d);
  const double d3 = orient(c, d, a);
  const double d4 = orient(c, d, b);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return point_segment_distance(c, a, b) <= tol || point_segment_distance(d, a, b) <= tol ||
         point_segment_distance(a, c, d) <= tol || point_segment_distance(b, c, d) <= tol;
}

bool polyline_touches_segment(std::span<const Point2> path, Point2 a, Point2 b) {
  if (path.size() == 1) return point_segment_distance(path[0], a, b) <= kTouchTol;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    if (segments_touch(path[k], path[k + 1], a, b, kTouchTol)) return true;
  }
  return false;
}

// First parameter along `path` (by arclength, >= from) where it meets [a, b].
std::optional<Point2> first_touch(std::span<const Point2> path, Point2 a, Point2 b, double skip) {
  double walked = 0.0;
  for (size_t k = 0; k + 1 < path.size(); ++k) {
    const Point2 p = path[k];
    const Point2 q = path[k + 1];
    const double len = distance(p, q);
    if (len <= 0.0) continue;
    // sample the exact crossing of segment pq with [a, b]
    const Point2 d = q - p;
    const Point2 e = b - a;
    const double den = cross(d, e);
    std::vector<double> hits;
    if (std::abs(den) > 1e-12 * len * distance(a, b)) {
      const double t = cross(a - p, e) / den;
      const double u = cross(a - p, d) / den;
      if (t >= -kTouchTol / len && t <= 1 + kTouchTol / len && u >= -kTouchTol && u <= 1 + kTouchTol) {
        hits.push_back(std::clamp(t, 0.0, 1.0));
      }
    } else if (point_segment_distance(p, a, b) <= kTouchTol || point_segment_distance(q, a, b) <= kTouchTol ||
               point_segment_distance(a, p, q) <= kTouchTol || point_segment_distance(b, p, q) <= kTouchTol) {
      for (Point2 c : {p, q, a, b}) {
        if (point_segment_distance(c, p, q) <= kTouchTol && point_segment_distance(c, a, b) <= kTouchTol) {
          hits.push_back(std::clamp(dot(c - p, d) / (len * len), 0.0, 1.0));
        }
      }
    }
    std::sort(hits.begin(), hits.end());
    for (double t : hits) {
      if (walked + t * len > skip) return lerp(p, q, t);
    }
    walked += len;
  }
  return std::nullopt;
}

std::vector<Point2> reversed(std::span<const Point2> path) {
  return {path.rbegin(), path.rend()};
}

bool lattice_adjacent(Corner a, Corner b) {
  const int di = std::abs(a.i - b.i);
  const int dj = std::abs(a.j - b.j);
  return (dj == 0 && di == 2) || (dj == 1 && di == 1);
}

std::optional<Cell> triple_cell(Corner u, Corner v, Corner w) {
  if (u == v || v == w || u == w) return std::nullopt;
  if (!lattice_adjacent(u, v) || !lattice_adjacent(v, w) || !lattice_adjacent(u, w)) return std::nullopt;
  const Point2 centroid = (1.0 / 3.0) * (corner_position(u) + corner_position(v) + corner_position(w));
  return cell_containing(centroid);
}

Cell across(Cell c, const Edge& e) {
  const auto cells = edge_adjacent_cells(e);
  return cells[0] == c ? cells[1] : cells[0];
}

}  // namespace

double law_of_cosines_dist(double pv, double vq) {
  if (!(pv >= 0.0 && pv <= kSideLength) || !(vq >= 0.0 && vq <= kSideLength)) {
    throw Error(ErrorKind::kInvalidArgument, "lengths must lie in [0, 2]");
  }
  return std::sqrt(std::max(0.0, pv * pv + vq * vq - pv * vq));
}

std::vector<Point2> sub_polyline(std::span<const Point2> path, double from, double to) {
  if (path.empty()) throw Error(ErrorKind::kInvalidArgument, "empty polyline");
  const auto cum = arclengths(path);
  auto at = [&](double s) {
    if (s <= 0.0) return path.front();
    if (s >= cum.back()) return path.back();
    const size_t k = std::upper_bound(cum.begin(), cum.end(), s) - cum.begin();
    const double len = cum[k] - cum[k - 1];
    return len > 0.0 ? lerp(path[k - 1], path[k], (s - cum[k - 1]) / len) : path[k];
  };
  std::vector<Point2> out{at(from)};
  for (size_t k = 0; k < path.size(); ++k) {
    if (cum[k] > from + kGeoEps && cum[k] < to - kGeoEps) out.push_back(path[k]);
  }
  const Point2 end = at(to);
  if (distance(out.back(), end) > kGeoEps) out.push_back(end);
  return out;
}

std::vector<CoincidencePoint> coincidence_points(std::span<const Point2> sp, const CrossingPath& x) {
  const std::vector<Point2> xp = x.polyline();
  const auto sp_cum = arclengths(sp);
  const auto x_cum = arclengths(xp);

  std::vector<CoincidencePoint> cand;
  cand.push_back({sp.front(), 0.0, 0.0});
  cand.push_back({sp.back(), sp_cum.back(), x_cum.back()});
  for (size_t i = 0; i + 1 < sp.size(); ++i) {
    const Point2 p0 = sp[i];
    const Point2 d = sp[i + 1] - p0;
    const double lp = norm(d);
    if (lp <= 0.0) continue;
    for (size_t j = 0; j + 1 < xp.size(); ++j) {
      const Point2 q0 = xp[j];
      const Point2 e = xp[j + 1] - q0;
      const double lq = norm(e);
      auto add = [&](double t, double u) {
        t = std::clamp(t, 0.0, 1.0);
        u = std::clamp(u, 0.0, 1.0);
        cand.push_back({lerp(p0, sp[i + 1], t), sp_cum[i] + t * lp, x_cum[j] + u * lq});
      };
      const double den = cross(d, e);
      const Point2 r = q0 - p0;
      if (std::abs(den) <= 1e-12 * lp * lq) {
        if (std::abs(cross(d, r)) / lp > kTouchTol) continue;
        const double t0 = dot(q0 - p0, d) / (lp * lp);
        const double t1 = dot(xp[j + 1] - p0, d) / (lp * lp);
        const double lo = std::max(0.0, std::min(t0, t1));
        const double hi = std::min(1.0, std::max(t0, t1));
        if ((hi - lo) * lp < -kTouchTol) continue;
        for (double t : {lo, hi}) {
          const Point2 pt = lerp(p0, sp[i + 1], std::clamp(t, 0.0, 1.0));
          add(t, dot(pt - q0, e) / (lq * lq));
        }
        continue;
      }
      const double t = cross(r, e) / den;
      const double u = cross(r, d) / den;
      if (t < -kTouchTol / lp || t > 1.0 + kTouchTol / lp) continue;
      if (u < -kTouchTol / lq || u > 1.0 + kTouchTol / lq) continue;
      add(t, u);
    }
  }

  std::sort(cand.begin(), cand.end(), [](const CoincidencePoint& a, const CoincidencePoint& b) {
    if (a.sp_param != b.sp_param) return a.sp_param < b.sp_param;
    return a.x_param < b.x_param;
  });
  // longest chain that is monotone along both paths, from s to t
  const size_t n = cand.size();
  std::vector<int> best(n, -1), prev(n, -1);
  size_t start = 0;
  for (size_t k = 0; k < n; ++k) {
    if (cand[k].sp_param <= kGeoEps && cand[k].x_param <= kGeoEps) {
      start = k;
      break;
    }
  }
  best[start] = 1;
  for (size_t k = start + 1; k < n; ++k) {
    for (size_t m = start; m < k; ++m) {
      if (best[m] < 0) continue;
      if (cand[m].x_param > cand[k].x_param + kGeoEps) continue;
      if (best[m] + 1 > best[k]) {
        best[k] = best[m] + 1;
        prev[k] = static_cast<int>(m);
      }
    }
  }
  int end = -1;
  for (size_t k = 0; k < n; ++k) {
    if (best[k] < 0) continue;
    if (std::abs(cand[k].sp_param - sp_cum.back()) > kGeoEps) continue;
    if (std::abs(cand[k].x_param - x_cum.back()) > kGeoEps) continue;
    if (end < 0 || best[k] > best[end]) end = static_cast<int>(k);
  }
  std::vector<CoincidencePoint> chain;
  for (int k = end; k >= 0; k = prev[k]) chain.push_back(cand[k]);
  std::reverse(chain.begin(), chain.end());

  std::vector<CoincidencePoint> out;
  for (const auto& c : chain) {
    if (!out.empty() && c.sp_param - out.back().sp_param <= kGeoEps &&
        c.x_param - out.back().x_param <= kGeoEps) {
      continue;
    }
    out.push_back(c);
  }
  // pin the ends exactly
  out.front() = {sp.front(), 0.0, 0.0};
  if (out.size() == 1) out.push_back({sp.back(), sp_cum.back(), x_cum.back()});
  else out.back() = {sp.back(), sp_cum.back(), x_cum.back()};
  return out;
}

PolygonClass classify_polygon(std::span<const Point2> sp_sub, std::span<const Point2> x_sub,
                              const Tessellation&) {
  PolygonClass out;
  bool shared = true;
  for (const Point2& p : x_sub) shared = shared && on_polyline(p, sp_sub, kTouchTol);
  for (const Point2& p : sp_sub) shared = shared && on_polyline(p, x_sub, kTouchTol);
  if (shared) {
    out.k = 1;
    out.shared = true;
    return out;
  }
  std::vector<Corner> interior;
  for (size_t k = 1; k + 1 < x_sub.size(); ++k) {
    const Location loc = locate_unbounded(x_sub[k]);
    if (const auto* c = std::get_if<LocCorner>(&loc)) interior.push_back(c->corner);
  }
  if (interior.empty()) {
    out.k = 1;
    return out;
  }
  if (interior.size() > 1) {
    throw Error(ErrorKind::kUnexpectedTopology,
                "crossing path turns at " + std::to_string(interior.size()) + " corners between coincidences");
  }
  const Corner p = interior.front();
  const Point2 pp = corner_position(p);
  int mask = 0;
  for (int d = 0; d < 6; ++d) {
    const Corner n{p.i + kNeighborOffsets[d][0], p.j + kNeighborOffsets[d][1]};
    if (polyline_touches_segment(sp_sub, pp, corner_position(n))) mask |= 1 << d;
  }
  const int k = std::popcount(static_cast<unsigned>(mask));
  if (k == 0) throw Error(ErrorKind::kUnexpectedTopology, "shortest path misses every edge at the pivot");
  if (k < 6) {
    // consecutive around p: exactly one 1 -> 0 transition cyclically
    int runs = 0;
    for (int d = 0; d < 6; ++d) {
      if ((mask >> d & 1) && !(mask >> ((d + 1) % 6) & 1)) ++runs;
    }
    if (runs != 1) throw Error(ErrorKind::kUnexpectedTopology, "pivot edges hit by the shortest path are not consecutive");
  }
  out.k = k;
  out.pivot = p;
  return out;
}

CoincidenceDecomposition decompose(std::span<const Point2> sp, const CrossingPath& x,
                                   const Tessellation& tess) {
  CoincidenceDecomposition d;
  d.points = coincidence_points(sp, x);
  const std::vector<Point2> xp = x.polyline();
  for (size_t k = 0; k + 1 < d.points.size(); ++k) {
    const auto& a = d.points[k];
    const auto& b = d.points[k + 1];
    PolygonRecord poly;
    poly.sp_from = a.sp_param;
    poly.sp_to = b.sp_param;
    poly.x_from = a.x_param;
    poly.x_to = b.x_param;
    poly.sp_sub = sub_polyline(sp, a.sp_param, b.sp_param);
    poly.x_sub = sub_polyline(xp, a.x_param, b.x_param);
    poly.type = classify_polygon(poly.sp_sub, poly.x_sub, tess);
    d.polygons.push_back(std::move(poly));
  }
  return d;
}

PolygonMetrics polygon_metrics(const PolygonRecord& poly) {
  PolygonMetrics m;
  if (!poly.type.pivot || poly.sp_sub.empty()) return m;
  const Point2 p = corner_position(*poly.type.pivot);
  const Point2 uj = poly.sp_sub.front();
  const Point2 uk = poly.sp_sub.back();
  m.a = distance(uj, p);
  m.d = distance(uk, p);
  if (poly.type.k == 2) {
    m.b = m.d;
    m.c = distance(uj, uk);
    return m;
  }
  // pieces of SP from each end up to the next fan edge it meets
  const Corner pc = *poly.type.pivot;
  auto fan_hit = [&](std::span<const Point2> path) {
    const Point2 start = path.front();
    double best_len = -1.0;
    Point2 best{};
    for (const auto& o : kNeighborOffsets) {
      const Point2 q = corner_position(Corner{pc.i + o[0], pc.j + o[1]});
      if (point_segment_distance(start, p, q) <= kTouchTol) continue;
      const auto hit = first_touch(path, p, q, kTouchTol);
      if (!hit) continue;
      const double len = distance(start, *hit);
      if (best_len < 0.0 || len < best_len) {
        best_len = len;
        best = *hit;
      }
    }
    return best_len < 0.0 ? path.back() : best;
  };
  m.c = distance(uj, fan_hit(poly.sp_sub));
  const auto back = reversed(poly.sp_sub);
  m.e = distance(uk, fan_hit(back));
  return m;
}

std::vector<Corner> compose_grid_path(const CrossingPath& x, std::span<const Corner> vs) {
  if (vs.empty()) throw Error(ErrorKind::kInvalidArgument, "empty corner sequence");
  for (size_t k = 0; k + 1 < vs.size(); ++k) {
    if (vs[k] != vs[k + 1] && !lattice_adjacent(vs[k], vs[k + 1])) {
      throw Error(ErrorKind::kInvalidArgument, "corner sequence is not a grid walk");
    }
  }
  const auto& xc = x.corners;
  const auto first = std::find(xc.begin(), xc.end(), vs.front());
  if (first == xc.end()) throw Error(ErrorKind::kInvalidArgument, "first corner not on the crossing path");
  const auto last = std::find(first, xc.end(), vs.back());
  if (last == xc.end()) throw Error(ErrorKind::kInvalidArgument, "last corner not on the crossing path after the first");
  std::vector<Corner> out(xc.begin(), first);
  for (const Corner& c : vs) {
    if (out.empty() || out.back() != c) out.push_back(c);
  }
  for (auto it = last + 1; it != xc.end(); ++it) {
    if (out.back() != *it) out.push_back(*it);
  }
  return out;
}

std::vector<Shortcut> shortcut_paths(const CrossingPath& x, const Tessellation& tess) {
  std::vector<Shortcut> out;
  const auto& xc = x.corners;
  for (size_t k = 0; k + 2 < xc.size(); ++k) {
    const auto cell = triple_cell(xc[k], xc[k + 1], xc[k + 2]);
    if (!cell || !tess.contains(*cell)) continue;
    Shortcut sc;
    sc.position = k;
    sc.cell = *cell;
    sc.u = xc[k];
    sc.v = xc[k + 1];
    sc.w = xc[k + 2];
    sc.corners = xc;
    sc.corners.erase(sc.corners.begin() + static_cast<std::ptrdiff_t>(k + 1));
    out.push_back(std::move(sc));
  }
  return out;
}

WeightMap equalize_shortcut_weights(const WeightMap& w, std::span<const Point2> sp,
                                    const Shortcut& shortcut) {
  const Tessellation& tess = w.tessellation();
  std::set<Cell> traversed;
  for (size_t k = 0; k + 1 < sp.size(); ++k) {
    for (const WalkRecord& rec : tess.segment_walk(sp[k], sp[k + 1])) {
      if (rec.kind == PieceKind::kInterior) {
        traversed.insert(rec.cell);
      } else {
        for (const Cell& c : tess.edge_cells(rec.edge)) traversed.insert(c);
      }
    }
  }
  WeightMap out(tess);
  for (const Cell& c : tess.cells()) {
    if (traversed.count(c) && !std::isinf(w.value(c))) out.set(c, w.value(c));
  }
  const double before = out.value(across(shortcut.cell, Edge(shortcut.u, shortcut.v)));
  const double after = out.value(across(shortcut.cell, Edge(shortcut.v, shortcut.w)));
  if (std::isinf(before) || std::isinf(after)) {
    throw Error(ErrorKind::kInfiniteNeighbor, "a cell across the shortcut detour has infinite weight");
  }
  out.set(shortcut.cell, before + after);
  return out;
}

std::vector<PolygonRatio> per_polygon_ratios(const CoincidenceDecomposition& d,
                                             std::span<const Point2> sp, const CrossingPath& x,
                                             const WeightMap& w) {
  const Tessellation& tess = w.tessellation();
  std::vector<PolygonRatio> out;
  std::vector<Shortcut> shortcuts;
  double x_total = -1.0;
  double sp_total = -1.0;
  for (const PolygonRecord& poly : d.polygons) {
    PolygonRatio r;
    r.type = poly.type;
    r.x_cost = polyline_cost(poly.x_sub, w);
    r.sp_cost = polyline_cost(poly.sp_sub, w);
    if (r.sp_cost == 0.0 && r.x_cost > 0.0) {
      throw Error(ErrorKind::kDegeneratePolygon, "shortest path piece of zero cost against a costly crossing path piece");
    }
    r.ratio = cost_ratio(r.x_cost, r.sp_cost);
    r.metrics = polygon_metrics(poly);
    r.bound_ok = r.ratio <= kTightBound + kBoundSlack;

    if (poly.type.k == 2) {
      if (x_total < 0.0) {
        x_total = grid_walk_cost(x.corners, w);
        sp_total = polyline_cost(sp, w);
        shortcuts = shortcut_paths(x, tess);
      }
      // the pivot is the crossing path corner strictly inside the gap; corners sit 2 apart
      const long m = std::lround((poly.x_from + poly.x_to) / 2.0 / kSideLength);
      const Shortcut* sc = nullptr;
      for (const Shortcut& s : shortcuts) {
        if (static_cast<long>(s.position) + 1 == m && s.v == *poly.type.pivot) sc = &s;
      }
      if (sc == nullptr) {
        r.equalize_error = "no shortcut cell at the pivot";
        r.bound_ok = false;
      } else {
        const double pi_cost = grid_walk_cost(sc->corners, w);
        r.shortcut_ratio = cost_ratio(std::min(x_total, pi_cost), sp_total);
        r.bound_ok = *r.shortcut_ratio <= kTightBound + kBoundSlack;
        try {
          const WeightMap eq = equalize_shortcut_weights(w, sp, *sc);
          r.equalized_ratio = cost_ratio(polyline_cost(poly.x_sub, eq), polyline_cost(poly.sp_sub, eq));
        } catch (const Error& e) {
          r.equalize_error = e.what();
        }
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

double mediant_upper_bound(std::span<const std::pair<double, double>> parts) {
  if (parts.empty()) throw Error(ErrorKind::kInvalidArgument, "no parts");
  double best = 0.0;
  for (const auto& [num, den] : parts) {
    if (!(den > 0.0)) throw Error(ErrorKind::kInvalidArgument, "zero denominator");
    best = std::max(best, num / den);
  }
  return best;
}

double cost_ratio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  return num / den;
}

}  // namespace trigrid
