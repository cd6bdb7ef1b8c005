#include "trigrid/metric.hpp"

#include <algorithm>
#include <string>

#include "trigrid/error.hpp"

namespace trigrid {

Weight Weight::finite(double w) {
  if (!(w > 0.0) || std::isinf(w)) {
    throw Error(ErrorKind::kInvalidArgument,
                "finite weights must be strictly positive, got " + std::to_string(w));
  }
  return Weight(w);
}

WeightMap::WeightMap(const Tessellation& tess)
    : tess_(tess), weights_(static_cast<size_t>(tess.rows()) * tess.cols(), kInf) {}

Weight WeightMap::get(Cell c) const {
  const double v = value(c);
  return std::isinf(v) ? Weight::infinite() : Weight::finite(v);
}

void WeightMap::set(Cell c, Weight w) {
  if (!tess_.contains(c)) {
    throw Error(ErrorKind::kOutOfDomain, "cannot weight a cell outside the domain");
  }
  weights_[static_cast<size_t>(c.row) * tess_.cols() + c.col] = w.value();
}

double WeightMap::edge_weight(const Edge& e) const {
  double best = kInf;
  for (const Cell& c : edge_adjacent_cells(e)) best = std::min(best, value(c));
  return best;
}

WeightMap WeightMap::scaled(double factor) const {
  if (!(factor > 0.0)) throw Error(ErrorKind::kInvalidArgument, "scale factor must be > 0");
  WeightMap out = *this;
  for (double& v : out.weights_) {
    if (!std::isinf(v)) v *= factor;
  }
  return out;
}

int WeightMap::finite_count() const {
  return static_cast<int>(
      std::count_if(weights_.begin(), weights_.end(), [](double v) { return !std::isinf(v); }));
}

double segment_cost(const SegmentWalk& walk, const WeightMap& w) {
  double total = 0.0;
  for (const WalkRecord& rec : walk) {
    const double weight =
        rec.kind == PieceKind::kInterior ? w.value(rec.cell) : w.edge_weight(rec.edge);
    total += weighted_length(weight, rec.length());
  }
  return total;
}

double segment_cost(Point2 a, Point2 b, const WeightMap& w) {
  return segment_cost(w.tessellation().segment_walk(a, b), w);
}

double polyline_cost(std::span<const Point2> polyline, const WeightMap& w) {
  if (polyline.empty()) throw Error(ErrorKind::kInvalidArgument, "empty polyline");
  double total = 0.0;
  for (size_t k = 0; k + 1 < polyline.size(); ++k) {
    total += segment_cost(polyline[k], polyline[k + 1], w);
  }
  return total;
}

double grid_edge_cost(const Edge& e, const WeightMap& w) {
  return weighted_length(w.edge_weight(e), kSideLength);
}

std::vector<Point2> corners_to_polyline(std::span<const Corner> corners) {
  std::vector<Point2> out;
  out.reserve(corners.size());
  for (const Corner& c : corners) out.push_back(corner_position(c));
  return out;
}

}  // namespace trigrid
