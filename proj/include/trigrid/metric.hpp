#pragma once
// Weighted region metric on a Tessellation.
//
// A segment inside a cell costs weight * length; a segment on a lattice edge
// costs min(incident weights) * length. Cells outside the domain or never
// assigned carry an infinite weight.

#include <limits>
#include <span>
#include <vector>

#include "trigrid/tessellation.hpp"

namespace trigrid {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class Weight {
 public:
  static Weight infinite() { return Weight(); }
  static Weight finite(double w);

  bool is_infinite() const { return std::isinf(value_); }
  double value() const { return value_; }

  friend bool operator==(const Weight&, const Weight&) = default;

 private:
  Weight() : value_(kInf) {}
  explicit Weight(double w) : value_(w) {}
  double value_;
};

// weight * length with the convention that zero length is free even on an
// infinite weight.
inline double weighted_length(double weight, double length) {
  return length == 0.0 ? 0.0 : weight * length;
}

class WeightMap {
 public:
  // All cells start infinite.
  explicit WeightMap(const Tessellation& tess);

  const Tessellation& tessellation() const { return tess_; }

  Weight get(Cell c) const;
  double value(Cell c) const {
    if (!tess_.contains(c)) return kInf;
    return weights_[static_cast<size_t>(c.row) * tess_.cols() + c.col];
  }
  void set(Cell c, Weight w);
  void set(Cell c, double w) { set(c, Weight::finite(w)); }

  // min over the in-domain incident cells; infinite when there are none.
  double edge_weight(const Edge& e) const;

  // Multiplies every finite weight by factor > 0.
  WeightMap scaled(double factor) const;

  int finite_count() const;

  friend bool operator==(const WeightMap& a, const WeightMap& b) {
    return a.tess_.rows() == b.tess_.rows() && a.tess_.cols() == b.tess_.cols() &&
           a.weights_ == b.weights_;
  }

 private:
  Tessellation tess_;
  std::vector<double> weights_;
};

struct PathResult {
  std::vector<Point2> polyline;
  double cost = 0.0;
};

double segment_cost(Point2 a, Point2 b, const WeightMap& w);
double segment_cost(const SegmentWalk& walk, const WeightMap& w);
double polyline_cost(std::span<const Point2> polyline, const WeightMap& w);
double grid_edge_cost(const Edge& e, const WeightMap& w);

std::vector<Point2> corners_to_polyline(std::span<const Corner> corners);

}  // namespace trigrid
