#pragma once
// Executable versions of the constructions behind the 2/sqrt(3) bound:
// crossing paths derived from a shortest path, the decomposition of the
// region between the two into fan-shaped polygons, shortcut paths, the
// weight equalization used for two-edge polygons, and the ratio reports.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trigrid/grid_paths.hpp"
#include "trigrid/metric.hpp"
#include "trigrid/wrp_oracle.hpp"

namespace trigrid {

inline const double kTightBound = 2.0 / kSqrt3;
inline constexpr double kBoundSlack = 1e-9;

double law_of_cosines_dist(double pv, double vq);

// ---------------------------------------------------------------------------
// Crossing path

enum class CrossingCase {
  kSameEdge,      // entry and exit on one edge: the whole edge
  kEndpointPivot, // entry at a corner, exit inside the opposite edge
  kToCorner,      // entry inside an edge, exit at the opposite corner
  kBetweenEdges,  // entry and exit inside two different edges: their common corner
};

const char* to_string(CrossingCase c);

// One maximal stretch of the shortest path inside a closed cell (or along an
// edge that neither neighbouring stretch can absorb).
struct CrossingSegment {
  CrossingCase kind = CrossingCase::kSameEdge;
  PieceKind piece = PieceKind::kInterior;
  Cell cell;
  Edge edge;
  Point2 entry;
  Point2 exit;
  std::vector<Corner> vertices;
};

struct CrossingPath {
  std::vector<Corner> corners;
  std::vector<CrossingSegment> segments;

  std::vector<Point2> polyline() const { return corners_to_polyline(corners); }
};

// Throws kMalformedPath when a polyline vertex lies strictly inside a cell or
// the polyline does not start and end at corners.
CrossingPath crossing_path(std::span<const Point2> sp, const Tessellation& tess);

// Segment walk of the whole polyline, with pieces in the same cell or on the
// same edge merged across polyline vertices.
std::vector<WalkRecord> cell_traversals(std::span<const Point2> sp, const Tessellation& tess);

// ---------------------------------------------------------------------------
// Coincidence decomposition

struct CoincidencePoint {
  Point2 point;
  double sp_param = 0.0;  // arclength along the shortest path
  double x_param = 0.0;   // arclength along the crossing path
};

struct PolygonClass {
  int k = 0;
  std::optional<Corner> pivot;
  bool shared = false;  // both paths coincide over the whole gap
};

struct PolygonRecord {
  PolygonClass type;
  std::vector<Point2> sp_sub;
  std::vector<Point2> x_sub;
  double sp_from = 0.0, sp_to = 0.0;
  double x_from = 0.0, x_to = 0.0;
};

struct CoincidenceDecomposition {
  std::vector<CoincidencePoint> points;
  std::vector<PolygonRecord> polygons;
};

std::vector<CoincidencePoint> coincidence_points(std::span<const Point2> sp, const CrossingPath& x);

PolygonClass classify_polygon(std::span<const Point2> sp_sub, std::span<const Point2> x_sub,
                              const Tessellation& tess);

CoincidenceDecomposition decompose(std::span<const Point2> sp, const CrossingPath& x,
                                   const Tessellation& tess);

// Sub-polyline of `path` between two arclength parameters.
std::vector<Point2> sub_polyline(std::span<const Point2> path, double from, double to);

// Side lengths used by the per-polygon bounds. For two-edge polygons a and b
// are the distances from the entry and exit points to the pivot and c the
// chord between them. For wider fans a and d are the distances of the entry
// and exit points to the pivot; c and e the lengths of the first and last
// shortest-path pieces up to the neighbouring fan edges.
struct PolygonMetrics {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0;
};

PolygonMetrics polygon_metrics(const PolygonRecord& poly);

// ---------------------------------------------------------------------------
// Shortcuts

struct Shortcut {
  size_t position = 0;  // index of u in the crossing path corners
  Cell cell;
  Corner u, v, w;
  std::vector<Corner> corners;  // the crossing path with v removed there
};

// X(s, v1) + grid walk through vs + X(vn, t).
std::vector<Corner> compose_grid_path(const CrossingPath& x, std::span<const Corner> vs);

std::vector<Shortcut> shortcut_paths(const CrossingPath& x, const Tessellation& tess);

// Cells not touched by the shortest path become infinite and the shortcut
// cell's weight becomes the sum of the weights across its two crossing-path
// edges. Throws kInfiniteNeighbor when one of those is infinite.
WeightMap equalize_shortcut_weights(const WeightMap& w, std::span<const Point2> sp,
                                    const Shortcut& shortcut);

// ---------------------------------------------------------------------------
// Ratios

struct PolygonRatio {
  PolygonClass type;
  double x_cost = 0.0;
  double sp_cost = 0.0;
  double ratio = 1.0;
  bool bound_ok = true;
  PolygonMetrics metrics;
  // two-edge polygons only
  std::optional<double> shortcut_ratio;   // min(|X|, |Pi|) / |SP| over the whole path
  std::optional<double> equalized_ratio;  // this polygon re-priced after equalization
  std::string equalize_error;
};

std::vector<PolygonRatio> per_polygon_ratios(const CoincidenceDecomposition& d,
                                             std::span<const Point2> sp, const CrossingPath& x,
                                             const WeightMap& w);

// Largest num/den over the parts; whole-sum ratio never exceeds it.
double mediant_upper_bound(std::span<const std::pair<double, double>> parts);

// 0/0 counts as 1.
double cost_ratio(double num, double den);

struct RatioReport {
  double sgp_cost = 0.0;
  double svp_cost = 0.0;
  double sp_cost = 0.0;
  double sgp_sp = 1.0;
  double svp_sp = 1.0;
  double sgp_svp = 1.0;
  double x_cost = 0.0;
  double max_poly_ratio = 1.0;
  std::array<int, 6> histogram{};
  SteinerLevel level;
  bool converged = false;

  CornerPath sgp;
  CornerPath svp;
  PathResult sp;
  CrossingPath crossing;
  CoincidenceDecomposition decomposition;
  std::vector<PolygonRatio> polygons;
  std::string analysis_error;  // set when the decomposition could not be built
};

RatioReport ratio_report(const WeightMap& w, Corner s, Corner t, const OracleConfig& cfg = {});

// Closed-form lower bound on the vertex-path ratio and the edge offset of the
// instance attaining it.
double svp_lower_bound_constant();
double svp_lower_bound_offset();

// ---------------------------------------------------------------------------
// Randomised search for two-edge polygons where the crossing path is far
// worse than the shortest path while a shortcut path is not.

struct AnomalyCandidate {
  WeightMap weights;
  Corner source;
  Corner target;
  double x_ratio = 0.0;         // |X| / |SP|
  double shortcut_ratio = 0.0;  // min(|X|, |Pi|) / |SP|
  int p2_count = 0;
};

struct AnomalyResult {
  std::optional<AnomalyCandidate> best;
  int trials = 0;
  int samples_with_p2 = 0;
};

AnomalyResult search_p2_anomaly(std::uint64_t seed, int trials, int steiner_level = 5);

}  // namespace trigrid
