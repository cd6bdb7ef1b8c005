#pragma once
// Equilateral triangle lattice with side length 2.
//
// Corners live on the integer lattice (i, j) with i + j even and are embedded
// at (i, j * sqrt(3)). Cells are indexed by (row, col); a cell is upward iff
// row + col is even:
//
//   upward   (r, c): (c, r), (c + 2, r), (c + 1, r + 1)
//   downward (r, c): (c + 1, r), (c, r + 1), (c + 2, r + 1)
//
// A Tessellation covers rows [0, rows) and cols [0, cols) of that index grid.

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace trigrid {

inline constexpr double kSqrt3 = 1.7320508075688772935;
inline constexpr double kSideLength = 2.0;
inline constexpr double kGeoEps = 1e-9;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }
inline Point2 lerp(Point2 a, Point2 b, double t) { return a + t * (b - a); }
// > 0 when c is to the left of the directed line a -> b.
inline double orient(Point2 a, Point2 b, Point2 c) { return cross(b - a, c - a); }

struct Corner {
  int i = 0;
  int j = 0;

  bool valid() const { return ((i + j) & 1) == 0; }

  // Lexicographic on (j, i); this is the tie-break order of every search.
  friend auto operator<=>(const Corner& a, const Corner& b) {
    if (auto c = a.j <=> b.j; c != 0) return c;
    return a.i <=> b.i;
  }
  friend bool operator==(const Corner&, const Corner&) = default;
};

struct Cell {
  int row = 0;
  int col = 0;

  bool upward() const { return ((row + col) & 1) == 0; }

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Unordered pair of lattice-adjacent corners, stored with a < b.
struct Edge {
  Corner a;
  Corner b;

  Edge() = default;
  Edge(Corner p, Corner q);

  Corner other(Corner c) const { return c == a ? b : a; }
  bool has(Corner c) const { return c == a || c == b; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Direction vectors of the six lattice neighbours, in counter-clockwise order
// starting at +x.
inline constexpr std::array<std::array<int, 2>, 6> kNeighborOffsets = {{
    {2, 0}, {1, 1}, {-1, 1}, {-2, 0}, {-1, -1}, {1, -1}}};

Point2 corner_position(Corner c);

struct LocCorner {
  Corner corner;
};
struct LocEdge {
  Edge edge;
  double t = 0.0;  // position from edge.a (0) to edge.b (1)
};
struct LocInterior {
  Cell cell;
};
struct LocOutside {};

using Location = std::variant<LocCorner, LocEdge, LocInterior, LocOutside>;

enum class PieceKind { kInterior, kEdgeCollinear };

struct WalkRecord {
  PieceKind kind = PieceKind::kInterior;
  Cell cell;   // meaningful for kInterior
  Edge edge;   // meaningful for kEdgeCollinear
  Point2 entry;
  Point2 exit;

  double length() const { return distance(entry, exit); }
};

using SegmentWalk = std::vector<WalkRecord>;

class Tessellation {
 public:
  Tessellation(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool contains(Cell c) const {
    return c.row >= 0 && c.row < rows_ && c.col >= 0 && c.col < cols_;
  }
  // A corner is in the domain when some in-domain cell has it as a vertex.
  bool contains(Corner c) const;
  bool contains(const Edge& e) const;

  // Vertices of a cell in clockwise order, starting with the lowest (j, i).
  std::array<Corner, 3> cell_vertices(Cell c) const;
  std::array<Edge, 3> cell_edges(Cell c) const;

  std::vector<Corner> corner_neighbors(Corner c) const;
  // In-domain cells incident to a corner / edge.
  std::vector<Cell> corner_cells(Corner c) const;
  std::vector<Cell> edge_cells(const Edge& e) const;

  // All in-domain corners ordered by (j, i).
  std::vector<Corner> corners() const;
  std::vector<Cell> cells() const;

  // Dense index helpers over the corner bounding box, used by the solvers.
  int corner_index_bound() const { return (rows_ + 1) * (cols_ + 2); }
  int corner_index(Corner c) const { return c.j * (cols_ + 2) + c.i; }
  Corner corner_from_index(int idx) const {
    return {idx % (cols_ + 2), idx / (cols_ + 2)};
  }

  Location locate_point(Point2 p) const;
  bool in_closed_domain(Point2 p) const;

  SegmentWalk segment_walk(Point2 a, Point2 b) const;

 private:
  int rows_;
  int cols_;
};

// Geometry helpers that do not depend on the domain bounds.
std::array<Corner, 3> cell_vertices_unchecked(Cell c);
std::array<Cell, 2> edge_adjacent_cells(const Edge& e);
Cell cell_containing(Point2 p);
Location locate_unbounded(Point2 p);
Point2 edge_point(const Edge& e, double t);

}  // namespace trigrid
