#pragma once
// Instance generators, the text format and SVG export.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trigrid/metric.hpp"

namespace trigrid {

struct Instance {
  WeightMap weights;
  Corner source;
  Corner target;
  std::string label;
  // Columns the generator shifted the construction by to keep it inside the
  // domain rectangle; canonical corner (i, j) is stored as (i + offset_i, j).
  int offset_i = 0;

  const Tessellation& tessellation() const { return weights.tessellation(); }
};

// Column of unit cells stacked k levels high; every other cell infinite.
Instance gen_strip(int k);

Instance gen_random(int rows, int cols, std::uint64_t seed, double weight_low, double weight_high,
                    double inf_prob);

Instance gen_two_weight_maze(int rows, int cols, std::uint64_t seed, double wall_prob);

Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

struct SvgPath {
  std::string kind;  // sp, svp, sgp, x, pi; anything else is drawn grey
  std::vector<Point2> polyline;
};

std::string export_svg(const Instance& inst, const std::vector<SvgPath>& paths);

}  // namespace trigrid
