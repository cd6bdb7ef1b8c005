#include "doctest.h"
#include "reference.hpp"
#include "trigrid/error.hpp"
#include "trigrid/grid_paths.hpp"
#include "trigrid/instances.hpp"
#include "trigrid/wrp_oracle.hpp"

using namespace trigrid;

namespace {

// Every interior polyline vertex must sit on a cell boundary.
bool on_boundaries(const std::vector<Point2>& poly, const Tessellation& tess) {
  for (const Point2& p : poly)
    if (std::holds_alternative<LocInterior>(tess.locate_point(p)) ||
        std::holds_alternative<LocOutside>(tess.locate_point(p)))
      return false;
  return true;
}

}  // namespace

TEST_CASE("strip geodesic is found at level 1") {
  const Instance inst = gen_strip(5);
  const OracleResult r = approx_shortest_path(inst.source, inst.target, inst.weights, SteinerLevel{1});
  CHECK(r.path.cost == doctest::Approx(10 * kSqrt3).epsilon(1e-12));
  const OracleResult c = refine_until(inst.source, inst.target, inst.weights, 1e-6, 7);
  CHECK(c.converged);
  CHECK(std::abs(c.path.cost - 10 * kSqrt3) < 1e-6);
}

TEST_CASE("single cell gives the edge at every level") {
  WeightMap w{Tessellation(1, 1)};
  w.set({0, 0}, 1.0);
  for (int l = 0; l <= 4; ++l)
    CHECK(approx_shortest_path({0, 0}, {1, 1}, w, SteinerLevel{l}).path.cost == doctest::Approx(2.0));
}

TEST_CASE("level zero and max level zero match the vertex path") {
  const Instance inst = gen_random(5, 6, 4, 0.1, 10.0, 0.1);
  const double svp = shortest_vertex_path(inst.source, inst.target, inst.weights).path.cost;
  CHECK(approx_shortest_path(inst.source, inst.target, inst.weights, SteinerLevel{0}).path.cost ==
        doctest::Approx(svp).epsilon(1e-12));
  const OracleResult r = refine_until(inst.source, inst.target, inst.weights, 1e-6, 0);
  CHECK_FALSE(r.converged);
  CHECK(r.level_used.level == 0);
  CHECK(r.path.cost == doctest::Approx(svp).epsilon(1e-12));
}

TEST_CASE("argument checks") {
  const Instance inst = gen_strip(1);
  CHECK_THROWS_AS(refine_until(inst.source, inst.target, inst.weights, 0.0, 3), Error);
  CHECK_THROWS_AS(approx_shortest_path(inst.source, inst.target, inst.weights, SteinerLevel{-1}), Error);
  CHECK_THROWS_AS(approx_shortest_path({1, 0}, inst.target, inst.weights, SteinerLevel{1}), Error);
}

TEST_CASE("levels are monotone and paths are feasible") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Instance inst = seed % 4 == 0 ? gen_two_weight_maze(5, 6, seed, 0.2)
                                        : gen_random(5, 6, seed, 0.1, 10.0, 0.1);
    const double svp = shortest_vertex_path(inst.source, inst.target, inst.weights).path.cost;
    double prev = kInf;
    for (int l = 0; l <= 4; ++l) {
      const OracleResult r = approx_shortest_path(inst.source, inst.target, inst.weights, SteinerLevel{l});
      CAPTURE(seed);
      CAPTURE(l);
      CHECK(r.path.cost <= prev + 1e-9);
      CHECK(r.path.cost <= svp + 1e-9);
      prev = r.path.cost;
      // independent pricing of the returned route
      double priced = 0.0;
      for (size_t k = 0; k + 1 < r.path.polyline.size(); ++k)
        priced += ref::segment_cost(r.path.polyline[k], r.path.polyline[k + 1], inst.weights);
      CHECK(priced == doctest::Approx(r.path.cost).epsilon(1e-9));
      CHECK(on_boundaries(r.path.polyline, inst.tessellation()));
      CHECK(distance(r.path.polyline.front(), corner_position(inst.source)) < 1e-12);
      CHECK(distance(r.path.polyline.back(), corner_position(inst.target)) < 1e-12);
    }
  }
}

TEST_CASE("uniform weights approach the euclidean distance") {
  const Instance inst = gen_random(6, 8, 5, 1.0, 1.0, 0.0);
  const Corner s{1, 1}, t{8, 6};
  const double euclid = distance(corner_position(s), corner_position(t));
  const OracleResult r = refine_until(s, t, inst.weights, 1e-7, 7);
  CHECK(r.path.cost >= euclid - 1e-9);
  CHECK(r.path.cost <= euclid * (1 + 1e-3));
}
