#include <random>

#include "doctest.h"
#include "trigrid/analysis.hpp"
#include "trigrid/error.hpp"
#include "trigrid/instances.hpp"

#ifdef TRIGRID_HAVE_BOOST_MP
#include <boost/multiprecision/cpp_bin_float.hpp>
#endif

using namespace trigrid;

namespace {

Point2 at(double i, double j) { return {i, j * kSqrt3}; }

}  // namespace

TEST_CASE("law of cosines distance") {
  CHECK(law_of_cosines_dist(1, 1) == doctest::Approx(1.0));
  CHECK(law_of_cosines_dist(0, 1.5) == doctest::Approx(1.5));
  CHECK(law_of_cosines_dist(2, 2) == doctest::Approx(2.0));
  CHECK_THROWS_AS(law_of_cosines_dist(-0.1, 1), Error);
  CHECK_THROWS_AS(law_of_cosines_dist(1, 2.5), Error);
}

TEST_CASE("closed-form constants") {
  CHECK(svp_lower_bound_constant() == doctest::Approx(1.1115).epsilon(1e-4));
  CHECK(svp_lower_bound_offset() == doctest::Approx(0.1247).epsilon(1e-3));
#ifdef TRIGRID_HAVE_BOOST_MP
  using F = boost::multiprecision::cpp_bin_float_50;
  const F s3 = sqrt(F(3));
  const F q = 7 * s3 - 12;
  const F c = 2 * sqrt(q) / ((7 - 4 * s3) * (6 * sqrt(F(2)) + sqrt(q)));
  const F a = q / sqrt(56 * s3 - 96);
  CHECK(std::abs(svp_lower_bound_constant() - c.convert_to<double>()) < 1e-12);
  CHECK(std::abs(svp_lower_bound_offset() - a.convert_to<double>()) < 1e-12);
#endif
}

TEST_CASE("mediant bound") {
  const std::vector<std::pair<double, double>> parts{{1, 1}, {2, kSqrt3}};
  CHECK(mediant_upper_bound(parts) == doctest::Approx(2 / kSqrt3));
  const std::vector<std::pair<double, double>> one{{3, 2}};
  CHECK(mediant_upper_bound(one) == doctest::Approx(1.5));
  CHECK(cost_ratio(0, 0) == 1.0);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int n = 0; n < 200; ++n) {
    std::vector<std::pair<double, double>> ps;
    double num = 0, den = 0;
    for (int k = 0; k < 1 + n % 7; ++k) {
      ps.emplace_back(u(rng), u(rng));
      num += ps.back().first;
      den += ps.back().second;
    }
    CHECK(num / den <= mediant_upper_bound(ps) + 1e-12);
  }
}

TEST_CASE("coincidence points") {
  const Instance strip = gen_strip(1);
  const std::vector<Point2> sp{at(2, 0), at(2, 2)};
  const CrossingPath x = crossing_path(sp, strip.tessellation());
  const auto u = coincidence_points(sp, x);
  REQUIRE(u.size() == 2);
  CHECK(distance(u[0].point, at(2, 0)) < 1e-12);
  CHECK(distance(u[1].point, at(2, 2)) < 1e-12);

  const Tessellation tess(4, 6);
  const std::vector<Corner> cs{{1, 1}, {3, 1}, {4, 2}, {6, 2}};
  const auto grid = corners_to_polyline(cs);
  const auto shared = coincidence_points(grid, crossing_path(grid, tess));
  REQUIRE(shared.size() == cs.size());
  for (size_t k = 0; k < cs.size(); ++k) CHECK(distance(shared[k].point, grid[k]) < 1e-12);
}

TEST_CASE("polygon classes") {
  const Instance strip = gen_strip(1);
  const std::vector<Point2> sp{at(2, 0), at(2, 2)};
  const CrossingPath x = crossing_path(sp, strip.tessellation());
  const CoincidenceDecomposition d = decompose(sp, x, strip.tessellation());
  REQUIRE(d.polygons.size() == 1);
  CHECK(d.polygons[0].type.k == 3);
  REQUIRE(d.polygons[0].type.pivot);
  CHECK(*d.polygons[0].type.pivot == Corner{3, 1});

  const auto ratios = per_polygon_ratios(d, sp, x, strip.weights);
  REQUIRE(ratios.size() == 1);
  CHECK(ratios[0].ratio == doctest::Approx(2 / kSqrt3));
  CHECK(ratios[0].bound_ok);

  const Tessellation tess(5, 8);
  const std::vector<Point2> edge{at(1, 1), at(3, 1)};
  const PolygonClass p1 = classify_polygon(edge, edge, tess);
  CHECK(p1.k == 1);
  CHECK(p1.shared);

  // the shortest path winds the long way round (4,2), touching all six edges
  const Point2 p = at(4, 2);
  std::vector<Point2> around;
  for (double deg : {-60.0, -120.0, 180.0, 120.0, 60.0, 0.0}) {
    const double r = deg * 3.14159265358979323846 / 180.0;
    around.push_back({p.x + std::cos(r), p.y + std::sin(r)});
  }
  const std::vector<Point2> x6{around.front(), p, around.back()};
  const PolygonClass p6 = classify_polygon(around, x6, tess);
  CHECK(p6.k == 6);
  REQUIRE(p6.pivot);
  CHECK(*p6.pivot == Corner{4, 2});
}

TEST_CASE("grid path composition and shortcuts") {
  CrossingPath x;
  x.corners = {{0, 0}, {1, 1}, {2, 0}, {3, 1}};
  const std::vector<Corner> all = x.corners;
  CHECK(compose_grid_path(x, all) == x.corners);
  const std::vector<Corner> cut{{0, 0}, {2, 0}};
  CHECK(compose_grid_path(x, cut) == std::vector<Corner>{{0, 0}, {2, 0}, {3, 1}});
  const std::vector<Corner> single{{1, 1}};
  CHECK(compose_grid_path(x, single) == x.corners);
  const std::vector<Corner> bad{{0, 0}, {3, 1}};
  CHECK_THROWS_AS(compose_grid_path(x, bad), Error);

  const Tessellation tess(2, 4);
  const auto scs = shortcut_paths(x, tess);
  REQUIRE(scs.size() == 2);
  CHECK(scs[0].cell == Cell{0, 0});
  CHECK(scs[0].corners == std::vector<Corner>{{0, 0}, {2, 0}, {3, 1}});
  CHECK(scs[1].cell == Cell{0, 1});

  CrossingPath straight;
  straight.corners = {{0, 0}, {2, 0}, {4, 0}};
  CHECK(shortcut_paths(straight, tess).empty());
}

TEST_CASE("weight equalization") {
  const Tessellation tess(2, 5);
  const std::vector<Point2> sp{at(1, 1), at(2.5, 0.5), at(3.5, 0.5), at(5, 1)};
  CrossingPath x;
  x.corners = {{1, 1}, {2, 0}, {3, 1}, {4, 0}, {5, 1}};
  const auto scs = shortcut_paths(x, tess);
  const Shortcut* sc = nullptr;
  for (const Shortcut& s : scs)
    if (s.cell == Cell{0, 2}) sc = &s;
  REQUIRE(sc != nullptr);

  auto base = [&](double mid) {
    WeightMap w(tess);
    for (const Cell& c : tess.cells()) w.set(c, 7.0);
    w.set({0, 1}, 1.0);
    w.set({0, 3}, 1.0);
    w.set({0, 2}, mid);
    return w;
  };
  const WeightMap down = equalize_shortcut_weights(base(3.0), sp, *sc);
  CHECK(down.value({0, 2}) == doctest::Approx(2.0));
  CHECK(down.value({0, 1}) == 1.0);
  CHECK(down.value({1, 2}) == kInf);
  CHECK(equalize_shortcut_weights(base(1.0), sp, *sc).value({0, 2}) == doctest::Approx(2.0));
  CHECK(equalize_shortcut_weights(base(2.0), sp, *sc) == equalize_shortcut_weights(base(2.0), sp, *sc));
  CHECK(equalize_shortcut_weights(base(2.0), sp, *sc).value({0, 2}) == 2.0);

  WeightMap holes = base(3.0);
  holes.set({0, 3}, Weight::infinite());
  try {
    equalize_shortcut_weights(holes, sp, *sc);
    FAIL("infinite neighbour accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kInfiniteNeighbor);
  }
}

TEST_CASE("decompositions of oracle paths") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Instance inst = seed % 4 == 0 ? gen_two_weight_maze(6, 7, seed, 0.2)
                                        : gen_random(6, 7, seed, 0.1, 10.0, 0.1);
    const RatioReport r = ratio_report(inst.weights, inst.source, inst.target);
    CAPTURE(seed);
    CHECK(r.analysis_error.empty());
    double prev_sp = -1, prev_x = -1;
    for (const CoincidencePoint& u : r.decomposition.points) {
      CHECK(u.sp_param >= prev_sp);
      CHECK(u.x_param >= prev_x);
      prev_sp = u.sp_param;
      prev_x = u.x_param;
    }
    std::vector<std::pair<double, double>> parts;
    for (const PolygonRatio& p : r.polygons) {
      CHECK(p.type.k >= 1);
      CHECK(p.type.k <= 6);
      if (p.type.k != 2) CHECK(p.bound_ok);
      if (p.type.k == 2) CHECK(p.metrics.c == doctest::Approx(law_of_cosines_dist(p.metrics.a, p.metrics.b)));
      if (p.sp_cost > 0) parts.emplace_back(p.x_cost, p.sp_cost);
    }
    if (!parts.empty()) CHECK(cost_ratio(r.x_cost, r.sp_cost) <= mediant_upper_bound(parts) + 1e-9);
    // histogram counts the polygons
    int total = 0;
    for (int h : r.histogram) total += h;
    CHECK(total == static_cast<int>(r.polygons.size()));
  }
}

TEST_CASE("ratio report basics") {
  const Instance strip = gen_strip(5);
  const RatioReport r = ratio_report(strip.weights, strip.source, strip.target);
  CHECK(r.sgp_cost == doctest::Approx(20.0));
  CHECK(r.svp_cost == doctest::Approx(10 * kSqrt3));
  CHECK(r.sp_cost == doctest::Approx(10 * kSqrt3).epsilon(1e-6));
  CHECK(r.sgp_sp == doctest::Approx(2 / kSqrt3).epsilon(1e-6));
  CHECK(r.svp_sp == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.sgp_svp == doctest::Approx(2 / kSqrt3));

  const RatioReport z = ratio_report(strip.weights, strip.source, strip.source);
  CHECK(z.sgp_cost == 0.0);
  CHECK(z.sp_cost == 0.0);
  CHECK(z.sgp_sp == 1.0);
  CHECK(z.svp_sp == 1.0);
  CHECK(z.sgp_svp == 1.0);

  const Instance rnd = gen_random(7, 7, 3, 0.1, 10.0, 0.1);
  const RatioReport a = ratio_report(rnd.weights, rnd.source, rnd.target);
  const RatioReport b = ratio_report(rnd.weights, rnd.source, rnd.target);
  CHECK(a.sp_cost == b.sp_cost);
  CHECK(a.crossing.corners == b.crossing.corners);
  CHECK(a.histogram == b.histogram);
}

TEST_CASE("anomaly search edge cases") {
  const AnomalyResult one = search_p2_anomaly(7, 1, 3);
  CHECK(one.trials == 1);
  CHECK(one.best.has_value());
  CHECK_THROWS_AS(search_p2_anomaly(7, 0, 3), Error);

  // uniform weights: the grid path stays within the bound even where the
  // crossing path zigzags through a chain of two-edge polygons
  const Instance uni = gen_random(7, 7, 50, 1.0, 1.0, 0.0);
  const RatioReport r = ratio_report(uni.weights, uni.source, uni.target);
  CHECK(r.sgp_sp <= kTightBound + 1e-9);
  CHECK(r.x_cost / r.sp_cost > 1.5);
  CHECK(r.histogram[1] >= 5);
}
