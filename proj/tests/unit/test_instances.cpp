#include <regex>

#include "doctest.h"
#include "trigrid/error.hpp"
#include "trigrid/grid_paths.hpp"
#include "trigrid/instances.hpp"
#include "trigrid/wrp_oracle.hpp"

using namespace trigrid;

namespace {

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (size_t at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

ErrorKind parse_kind(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("parsed: " << text);
  return ErrorKind::kParse;
}

}  // namespace

TEST_CASE("strip generator") {
  const Instance one = gen_strip(1);
  CHECK(one.weights.finite_count() == 2);
  CHECK(shortest_grid_path(one.source, one.target, one.weights).path.cost == doctest::Approx(4.0));
  CHECK(refine_until(one.source, one.target, one.weights).path.cost == doctest::Approx(2 * kSqrt3).epsilon(1e-9));
  const Instance five = gen_strip(5);
  CHECK(five.weights.finite_count() == 10);
  CHECK(five.offset_i == 2);
  CHECK(five.source == Corner{2, 0});
  CHECK(five.target == Corner{2, 10});
  CHECK_THROWS_AS(gen_strip(0), Error);
}

TEST_CASE("random generator") {
  const Instance a = gen_random(8, 9, 17, 0.1, 10.0, 0.2);
  const Instance b = gen_random(8, 9, 17, 0.1, 10.0, 0.2);
  CHECK(a.weights == b.weights);
  CHECK(a.source == b.source);
  CHECK(a.target == b.target);
  CHECK(serialize_instance(a) == serialize_instance(b));
  CHECK_FALSE(gen_random(8, 9, 18, 0.1, 10.0, 0.2).weights == a.weights);

  const Instance full = gen_random(5, 5, 3, 0.1, 10.0, 0.0);
  CHECK(full.weights.finite_count() == 25);
  for (const Cell& c : full.tessellation().cells()) {
    CHECK(full.weights.value(c) >= 0.1);
    CHECK(full.weights.value(c) <= 10.0);
  }
  const Instance unit = gen_random(4, 4, 3, 1.0, 1.0, 0.0);
  for (const Cell& c : unit.tessellation().cells()) CHECK(unit.weights.value(c) == 1.0);
  CHECK_THROWS_AS(gen_random(4, 4, 3, 0.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(gen_random(4, 4, 3, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(gen_random(0, 4, 3, 1.0, 1.0, 0.0), Error);
}

TEST_CASE("two weight maze") {
  const Instance open = gen_two_weight_maze(5, 6, 9, 0.0);
  for (const Cell& c : open.tessellation().cells()) CHECK(open.weights.value(c) == 1.0);
  const Instance a = gen_two_weight_maze(6, 6, 4, 0.3);
  const Instance b = gen_two_weight_maze(6, 6, 4, 0.3);
  CHECK(a.weights == b.weights);
  for (const Cell& c : a.tessellation().cells()) {
    const double v = a.weights.value(c);
    CHECK((v == 1.0 || v == kInf));
  }
  // endpoints are always connected
  CHECK_NOTHROW(shortest_grid_path(a.source, a.target, a.weights));
}

TEST_CASE("text format round trip") {
  const Instance a = gen_random(4, 5, 8, 0.1, 10.0, 0.3);
  const Instance b = parse_instance(serialize_instance(a));
  CHECK(a.weights == b.weights);
  CHECK(a.source == b.source);
  CHECK(a.target == b.target);

  const Instance c = parse_instance(
      "# comment\nTRIGRID 1\nROWS 1 COLS 2\nWEIGHTS\n1.5 inf  # trailing\nSOURCE 0 0\nTARGET 2 0\n");
  CHECK(c.weights.value({0, 0}) == 1.5);
  CHECK(c.weights.value({0, 1}) == kInf);
  CHECK(c.source == Corner{0, 0});
}

TEST_CASE("text format errors") {
  const std::string head = "TRIGRID 1\nROWS 1 COLS 2\nWEIGHTS\n";
  CHECK(parse_kind(head + "0 1\nSOURCE 0 0\nTARGET 2 0\n") == ErrorKind::kParse);
  CHECK(parse_kind(head + "-1 1\nSOURCE 0 0\nTARGET 2 0\n") == ErrorKind::kParse);
  CHECK(parse_kind(head + "nan 1\nSOURCE 0 0\nTARGET 2 0\n") == ErrorKind::kParse);
  CHECK(parse_kind(head + "1\nSOURCE 0 0\nTARGET 2 0\n") == ErrorKind::kParse);
  CHECK(parse_kind(head + "1 1\nSOURCE 1 0\nTARGET 2 0\n") == ErrorKind::kInvalidCorner);
  CHECK(parse_kind(head + "1 1\nSOURCE 0 0\nTARGET 20 0\n") == ErrorKind::kOutOfDomain);
  CHECK(parse_kind("TRIGRID 2\n") == ErrorKind::kParse);
  CHECK(parse_kind(head + "1 1\nSOURCE 0 0\n") == ErrorKind::kParse);
  try {
    parse_instance(head + "1 0\nSOURCE 0 0\nTARGET 2 0\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
}

TEST_CASE("svg export") {
  const Instance strip = gen_strip(1);
  const std::string bare = export_svg(strip, {});
  const bool starts_svg = bare.find("<svg") != std::string::npos;
  CHECK(starts_svg);
  CHECK(count(bare, "<polygon") == strip.tessellation().rows() * strip.tessellation().cols());
  CHECK(count(bare, "fill=\"none\"") == count(bare, "<polygon") - 2);
  CHECK(count(bare, "<polyline") == 0);
  CHECK(count(bare, "</svg>") == 1);

  const std::string drawn = export_svg(strip, {{"sp", {{2, 0}, {2, 2 * kSqrt3}}}});
  CHECK(count(drawn, "<polyline") == 1);
}
