#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "trigrid/cli.hpp"
#include "trigrid/instances.hpp"

using namespace trigrid;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "trigrid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "trigrid_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream in(line);
  for (std::string f; std::getline(in, f, sep);) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("generate and solve a strip") {
  const std::string file = (scratch() / "strip5.tri").string();
  REQUIRE(run({"generate", "strip", "--k", "5", "-o", file}).code == cli::kExitOk);
  CHECK(load_instance(file).weights.finite_count() == 10);

  const Run sgp = run({"solve", file, "--method", "sgp"});
  CHECK(sgp.code == cli::kExitOk);
  CHECK(first_line(sgp.out) == "20.000000000");
  const Run sp = run({"solve", file, "--method", "sp", "--rel-tol", "1e-6"});
  CHECK(sp.code == cli::kExitOk);
  CHECK(std::stod(first_line(sp.out)) == doctest::Approx(17.320508076).epsilon(1e-7));
  // polyline lines follow the cost
  CHECK(split(sp.out, '\n').size() >= 3);
}

TEST_CASE("exit codes") {
  CHECK(run({"solve", (scratch() / "missing.tri").string()}).code == cli::kExitUsage);
  CHECK(run({"generate", "strip", "--k", "0"}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({}).code == cli::kExitUsage);

  const std::string walled = (scratch() / "walled.tri").string();
  {
    std::ofstream f(walled);
    f << "TRIGRID 1\nROWS 1 COLS 5\nWEIGHTS\n1 inf inf inf 1\nSOURCE 0 0\nTARGET 6 0\n";
  }
  const Run r = run({"solve", walled});
  CHECK(r.code == cli::kExitUnreachable);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("ratio rows") {
  const std::string file = (scratch() / "strip5r.tri").string();
  REQUIRE(run({"generate", "strip", "--k", "5", "-o", file}).code == 0);
  const Run r = run({"ratio", file, "--header"});
  REQUIRE(r.code == cli::kExitOk);
  const auto lines = split(r.out, '\n');
  REQUIRE(lines.size() == 2);
  const auto head = split(lines[0], ',');
  const auto row = split(lines[1], ',');
  REQUIRE(head.size() == row.size());
  auto field = [&](const std::string& name) {
    for (size_t k = 0; k < head.size(); ++k)
      if (head[k] == name) return row[k];
    FAIL("no column " << name);
    return std::string();
  };
  CHECK(std::stod(field("sgp_sp")) == doctest::Approx(1.154700538).epsilon(1e-6));
  CHECK(std::stod(field("svp_sp")) == doctest::Approx(1.0).epsilon(1e-6));

  const std::string same = (scratch() / "same.tri").string();
  {
    std::ofstream f(same);
    f << "TRIGRID 1\nROWS 1 COLS 1\nWEIGHTS\n2\nSOURCE 0 0\nTARGET 0 0\n";
  }
  const Run z = run({"ratio", same, "--header"});
  REQUIRE(z.code == 0);
  const auto zl = split(z.out, '\n');
  const auto zh = split(zl[0], ','), zr = split(zl[1], ',');
  for (size_t k = 0; k < zh.size(); ++k)
    if (zh[k] == "sgp_sp" || zh[k] == "svp_sp" || zh[k] == "sgp_svp") CHECK(std::stod(zr[k]) == 1.0);

  // same input, same bytes
  CHECK(run({"ratio", file}).out == run({"ratio", file}).out);
}

TEST_CASE("generate is deterministic") {
  const Run a = run({"generate", "random", "--seed", "1"});
  const Run b = run({"generate", "random", "--seed", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());
  CHECK(run({"generate", "maze", "--seed", "1", "--rows", "4", "--cols", "5"}).code == 0);
}

TEST_CASE("verify suites") {
  const Run b = run({"verify", "bounds", "--trials", "40", "--seed", "7"});
  CHECK(b.code == cli::kExitOk);
  CHECK(run({"verify", "polygons", "--trials", "30", "--seed", "3"}).code == cli::kExitOk);
  CHECK(run({"verify", "oracle", "--trials", "10", "--seed", "3"}).code == cli::kExitOk);

  const auto one = cli::run_verify("bounds", 24, 7, 1);
  const auto three = cli::run_verify("bounds", 24, 7, 3);
  CHECK(one.violations == three.violations);
  CHECK(one.messages == three.messages);
}
