#pragma once
// Command-line front end. Exit codes: 0 ok, 1 usage or input error,
// 2 unreachable target, 3 invariant violation found by `verify`.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trigrid/analysis.hpp"
#include "trigrid/instances.hpp"

namespace trigrid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnreachable = 2;
inline constexpr int kExitViolation = 3;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string csv_header();
std::string csv_row(const std::string& label, const RatioReport& r, double ms);

// Instance number `trial` of the verify suites: three random weighted grids
// for every {1, inf} maze, sizes between 2x2 and 12x12.
Instance verify_instance(std::uint64_t seed, int trial);

struct VerifyOutcome {
  int trials = 0;
  int violations = 0;
  int skipped = 0;  // checks that could not be applied (e.g. P2 cells with no finite neighbour)
  std::vector<std::string> messages;
};

// suite: bounds, polygons or oracle. Results do not depend on `jobs`.
VerifyOutcome run_verify(const std::string& suite, int trials, std::uint64_t seed, int jobs);

}  // namespace trigrid::cli
