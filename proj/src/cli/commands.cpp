#include "trigrid/cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "trigrid/error.hpp"
#include "trigrid/grid_paths.hpp"
#include "trigrid/wrp_oracle.hpp"

namespace trigrid::cli {

namespace {

std::string num(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  f << text;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(trial);
}

struct TrialResult {
  int violations = 0;
  int skipped = 0;
  std::vector<std::string> messages;

  void fail(const std::string& label, const std::string& what) {
    ++violations;
    messages.push_back(label + ": " + what);
  }
};

constexpr double kTol = 1e-9;

TrialResult check_bounds(const Instance& inst) {
  TrialResult out;
  const auto sgp = shortest_grid_path(inst.source, inst.target, inst.weights);
  const auto svp = shortest_vertex_path(inst.source, inst.target, inst.weights);
  const auto sp = refine_until(inst.source, inst.target, inst.weights);
  const double a = sgp.path.cost, b = svp.path.cost, c = sp.path.cost;
  if (c > b + kTol) out.fail(inst.label, "oracle " + num(c) + " above SVP " + num(b));
  if (b > a + kTol) out.fail(inst.label, "SVP " + num(b) + " above SGP " + num(a));
  const double bound = kTightBound + kTol;
  if (cost_ratio(a, c) > bound) out.fail(inst.label, "SGP/SP " + num(cost_ratio(a, c)));
  if (cost_ratio(b, c) > bound) out.fail(inst.label, "SVP/SP " + num(cost_ratio(b, c)));
  if (cost_ratio(a, b) > bound) out.fail(inst.label, "SGP/SVP " + num(cost_ratio(a, b)));
  return out;
}

TrialResult check_polygons(const Instance& inst) {
  TrialResult out;
  const RatioReport r = ratio_report(inst.weights, inst.source, inst.target);
  if (!r.analysis_error.empty()) {
    out.fail(inst.label, r.analysis_error);
    return out;
  }
  if (!is_grid_walk(r.crossing.corners)) out.fail(inst.label, "crossing path is not a grid walk");
  if (r.sgp_cost > r.x_cost + kTol) out.fail(inst.label, "SGP above crossing path");
  if (cost_ratio(r.x_cost, r.sp_cost) > r.max_poly_ratio + kTol) {
    out.fail(inst.label, "crossing path ratio above the largest polygon ratio");
  }
  for (const PolygonRatio& p : r.polygons) {
    if (p.type.k != 2) {
      if (p.ratio > kTightBound + kTol) {
        out.fail(inst.label, "P" + std::to_string(p.type.k) + " ratio " + num(p.ratio));
      }
      continue;
    }
    if (!p.equalized_ratio) {
      ++out.skipped;
      continue;
    }
    if (*p.equalized_ratio > kTightBound + kTol) {
      out.fail(inst.label, "equalized P2 ratio " + num(*p.equalized_ratio));
    }
  }
  return out;
}

TrialResult check_oracle(const Instance& inst) {
  TrialResult out;
  double prev = kInf;
  for (int level = 0; level <= 5; ++level) {
    const double c = approx_shortest_path(inst.source, inst.target, inst.weights, SteinerLevel{level}).path.cost;
    if (c > prev + kTol * std::max(1.0, prev)) {
      out.fail(inst.label, "level " + std::to_string(level) + " cost " + num(c) + " above level " +
                               std::to_string(level - 1) + " cost " + num(prev));
    }
    prev = c;
  }
  return out;
}

int run_solve(const std::string& file, const std::string& method, int level, double rel_tol, int max_level,
              const std::string& svg, std::ostream& out) {
  const Instance inst = load_instance(file);
  PathResult path;
  if (method == "sgp") {
    path = shortest_grid_path(inst.source, inst.target, inst.weights).path;
  } else if (method == "svp") {
    path = shortest_vertex_path(inst.source, inst.target, inst.weights).path;
  } else if (level >= 0) {
    path = approx_shortest_path(inst.source, inst.target, inst.weights, SteinerLevel{level}).path;
  } else {
    path = refine_until(inst.source, inst.target, inst.weights, rel_tol, max_level).path;
  }
  out << num(path.cost) << "\n";
  for (const Point2& p : path.polyline) out << num(p.x) << ' ' << num(p.y) << "\n";
  if (!svg.empty()) write_file(svg, export_svg(inst, {{method, path.polyline}}));
  return kExitOk;
}

int run_ratio(const std::vector<std::string>& files, bool header, bool timing, double rel_tol, int max_level,
              const std::string& svg, std::ostream& out) {
  if (header) out << csv_header() << "\n";
  for (const std::string& file : files) {
    const Instance inst = load_instance(file);
    const auto t0 = std::chrono::steady_clock::now();
    const RatioReport r = ratio_report(inst.weights, inst.source, inst.target, OracleConfig{rel_tol, max_level});
    const double ms =
        timing ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() : 0.0;
    out << csv_row(inst.label, r, ms) << "\n";
    if (!svg.empty() && files.size() == 1) {
      write_file(svg, export_svg(inst, {{"sgp", r.sgp.path.polyline},
                                        {"svp", r.svp.path.polyline},
                                        {"x", r.crossing.polyline()},
                                        {"sp", r.sp.polyline}}));
    }
  }
  return kExitOk;
}

}  // namespace

std::string csv_header() {
  return "label,sgp,svp,sp,sgp_sp,svp_sp,sgp_svp,x_cost,max_poly_ratio,p1,p2,p3,p4,p5,p6,level,ms";
}

std::string csv_row(const std::string& label, const RatioReport& r, double ms) {
  std::ostringstream row;
  row << label << ',' << num(r.sgp_cost) << ',' << num(r.svp_cost) << ',' << num(r.sp_cost) << ','
      << num(r.sgp_sp) << ',' << num(r.svp_sp) << ',' << num(r.sgp_svp) << ',' << num(r.x_cost) << ','
      << num(r.max_poly_ratio);
  for (int k : r.histogram) row << ',' << k;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  row << ',' << r.level.level << ',' << buf;
  return row.str();
}

Instance verify_instance(std::uint64_t seed, int trial) {
  const std::uint64_t base = trial_seed(seed, trial);
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t s = base + (attempt << 40);
    const int rows = 2 + static_cast<int>(s % 11);
    const int cols = 2 + static_cast<int>((s / 11) % 11);
    try {
      if (trial % 4 == 3) return gen_two_weight_maze(rows, cols, s, 0.2);
      return gen_random(rows, cols, s, 0.1, 10.0, 0.1);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kUnreachable || attempt > 50) throw;
    }
  }
}

VerifyOutcome run_verify(const std::string& suite, int trials, std::uint64_t seed, int jobs) {
  std::function<TrialResult(const Instance&)> check;
  if (suite == "bounds") check = check_bounds;
  else if (suite == "polygons") check = check_polygons;
  else if (suite == "oracle") check = check_oracle;
  else throw Error(ErrorKind::kInvalidArgument, "unknown suite '" + suite + "'");
  if (trials < 1) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 1");
  jobs = std::max(1, std::min(jobs, trials));

  std::vector<TrialResult> results(trials);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < trials; k = next++) {
      try {
        results[k] = check(verify_instance(seed, k));
      } catch (const Error& e) {
        results[k].fail("trial " + std::to_string(k), std::string(to_string(e.kind())) + ": " + e.what());
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  VerifyOutcome out;
  out.trials = trials;
  for (int k = 0; k < trials; ++k) {
    out.violations += results[k].violations;
    out.skipped += results[k].skipped;
    for (auto& m : results[k].messages) out.messages.push_back("trial " + std::to_string(k) + " " + m);
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid, vertex and approximate shortest paths on weighted triangular tessellations"};
  app.require_subcommand(1);

  std::string file, method = "sp", svg;
  int level = -1;
  double rel_tol = 1e-6;
  int max_level = 7;
  auto* solve = app.add_subcommand("solve", "Solve one instance and print cost and polyline");
  solve->add_option("file", file, "Instance file")->required();
  solve->add_option("-m,--method", method, "sgp, svp or sp")->check(CLI::IsMember({"sgp", "svp", "sp"}));
  solve->add_option("--level", level, "Fixed Steiner level for sp (default: refine)")->check(CLI::Range(0, kMaxSteinerLevel));
  solve->add_option("--rel-tol", rel_tol, "Refinement tolerance for sp");
  solve->add_option("--max-level", max_level, "Deepest Steiner level for sp")->check(CLI::Range(0, kMaxSteinerLevel));
  solve->add_option("--svg", svg, "Write an SVG picture");

  std::vector<std::string> files;
  bool header = false, timing = false;
  auto* ratio = app.add_subcommand("ratio", "Print one CSV report row per instance");
  ratio->add_option("files", files, "Instance files")->required();
  ratio->add_flag("--header", header, "Print the CSV header first");
  ratio->add_flag("--timing", timing, "Fill the ms column with wall time (otherwise 0)");
  ratio->add_option("--rel-tol", rel_tol, "Refinement tolerance");
  ratio->add_option("--max-level", max_level, "Deepest Steiner level")->check(CLI::Range(0, kMaxSteinerLevel));
  ratio->add_option("--svg", svg, "Write an SVG picture (single instance only)");

  std::string suite;
  int trials = 100, jobs = 1;
  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "Check invariants over generated instances");
  verify->add_option("suite", suite, "bounds, polygons or oracle")->required()->check(CLI::IsMember({"bounds", "polygons", "oracle"}));
  verify->add_option("--trials", trials, "Number of instances")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "Master seed");
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::string kind, out_file;
  int k = 1, rows = 8, cols = 8;
  double low = 0.1, high = 10.0, inf_prob = 0.1, wall_prob = 0.2;
  std::uint64_t gen_seed = 1;
  auto* generate = app.add_subcommand("generate", "Write a generated instance");
  generate->add_option("kind", kind, "strip, random or maze")->required()->check(CLI::IsMember({"strip", "random", "maze"}));
  generate->add_option("--k", k, "Strip height");
  generate->add_option("--rows", rows, "Rows");
  generate->add_option("--cols", cols, "Columns");
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--low", low, "Smallest weight");
  generate->add_option("--high", high, "Largest weight");
  generate->add_option("--inf-prob", inf_prob, "Probability of an infinite cell");
  generate->add_option("--wall-prob", wall_prob, "Probability of a wall cell (maze)");
  generate->add_option("-o,--output", out_file, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return run_solve(file, method, level, rel_tol, max_level, svg, out);
    if (*ratio) return run_ratio(files, header, timing, rel_tol, max_level, svg, out);
    if (*verify) {
      const VerifyOutcome v = run_verify(suite, trials, seed, jobs);
      for (const auto& m : v.messages) out << "violation " << m << "\n";
      out << suite << ": " << v.trials << " trials, " << v.violations << " violations";
      if (v.skipped) out << ", " << v.skipped << " checks not applicable";
      out << "\n";
      return v.violations == 0 ? kExitOk : kExitViolation;
    }
    if (*generate) {
      Instance inst = kind == "strip"    ? gen_strip(k)
                      : kind == "random" ? gen_random(rows, cols, gen_seed, low, high, inf_prob)
                                         : gen_two_weight_maze(rows, cols, gen_seed, wall_prob);
      const std::string text = serialize_instance(inst);
      if (out_file.empty()) out << text;
      else write_file(out_file, text);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kUnreachable ? kExitUnreachable : kExitUsage;
  }
  return kExitUsage;
}

}  // namespace trigrid::cli
