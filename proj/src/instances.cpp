#include "trigrid/instances.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "trigrid/error.hpp"
#include "trigrid/grid_paths.hpp"

namespace trigrid {

namespace {

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Picks s != t joined by a finite route; throws after the retry budget.
void pick_endpoints(Instance& inst, std::mt19937_64& rng) {
  const std::vector<Corner> corners = inst.tessellation().corners();
  for (int attempt = 0; attempt < 200; ++attempt) {
    const Corner s = corners[rng() % corners.size()];
    const Corner t = corners[rng() % corners.size()];
    if (s == t) continue;
    try {
      shortest_grid_path(s, t, inst.weights);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kUnreachable) continue;
      throw;
    }
    inst.source = s;
    inst.target = t;
    return;
  }
  throw Error(ErrorKind::kUnreachable, "no mutually reachable corner pair found");
}

void check_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error(ErrorKind::kInvalidArgument, "rows and cols must be >= 1");
}

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, int line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) parse_error(line, "expected integer, got '" + tok + "'");
  return v;
}

std::string format_weight(double w) {
  if (std::isinf(w)) return "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, res.ptr);
}

}  // namespace

Instance gen_strip(int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "strip height k must be >= 1");
  const Tessellation tess(2 * k, 3);
  Instance inst{WeightMap(tess), Corner{2, 0}, Corner{2, 2 * k}, "strip-" + std::to_string(k), 2};
  for (int r = 0; r < 2 * k; ++r) inst.weights.set(Cell{r, 1}, 1.0);
  return inst;
}

Instance gen_random(int rows, int cols, std::uint64_t seed, double weight_low, double weight_high,
                    double inf_prob) {
  check_grid(rows, cols);
  if (!(weight_low > 0.0) || !(weight_high >= weight_low) || std::isinf(weight_high)) {
    throw Error(ErrorKind::kInvalidArgument, "need 0 < weight_low <= weight_high < inf");
  }
  if (!(inf_prob >= 0.0 && inf_prob < 1.0)) throw Error(ErrorKind::kInvalidArgument, "inf_prob must be in [0, 1)");
  const Tessellation tess(rows, cols);
  std::mt19937_64 rng(seed);
  Instance inst{WeightMap(tess), {}, {}, "", 0};
  const double lo = std::log(weight_low);
  const double hi = std::log(weight_high);
  for (const Cell& c : tess.cells()) {
    const double u = unit_double(rng);
    const double v = unit_double(rng);
    if (u < inf_prob) continue;
    inst.weights.set(c, weight_low == weight_high ? weight_low : std::exp(lo + v * (hi - lo)));
  }
  pick_endpoints(inst, rng);
  inst.label = "random-" + std::to_string(rows) + "x" + std::to_string(cols) + "-" + std::to_string(seed);
  return inst;
}

Instance gen_two_weight_maze(int rows, int cols, std::uint64_t seed, double wall_prob) {
  check_grid(rows, cols);
  if (!(wall_prob >= 0.0 && wall_prob < 1.0)) throw Error(ErrorKind::kInvalidArgument, "wall_prob must be in [0, 1)");
  const Tessellation tess(rows, cols);
  std::mt19937_64 rng(seed);
  Instance inst{WeightMap(tess), {}, {}, "", 0};
  for (const Cell& c : tess.cells()) {
    if (unit_double(rng) >= wall_prob) inst.weights.set(c, 1.0);
  }
  pick_endpoints(inst, rng);
  inst.label = "maze-" + std::to_string(rows) + "x" + std::to_string(cols) + "-" + std::to_string(seed);
  return inst;
}

Instance parse_instance(std::string_view text) {
  std::vector<std::pair<int, std::vector<std::string>>> lines;
  {
    std::istringstream in{std::string(text)};
    int no = 0;
    for (std::string line; std::getline(in, line);) {
      ++no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      auto toks = tokens(line);
      if (!toks.empty()) lines.emplace_back(no, std::move(toks));
    }
  }
  size_t at = 0;
  auto next = [&](const char* expect) -> const std::pair<int, std::vector<std::string>>& {
    if (at >= lines.size()) {
      const int last = lines.empty() ? 0 : lines.back().first;
      parse_error(last, std::string("unexpected end of input, expected ") + expect);
    }
    return lines[at++];
  };

  const auto& magic = next("TRIGRID 1");
  if (magic.second != std::vector<std::string>{"TRIGRID", "1"}) parse_error(magic.first, "expected 'TRIGRID 1'");

  const auto& dims = next("ROWS <r> COLS <c>");
  if (dims.second.size() != 4 || dims.second[0] != "ROWS" || dims.second[2] != "COLS") {
    parse_error(dims.first, "expected 'ROWS <r> COLS <c>'");
  }
  const int rows = parse_int(dims.second[1], dims.first);
  const int cols = parse_int(dims.second[3], dims.first);
  if (rows < 1 || cols < 1) parse_error(dims.first, "rows and cols must be >= 1");

  const auto& wl = next("WEIGHTS");
  if (wl.second != std::vector<std::string>{"WEIGHTS"}) parse_error(wl.first, "expected 'WEIGHTS'");

  const Tessellation tess(rows, cols);
  Instance inst{WeightMap(tess), {}, {}, "", 0};
  for (int r = 0; r < rows; ++r) {
    const auto& row = next("a row of weights");
    if (static_cast<int>(row.second.size()) != cols) {
      parse_error(row.first, "expected " + std::to_string(cols) + " weights, got " + std::to_string(row.second.size()));
    }
    for (int c = 0; c < cols; ++c) {
      const std::string& tok = row.second[c];
      if (tok == "inf") continue;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || ptr != tok.data() + tok.size() || std::isnan(v)) {
        parse_error(row.first, "bad weight '" + tok + "'");
      }
      if (!(v > 0.0)) parse_error(row.first, "weights must be positive, got '" + tok + "'");
      if (std::isinf(v)) continue;
      inst.weights.set(Cell{r, c}, v);
    }
  }

  auto corner_line = [&](const char* key) {
    const auto& l = next(key);
    if (l.second.size() != 3 || l.second[0] != key) parse_error(l.first, std::string("expected '") + key + " <i> <j>'");
    const Corner c{parse_int(l.second[1], l.first), parse_int(l.second[2], l.first)};
    if (!c.valid()) {
      throw Error(ErrorKind::kInvalidCorner, "line " + std::to_string(l.first) + ": corner violates parity");
    }
    if (!tess.contains(c)) {
      throw Error(ErrorKind::kOutOfDomain, "line " + std::to_string(l.first) + ": corner outside the domain");
    }
    return c;
  };
  inst.source = corner_line("SOURCE");
  inst.target = corner_line("TARGET");
  if (at != lines.size()) parse_error(lines[at].first, "trailing content");
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  const Tessellation& tess = inst.tessellation();
  std::ostringstream out;
  out << "TRIGRID 1\n";
  out << "ROWS " << tess.rows() << " COLS " << tess.cols() << "\n";
  out << "WEIGHTS\n";
  for (int r = 0; r < tess.rows(); ++r) {
    for (int c = 0; c < tess.cols(); ++c) {
      if (c) out << ' ';
      out << format_weight(inst.weights.value(Cell{r, c}));
    }
    out << "\n";
  }
  out << "SOURCE " << inst.source.i << ' ' << inst.source.j << "\n";
  out << "TARGET " << inst.target.i << ' ' << inst.target.j << "\n";
  return out.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Instance inst = parse_instance(buf.str());
  inst.label = path;
  return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "cannot write " + path);
  out << serialize_instance(inst);
  if (!out) throw Error(ErrorKind::kInvalidArgument, "write failed for " + path);
}

}  // namespace trigrid
