#include "flipcenter/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "flipcenter/errors.hpp"
#include "flipcenter/parallel.hpp"

namespace flipcenter {

using nlohmann::json;

bool operator==(const Instance& a, const Instance& b) {
  if (a.uid != b.uid || a.meta != b.meta) return false;
  if (!a.points != !b.points) return false;
  if (a.points && !(*a.points == *b.points)) return false;
  if (a.triangulations.size() != b.triangulations.size()) return false;
  for (std::size_t i = 0; i < a.triangulations.size(); ++i) {
    const auto x = a.triangulations[i].edges();
    const auto y = b.triangulations[i].edges();
    if (!std::equal(x.begin(), x.end(), y.begin(), y.end())) return false;
  }
  return true;
}

namespace {

constexpr const char* kInstanceType = "flipcenter_instance";
constexpr const char* kSolutionType = "flipcenter_solution";

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto end = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + end, '\n'));
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError("", line, what);
  }
}

const json& field(const json& obj, const std::string& name, const std::string& path) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw ParseError(path + name, 0, "missing field");
  return *it;
}

std::string string_field(const json& obj, const std::string& name, const std::string& path) {
  const auto& v = field(obj, name, path);
  if (!v.is_string()) throw ParseError(path + name, 0, "expected a string");
  return v.get<std::string>();
}

std::int64_t to_int(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > static_cast<std::uint64_t>(INT64_MAX)) throw ParseError(path, 0, "integer out of range");
    return static_cast<std::int64_t>(u);
  }
  if (!v.is_number_integer()) throw ParseError(path, 0, "expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t to_uint(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  const auto i = to_int(v, path);
  if (i < 0) throw ParseError(path, 0, "expected a nonnegative integer");
  return static_cast<std::uint64_t>(i);
}

const json& array_field(const json& obj, const std::string& name, const std::string& path) {
  const auto& v = field(obj, name, path);
  if (!v.is_array()) throw ParseError(path + name, 0, "expected an array");
  return v;
}

std::vector<Edge> parse_edges(const json& arr, const std::string& path, std::size_t n) {
  if (!arr.is_array()) throw ParseError(path, 0, "expected an array of index pairs");
  std::vector<Edge> out;
  out.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto where = path + "[" + std::to_string(k) + "]";
    const auto& pair = arr[k];
    if (!pair.is_array() || pair.size() != 2) throw ParseError(where, 0, "expected a pair of point indices");
    const auto u = to_uint(pair[0], where + "[0]");
    const auto v = to_uint(pair[1], where + "[1]");
    if (u >= n || v >= n) {
      throw ParseError(where, 0,
                       "point index " + std::to_string(std::max(u, v)) + " out of range (n = " + std::to_string(n) + ")");
    }
    out.emplace_back(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return out;
}

std::vector<std::uint64_t> parse_uints(const json& arr, const std::string& path) {
  if (!arr.is_array()) throw ParseError(path, 0, "expected an array of integers");
  std::vector<std::uint64_t> out;
  for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(to_uint(arr[k], path + "[" + std::to_string(k) + "]"));
  return out;
}

GeneratorInfo parse_meta(const json& m) {
  const std::string path = "meta.";
  if (!m.is_object()) throw ParseError("meta", 0, "expected an object");
  GeneratorInfo g;
  if (m.contains("kind")) g.kind = string_field(m, "kind", path);
  if (m.contains("seed")) g.seed = to_uint(m["seed"], path + "seed");
  if (m.contains("coordinate_range")) g.coordinate_range = to_int(m["coordinate_range"], path + "coordinate_range");
  if (m.contains("num_steps")) g.num_steps = to_uint(m["num_steps"], path + "num_steps");
  if (m.contains("prob")) {
    if (!m["prob"].is_number()) throw ParseError(path + "prob", 0, "expected a number");
    g.prob = m["prob"].get<double>();
  }
  if (m.contains("center_seed")) g.center_seed = to_uint(m["center_seed"], path + "center_seed");
  if (m.contains("center")) g.center = parse_edges(m["center"], path + "center", UINT32_MAX);
  if (m.contains("center_objective")) g.center_objective = to_uint(m["center_objective"], path + "center_objective");
  if (m.contains("center_objective_exact")) {
    if (!m["center_objective_exact"].is_boolean()) throw ParseError(path + "center_objective_exact", 0, "expected a boolean");
    g.center_objective_exact = m["center_objective_exact"].get<bool>();
  }
  if (m.contains("input_seeds")) g.input_seeds = parse_uints(m["input_seeds"], path + "input_seeds");
  return g;
}

// Byte-stable output: fixed key order, one input per line, sorted edges.
void put_edges(std::ostringstream& out, std::span<const Edge> edges) {
  out << '[';
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) out << ", ";
    out << '[' << edges[i].u << ", " << edges[i].v << ']';
  }
  out << ']';
}

template <typename T>
void put_numbers(std::ostringstream& out, const std::vector<T>& values) {
  out << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << values[i];
  }
  out << ']';
}

std::string quoted(const std::string& s) { return json(s).dump(); }

void put_meta(std::ostringstream& out, const GeneratorInfo& g) {
  const GeneratorInfo d;
  std::vector<std::string> lines;
  auto add = [&](const std::string& key, const std::string& value) { lines.push_back(quoted(key) + ": " + value); };
  if (g.kind != d.kind) add("kind", quoted(g.kind));
  if (g.seed != d.seed) add("seed", std::to_string(g.seed));
  if (g.coordinate_range != d.coordinate_range) add("coordinate_range", std::to_string(g.coordinate_range));
  if (g.num_steps != d.num_steps) add("num_steps", std::to_string(g.num_steps));
  if (g.prob != d.prob) add("prob", json(g.prob).dump());
  if (g.center_seed != d.center_seed) add("center_seed", std::to_string(g.center_seed));
  if (!g.center.empty()) {
    auto edges = g.center;
    std::sort(edges.begin(), edges.end());
    std::ostringstream e;
    put_edges(e, edges);
    add("center", e.str());
  }
  if (g.center_objective) add("center_objective", std::to_string(*g.center_objective));
  if (g.center_objective_exact) add("center_objective_exact", "true");
  if (!g.input_seeds.empty()) {
    std::ostringstream s;
    put_numbers(s, g.input_seeds);
    add("input_seeds", s.str());
  }
  out << "{";
  for (std::size_t i = 0; i < lines.size(); ++i) out << (i ? ",\n    " : "\n    ") << lines[i];
  out << (lines.empty() ? "}" : "\n  }");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return buf.str();
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const json root = parse_text(text);
  if (!root.is_object()) throw ParseError("", 0, "expected a JSON object at top level");
  if (root.contains("content_type") && !root["content_type"].is_string()) {
    throw ParseError("content_type", 0, "expected a string");
  }
  Instance inst;
  inst.uid = string_field(root, "instance_uid", "");
  const auto& xs = array_field(root, "points_x", "");
  const auto& ys = array_field(root, "points_y", "");
  if (xs.size() != ys.size()) {
    throw ParseError("points_y", 0,
                     "length " + std::to_string(ys.size()) + " differs from points_x length " + std::to_string(xs.size()));
  }
  std::vector<Point> pts;
  pts.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    pts.push_back({to_int(xs[i], "points_x[" + std::to_string(i) + "]"), to_int(ys[i], "points_y[" + std::to_string(i) + "]")});
  }
  const auto& tris = array_field(root, "triangulations", "");
  if (tris.empty()) throw ParseError("triangulations", 0, "at least one triangulation is required");
  std::vector<std::vector<Edge>> edge_sets;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    edge_sets.push_back(parse_edges(tris[i], "triangulations[" + std::to_string(i) + "]", pts.size()));
  }
  if (root.contains("meta") && !root["meta"].is_null()) inst.meta = parse_meta(root["meta"]);

  try {
    inst.points = make_point_set(std::move(pts));
  } catch (const DuplicatePoint& e) {
    throw ValidationError({std::string("points: ") + e.what()});
  } catch (const DegenerateInput& e) {
    throw ValidationError({std::string("points: ") + e.what()});
  }
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < edge_sets.size(); ++i) {
    for (const auto& v : triangulation_violations(*inst.points, edge_sets[i])) {
      problems.push_back("triangulation " + std::to_string(i) + ": " + v);
    }
  }
  if (!problems.empty()) throw ValidationError(std::move(problems));
  for (auto& edges : edge_sets) inst.triangulations.push_back(Triangulation::build(inst.points, std::move(edges)));
  return inst;
}

std::string format_instance(const Instance& instance) {
  std::ostringstream out;
  const auto pts = instance.points ? instance.points->points() : std::span<const Point>{};
  out << "{\n  \"content_type\": " << quoted(kInstanceType) << ",\n";
  out << "  \"instance_uid\": " << quoted(instance.uid) << ",\n";
  out << "  \"points_x\": [";
  for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? ", " : "") << pts[i].x;
  out << "],\n  \"points_y\": [";
  for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? ", " : "") << pts[i].y;
  out << "],\n  \"triangulations\": [";
  for (std::size_t i = 0; i < instance.triangulations.size(); ++i) {
    out << (i ? ",\n    " : "\n    ");
    put_edges(out, instance.triangulations[i].edges());
  }
  out << (instance.triangulations.empty() ? "]" : "\n  ]");
  if (instance.meta) {
    out << ",\n  \"meta\": ";
    put_meta(out, *instance.meta);
  }
  out << "\n}\n";
  return out.str();
}

Instance read_instance(const std::filesystem::path& path) { return parse_instance(read_text(path)); }

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_file_atomic(path, format_instance(instance));
}

Solution parse_solution(const std::string& text) {
  const json root = parse_text(text);
  if (!root.is_object()) throw ParseError("", 0, "expected a JSON object at top level");
  Solution sol;
  sol.instance_uid = string_field(root, "instance_uid", "");
  sol.center = parse_edges(array_field(root, "triangulation", ""), "triangulation", UINT32_MAX);
  if (root.contains("objective") && !root["objective"].is_null()) {
    const auto& o = root["objective"];
    const std::string path = "objective.";
    if (!o.is_object()) throw ParseError("objective", 0, "expected an object");
    ObjectiveSummary s;
    if (o.contains("mode")) s.mode = string_field(o, "mode", path);
    if (o.contains("total_lower")) s.total_lower = to_uint(o["total_lower"], path + "total_lower");
    if (o.contains("total_upper")) s.total_upper = to_uint(o["total_upper"], path + "total_upper");
    if (o.contains("per_input_lower")) s.per_input_lower = parse_uints(o["per_input_lower"], path + "per_input_lower");
    if (o.contains("per_input_upper")) s.per_input_upper = parse_uints(o["per_input_upper"], path + "per_input_upper");
    sol.objective = std::move(s);
  }
  return sol;
}

std::string format_solution(const Solution& solution) {
  std::ostringstream out;
  auto edges = solution.center;
  std::sort(edges.begin(), edges.end());
  out << "{\n  \"content_type\": " << quoted(kSolutionType) << ",\n";
  out << "  \"instance_uid\": " << quoted(solution.instance_uid) << ",\n";
  out << "  \"triangulation\": ";
  put_edges(out, edges);
  if (solution.objective) {
    const auto& o = *solution.objective;
    out << ",\n  \"objective\": {\n";
    out << "    \"mode\": " << quoted(o.mode) << ",\n";
    out << "    \"total_lower\": " << o.total_lower << ",\n";
    out << "    \"total_upper\": " << o.total_upper << ",\n";
    out << "    \"per_input_lower\": ";
    put_numbers(out, o.per_input_lower);
    out << ",\n    \"per_input_upper\": ";
    put_numbers(out, o.per_input_upper);
    out << "\n  }";
  }
  out << "\n}\n";
  return out.str();
}

Solution read_solution(const std::filesystem::path& path) { return parse_solution(read_text(path)); }

void write_solution(const Solution& solution, const std::filesystem::path& path) {
  write_file_atomic(path, format_solution(solution));
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw IoError("cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace " + path.string());
  }
}

VerificationReport verify_solution(const Instance& instance, const Solution& solution, const VerifyOptions& options) {
  VerificationReport report;
  report.expected_uid = instance.uid;
  report.found_uid = solution.instance_uid;
  report.uid_matches = instance.uid == solution.instance_uid;
  if (!report.uid_matches) {
    report.violations.push_back("instance_uid mismatch: expected " + quoted(instance.uid) + ", found " +
                                quoted(solution.instance_uid));
  }
  const auto center_problems = triangulation_violations(*instance.points, solution.center);
  report.violations.insert(report.violations.end(), center_problems.begin(), center_problems.end());
  if (!center_problems.empty()) return report;

  const auto center = Triangulation::build(instance.points, solution.center);
  const auto straight = degenerate_quad_edges(center);
  if (!straight.empty()) {
    std::string names;
    for (std::size_t k = 0; k < straight.size() && k < 10; ++k) {
      names += (k ? ", (" : "(") + std::to_string(straight[k].u) + ", " + std::to_string(straight[k].v) + ")";
    }
    if (straight.size() > 10) names += ", ...";
    report.notes.push_back(std::to_string(straight.size()) +
                           " center edge(s) lie in a quadrilateral with a straight corner and count as not flippable: " +
                           names);
  }
  const std::size_t m = instance.triangulations.size();
  const bool exact = instance.size() <= options.exact_threshold;
  report.per_input.resize(m);
  std::vector<std::string> replay_errors(m);
  parallel_for(m, options.threads, [&](std::size_t i) {
    const auto& target = instance.triangulations[i];
    auto d = heuristic_distance(center, target, derive_seed(options.seed, i), options.restarts);
    if (exact) {
      try {
        d = exact_distance(center, target);
      } catch (const BudgetExhausted& e) {
        d = e.partial();
      }
    }
    try {
      if (!(replay(center, d.witness) == target)) replay_errors[i] = "witness does not reach the input";
    } catch (const InvalidStep& e) {
      replay_errors[i] = e.what();
    }
    report.per_input[i] = std::move(d);
  });
  for (std::size_t i = 0; i < m; ++i) {
    if (!replay_errors[i].empty()) report.violations.push_back("input " + std::to_string(i) + ": " + replay_errors[i]);
  }
  report.exact = true;
  for (const auto& d : report.per_input) {
    report.objective_lower += d.lower;
    report.objective_upper += d.upper;
    report.exact = report.exact && d.exact;
  }
  if (solution.objective) {
    const auto& claim = *solution.objective;
    if (claim.total_upper < report.objective_lower) {
      report.notes.push_back("claimed total " + std::to_string(claim.total_upper) + " is below the proven lower bound " +
                             std::to_string(report.objective_lower));
    } else if (claim.total_upper != report.objective_upper) {
      report.notes.push_back("claimed total " + std::to_string(claim.total_upper) + " differs from the recomputed upper bound " +
                             std::to_string(report.objective_upper));
    }
  }
  report.accepted = report.violations.empty();
  return report;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "instance: " << expected_uid << "\n";
  out << "status: " << (accepted ? "ACCEPTED" : "REJECTED") << "\n";
  for (const auto& v : violations) out << "violation: " << v << "\n";
  if (!per_input.empty()) {
    out << "objective: " << objective_upper << (exact ? " (exact)" : "") << "\n";
    out << "lower bound: " << objective_lower << "\n";
    for (std::size_t i = 0; i < per_input.size(); ++i) {
      const auto& d = per_input[i];
      out << "input " << i << ": lower " << d.lower << " upper " << d.upper << (d.exact ? " exact" : "") << "\n";
    }
  }
  for (const auto& n : notes) out << "note: " << n << "\n";
  return out.str();
}

std::string VerificationReport::to_json() const {
  json j;
  j["accepted"] = accepted;
  j["instance_uid"] = expected_uid;
  j["solution_uid"] = found_uid;
  j["uid_matches"] = uid_matches;
  j["violations"] = violations;
  j["notes"] = notes;
  if (!per_input.empty()) {
    j["objective_upper"] = objective_upper;
    j["objective_lower"] = objective_lower;
    j["exact"] = exact;
    json inputs = json::array();
    for (const auto& d : per_input) {
      json w = json::array();
      for (const auto& step : d.witness.steps) {
        json s = json::array();
        for (const auto& f : step.flips) s.push_back({f.edge.u, f.edge.v});
        w.push_back(std::move(s));
      }
      inputs.push_back({{"lower", d.lower}, {"upper", d.upper}, {"exact", d.exact}, {"witness", std::move(w)}});
    }
    j["per_input"] = std::move(inputs);
  }
  return j.dump(2) + "\n";
}

double edge_overlap(const Triangulation& a, const Triangulation& b) {
  if (a.edges().empty()) return 1.0;
  return static_cast<double>(happy_edges(a, b).size()) / static_cast<double>(a.edges().size());
}

double mean_pairwise_overlap(const Instance& instance) {
  const auto& ts = instance.triangulations;
  if (ts.size() < 2) return 1.0;
  double total = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      total += edge_overlap(ts[i], ts[j]);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

}  // namespace flipcenter
