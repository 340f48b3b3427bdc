// One line per acceptance criterion. Usage: acceptance <flipcenter binary> [criterion...]
#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "flipcenter/distance.hpp"
#include "flipcenter/generators.hpp"
#include "flipcenter/instance.hpp"
#include "flipcenter/scoring.hpp"
#include "flipcenter/solver.hpp"

using namespace flipcenter;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr double kEulerSeconds = 30.0;
constexpr double kSandwichSeconds = 300.0;
constexpr double kOverlapLow = 0.10;
constexpr double kOverlapHigh = 0.35;
constexpr double kScaleBudgetCap = 300.0;
constexpr double kScaleRunBudget = 300.0;
constexpr std::size_t kScaleRuns = 10;
constexpr std::size_t kScaleWins = 7;
constexpr long kMemoryCapKiB = 8L * 1024 * 1024;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

// Independent oracles. Coordinates in these tests stay far below 2^31, so
// plain 64-bit cross products are exact.

int orient(const Point& p, const Point& q, const Point& r) {
  const std::int64_t d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return (d > 0) - (d < 0);
}

/// Points on the hull boundary, collinear ones included (monotone chain that
/// keeps collinear points, both chains unioned).
std::set<std::uint32_t> boundary_points(std::span<const Point> pts) {
  std::vector<std::uint32_t> idx(pts.size());
  for (std::uint32_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return pts[a] < pts[b]; });
  std::set<std::uint32_t> out;
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<std::uint32_t> chain;
    for (auto i : idx) {
      while (chain.size() >= 2 && orient(pts[chain[chain.size() - 2]], pts[chain.back()], pts[i]) < 0) chain.pop_back();
      chain.push_back(i);
    }
    out.insert(chain.begin(), chain.end());
    std::reverse(idx.begin(), idx.end());
  }
  return out;
}

/// 3-cycles of the edge graph with no point inside or on them.
std::vector<std::array<std::uint32_t, 3>> faces(std::span<const Point> pts, std::span<const Edge> edges) {
  std::vector<std::set<std::uint32_t>> adj(pts.size());
  for (const auto& e : edges) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::vector<std::array<std::uint32_t, 3>> out;
  for (std::uint32_t u = 0; u < pts.size(); ++u) {
    for (auto v : adj[u]) {
      if (v <= u) continue;
      for (auto w : adj[v]) {
        if (w <= v || !adj[u].count(w)) continue;
        const int o = orient(pts[u], pts[v], pts[w]);
        if (o == 0) continue;
        bool empty = true;
        for (std::uint32_t k = 0; k < pts.size() && empty; ++k) {
          if (k == u || k == v || k == w) continue;
          const int a = orient(pts[u], pts[v], pts[k]);
          const int b = orient(pts[v], pts[w], pts[k]);
          const int c = orient(pts[w], pts[u], pts[k]);
          if (a * o >= 0 && b * o >= 0 && c * o >= 0) empty = false;
        }
        if (empty) out.push_back({u, v, w});
      }
    }
  }
  return out;
}

/// Flippable iff the edge has two faces whose apexes lie strictly on opposite
/// sides and the edge endpoints lie strictly on opposite sides of the apex line.
std::set<Edge> oracle_flippable(std::span<const Point> pts, std::span<const Edge> edges,
                                std::map<Edge, std::vector<std::uint32_t>>* apexes_out = nullptr) {
  std::map<Edge, std::vector<std::uint32_t>> apexes;
  for (const auto& f : faces(pts, edges)) {
    apexes[Edge(f[0], f[1])].push_back(f[2]);
    apexes[Edge(f[1], f[2])].push_back(f[0]);
    apexes[Edge(f[0], f[2])].push_back(f[1]);
  }
  std::set<Edge> out;
  for (const auto& [e, ap] : apexes) {
    if (ap.size() != 2) continue;
    const auto &a = pts[ap[0]], &b = pts[ap[1]], &p = pts[e.u], &q = pts[e.v];
    if (orient(p, q, a) * orient(p, q, b) < 0 && orient(a, b, p) * orient(a, b, q) < 0) out.insert(e);
  }
  if (apexes_out) *apexes_out = std::move(apexes);
  return out;
}

std::vector<Point> to_vector(std::span<const Point> s) { return {s.begin(), s.end()}; }

// Shared by criteria 1 and 3.
std::vector<Triangulation>& euler_suite() {
  static std::vector<Triangulation> suite;
  return suite;
}

Outcome criterion1() {
  Outcome o;
  const auto start = Clock::now();
  auto& suite = euler_suite();
  suite.clear();
  std::size_t convex = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t n = 4 + i % 197;
    const bool is_convex = i % 2 == 1;
    const auto points = is_convex ? convex_points(n)
                                  : make_point_set(sample_points(n, static_cast<std::int64_t>(std::max<std::size_t>(100, 10 * n)),
                                                                 derive_seed(1, i)));
    convex += is_convex;
    suite.push_back(greedy_random_triangulation(points, derive_seed(2, i)));
  }
  std::size_t checked = 0;
  for (const auto& t : suite) {
    const auto pts = t.points().points();
    const std::size_t n = pts.size();
    const std::size_t h = boundary_points(pts).size();
    const auto tris = faces(pts, t.edges());
    const std::string tag = "n=" + std::to_string(n);
    o.expect(t.edges().size() == 3 * n - h - 3, tag + ": edges != 3n-h-3");
    o.expect(tris.size() == 2 * n - h - 2, tag + ": faces != 2n-h-2");
    o.expect(t.triangles().size() == 2 * n - h - 2, tag + ": stored triangles != 2n-h-2");
    o.expect(t.points().hull_size() == h, tag + ": hull size disagrees with oracle");
    ++checked;
  }
  const double secs = seconds_since(start);
  o.expect(secs < kEulerSeconds, "runtime over limit");
  o.detail << checked << " triangulations (" << convex << " convex), n in 4..200, " << secs << " s (limit "
           << kEulerSeconds << " s)";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::size_t flips_checked = 0;
  std::size_t sets_checked = 0;
  std::size_t orders_checked = 0;
  std::size_t hull_checked = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t n = 4 + i % 47;
    const auto points = make_point_set(sample_points(n, 200, derive_seed(3, i)));
    auto t = greedy_random_triangulation(points, derive_seed(4, i));
    if (i % 2 == 1) t = random_flip_walk(t, 5, 0.5, derive_seed(5, i));
    const auto pts = points->points();
    const std::string tag = "triangulation " + std::to_string(i);

    std::map<Edge, std::vector<std::uint32_t>> apexes;
    const auto expected = oracle_flippable(pts, t.edges(), &apexes);
    std::set<Edge> reported;
    for (const auto& f : flippable_edges(t)) reported.insert(f.edge);
    o.expect(reported == expected, tag + ": flippable edges disagree with oracle");

    for (const auto& f : flippable_edges(t)) {
      const auto once = flip(t, f.edge);
      o.expect(once.contains(f.opposite) && !once.contains(f.edge), tag + ": flip did not swap diagonals");
      o.expect(flip(once, f.opposite) == t, tag + ": flip is not an involution");
      ++flips_checked;
    }

    const auto boundary = boundary_points(pts);
    for (const auto& e : t.edges()) {
      const auto it = apexes.find(e);
      if (it == apexes.end() || it->second.size() != 1) continue;
      ++hull_checked;
      o.expect(!reported.count(e), tag + ": hull edge reported flippable");
      o.expect(boundary.count(e.u) && boundary.count(e.v), tag + ": one-sided edge off the hull");
      bool threw = false;
      try {
        flip(t, e);
      } catch (const NotFlippable&) {
        threw = true;
      }
      o.expect(threw, tag + ": flipping a hull edge did not throw");
    }

    // Random subsets of size 1..3; independence judged from oracle faces.
    const std::vector<Edge> pool(reported.begin(), reported.end());
    if (pool.empty()) continue;
    Rng rng(derive_seed(6, i));
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, pool.size()));
      std::set<Edge> pick;
      while (pick.size() < k) pick.insert(pool[rng.below(pool.size())]);
      std::set<std::array<std::uint32_t, 3>> used;
      bool independent = true;
      for (const auto& e : pick) {
        for (auto a : apexes.at(e)) {
          std::array<std::uint32_t, 3> tri{e.u, e.v, a};
          std::sort(tri.begin(), tri.end());
          independent = independent && used.insert(tri).second;
        }
      }
      std::vector<Edge> set(pick.begin(), pick.end());
      o.expect(is_independent(t, set) == independent, tag + ": independence disagrees with oracle");
      if (!independent) {
        bool threw = false;
        try {
          apply_parallel_flip(t, set);
        } catch (const NotIndependent&) {
          threw = true;
        }
        o.expect(threw, tag + ": dependent set was flipped");
        continue;
      }
      const auto parallel = apply_parallel_flip(t, set);
      ++sets_checked;
      std::sort(set.begin(), set.end());
      do {
        auto seq = t;
        for (const auto& e : set) seq = flip(seq, e);
        o.expect(seq == parallel, tag + ": parallel flip differs from a sequential order");
        ++orders_checked;
      } while (std::next_permutation(set.begin(), set.end()));
    }
  }
  o.detail << "200 triangulations n<=50: " << flips_checked << " involutions, " << sets_checked << " independent sets, "
           << orders_checked << " orders, " << hull_checked << " hull edges";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto& suite = euler_suite();
  if (suite.empty()) criterion1();
  std::size_t slack_min = SIZE_MAX;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto& t = suite[i];
    const std::size_t n = t.points().size();
    const std::size_t need = n <= 4 ? 0 : (n - 4 + 4) / 5;
    const auto mis = maximal_independent_flippable_set(t, derive_seed(7, i));
    const auto edges = mis.edges();
    const std::string tag = "n=" + std::to_string(n);
    o.expect(mis.size() >= need, tag + ": set of " + std::to_string(mis.size()) + " below " + std::to_string(need));
    slack_min = std::min(slack_min, mis.size() - std::min(mis.size(), need));

    std::map<Edge, std::vector<std::uint32_t>> apexes;
    const auto flippable = oracle_flippable(t.points().points(), t.edges(), &apexes);
    std::set<std::array<std::uint32_t, 3>> used;
    auto tris_of = [&](const Edge& e) {
      std::vector<std::array<std::uint32_t, 3>> out;
      for (auto a : apexes.at(e)) {
        std::array<std::uint32_t, 3> tri{e.u, e.v, a};
        std::sort(tri.begin(), tri.end());
        out.push_back(tri);
      }
      return out;
    };
    bool independent = true;
    for (const auto& e : edges) {
      o.expect(flippable.count(e) == 1, tag + ": member not flippable");
      for (const auto& tri : tris_of(e)) independent = independent && used.insert(tri).second;
    }
    o.expect(independent, tag + ": members share a triangle");
    const std::set<Edge> members(edges.begin(), edges.end());
    for (const auto& e : flippable) {
      if (members.count(e)) continue;
      bool blocked = false;
      for (const auto& tri : tris_of(e)) blocked = blocked || used.count(tri);
      o.expect(blocked, tag + ": set is not maximal");
    }
  }
  o.detail << suite.size() << " triangulations, min slack over ceil((n-4)/5) = " << slack_min;
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto start = Clock::now();
  std::size_t brute_checked = 0;
  std::uint64_t max_exact = 0;
  for (std::size_t i = 0; i < 200; ++i) {
    const std::size_t n = 4 + i % 7;
    const auto points = make_point_set(sample_points(n, 40, derive_seed(8, i)));
    const auto a = greedy_random_triangulation(points, derive_seed(9, i));
    const auto b = i % 2 == 0 ? greedy_random_triangulation(points, derive_seed(10, i))
                              : random_flip_walk(a, 1 + i % 4, 0.6, derive_seed(11, i));
    const std::string tag = "pair " + std::to_string(i) + " n=" + std::to_string(n);
    const auto lb = distance_lower_bound(a, b);
    const auto ab = exact_distance(a, b);
    const auto ba = exact_distance(b, a);
    const auto h = heuristic_distance(a, b, derive_seed(12, i));
    o.expect(ab.exact && ba.exact, tag + ": exact search not exact");
    o.expect(lb <= ab.upper, tag + ": lower bound above exact");
    o.expect(ab.upper == ba.upper, tag + ": exact distance not symmetric");
    o.expect(ab.upper <= h.upper, tag + ": heuristic below exact");
    o.expect(h.lower <= ab.upper, tag + ": heuristic lower bound above exact");
    o.expect(replay(a, ab.witness) == b && ab.witness.size() == ab.upper, tag + ": exact witness does not replay");
    o.expect(replay(b, ba.witness) == a, tag + ": reverse witness does not replay");
    o.expect(replay(a, h.witness) == b && h.witness.size() == h.upper, tag + ": heuristic witness does not replay");
    if (n <= 8) {
      const auto brute = brute_parallel_distance(a, b);
      o.expect(brute && *brute == ab.upper, tag + ": exact disagrees with breadth-first search");
      ++brute_checked;
    }
    max_exact = std::max(max_exact, ab.upper);
  }
  const double secs = seconds_since(start);
  o.expect(secs < kSandwichSeconds, "runtime over limit");
  o.detail << "200 pairs n<=10, " << brute_checked << " also by breadth-first search, max distance " << max_exact << ", "
           << secs << " s (limit " << kSandwichSeconds << " s)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (std::uint32_t k = 0; k < 5; ++k) {
    const auto adjacent = pentagon_fan((k + 2) % 5);
    const auto next = pentagon_fan((k + 1) % 5);
    const auto d1 = exact_distance(pentagon_fan(k), adjacent);
    const auto d2 = exact_distance(pentagon_fan(k), next);
    o.expect(d1.upper == 1 && d1.exact && *brute_parallel_distance(pentagon_fan(k), adjacent) == 1,
             "fan " + std::to_string(k) + " vs sharing fan is not 1");
    o.expect(d2.upper == 2 && d2.exact && *brute_parallel_distance(pentagon_fan(k), next) == 2,
             "fan " + std::to_string(k) + " vs next fan is not 2");
  }
  Instance inst;
  inst.uid = "pentagon_fans";
  inst.points = pentagon_points();
  inst.triangulations = {pentagon_fan(0), pentagon_fan(1), pentagon_fan(2)};
  const auto all = all_triangulations(pentagon_fan(0));
  o.expect(all.size() == 5, "pentagon does not have 5 triangulations");
  std::uint64_t best = UINT64_MAX;
  for (const auto& c : all) {
    std::uint64_t total = 0;
    for (const auto& t : inst.triangulations) total += *brute_parallel_distance(c, t);
    best = std::min(best, total);
  }
  SolverConfig config;
  config.seed = 1;
  config.search_mode = EvalMode::Exact;
  const auto r = solve(inst, config);
  o.expect(r.objective.mode == EvalMode::Exact && r.objective.total_upper == best, "solver center is not optimal");
  o.detail << "adjacent fans 1, fan 0 vs fan 1 = 2, center objective " << r.objective.total_upper
           << " = exhaustive minimum " << best;
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t at_hidden = 0;
  std::uint64_t slack = 0;
  double slowest = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    const std::uint64_t seed = 600 + i;
    RandomInstanceParams p;
    p.n = 8 + i % 5;
    p.m = 3 + i % 3;
    p.num_steps = menu_num_steps(seed);
    p.prob = menu_prob(seed);
    p.seed = seed;
    const auto inst = generate_random_instance(p);
    const std::string tag = inst.uid;
    const auto text = format_instance(inst);
    const auto loaded = parse_instance(text);
    Instance rebuilt = loaded;
    rebuilt.triangulations = replay_random_walks(loaded);
    o.expect(format_instance(rebuilt) == text, tag + ": replayed walks differ");

    o.expect(inst.meta->center_objective_exact, tag + ": stored objective not exact");
    SolverConfig config;
    config.seed = i;
    const auto t0 = Clock::now();
    const auto r = solve(loaded, config);
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    o.expect(secs <= config.time_budget + 5.0, tag + ": over the default time budget");
    o.expect(r.objective.mode == EvalMode::Exact, tag + ": objective not exact");
    o.expect(r.objective.total_upper <= *inst.meta->center_objective,
             tag + ": objective " + std::to_string(r.objective.total_upper) + " above hidden center " +
                 std::to_string(*inst.meta->center_objective));
    if (r.objective.total_upper == *inst.meta->center_objective) ++at_hidden;
    slack += *inst.meta->center_objective - std::min(*inst.meta->center_objective, r.objective.total_upper);
  }
  o.detail << "20 instances replay exactly; solver <= hidden center on all (" << at_hidden << " equal, total gain "
           << slack << "), slowest solve " << slowest << " s";
  return o;
}

Outcome criterion7() {
  Outcome o;
  double lo = 1;
  double hi = 0;
  double mean = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto inst = generate_rirs_instance({.n = 500, .m = 5, .coordinate_range = 0, .seed = seed, .threads = 0});
    // Overlap recomputed here from raw edge lists.
    double total = 0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < inst.triangulations.size(); ++a) {
      const auto& ea = inst.triangulations[a].edges();
      const std::set<Edge> sa(ea.begin(), ea.end());
      for (std::size_t b = a + 1; b < inst.triangulations.size(); ++b) {
        std::size_t shared = 0;
        for (const auto& e : inst.triangulations[b].edges()) shared += sa.count(e);
        total += static_cast<double>(shared) / static_cast<double>(sa.size());
        ++pairs;
      }
    }
    const double overlap = total / static_cast<double>(pairs);
    o.expect(std::abs(overlap - mean_pairwise_overlap(inst)) < 1e-12, "library overlap disagrees with oracle");
    o.expect(overlap >= kOverlapLow && overlap <= kOverlapHigh, "seed " + std::to_string(seed) + " overlap " +
                                                                    std::to_string(overlap) + " outside band");
    lo = std::min(lo, overlap);
    hi = std::max(hi, overlap);
    mean += overlap / 10;
  }
  o.detail << "10 seeds n=500 m=5: overlap " << 100 * lo << "%.." << 100 * hi << "%, mean " << 100 * mean
           << "% (band " << 100 * kOverlapLow << "%.." << 100 * kOverlapHigh << "%)";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const int table[12] = {40, 32, 25, 19, 14, 10, 7, 5, 4, 3, 2, 1};
  const auto tie = score({{"A", 10}, {"B", 10}, {"C", 12}});
  o.expect(tie.at("A") == 40 && tie.at("B") == 40 && tie.at("C") == 25, "tie fixture");
  std::map<std::string, std::uint64_t> twelve;
  for (int i = 0; i < 12; ++i) twelve["t" + std::to_string(10 + i)] = 7 * static_cast<std::uint64_t>(i) + 3;
  const auto p12 = score(twelve);
  for (int i = 0; i < 12; ++i) o.expect(p12.at("t" + std::to_string(10 + i)) == table[i], "rank table entry");
  std::map<std::string, std::uint64_t> eighteen;
  for (int i = 0; i < 18; ++i) eighteen["t" + std::to_string(10 + i)] = 100 - static_cast<std::uint64_t>(i);
  const auto p18 = score(eighteen);
  for (int i = 0; i < 18; ++i) {
    const int rank = 18 - i;
    o.expect(p18.at("t" + std::to_string(10 + i)) == (rank <= 12 ? table[rank - 1] : 0), "18-team ranks");
  }
  const auto totals = score_totals({{{"A", 10}, {"B", 10}, {"C", 12}}, twelve});
  o.expect(totals.at("A") == 40 && totals.at("t10") == 40 && totals.at("C") == 25, "totals");
  o.detail << "tie {10,10,12} -> {40,40,25}; 12-rank table exact; ranks 13..18 score 0";
  return o;
}

long peak_rss_kib() {
  rusage usage{};
  getrusage(RUSAGE_SELF, &usage);
  return usage.ru_maxrss;
}

Outcome criterion9(const std::string& cli) {
  Outcome o;
  const auto dir = fs::temp_directory_path() / ("flipcenter_scale_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto inst_path = dir / "rirs5000.json";

  auto t0 = Clock::now();
  const auto gen_cmd = cli + " generate rirs -n 5000 -m 20 --seed 2024 -q -o " + inst_path.string() + " > /dev/null";
  o.expect(std::system(gen_cmd.c_str()) == 0, "generate failed");
  const double gen_secs = seconds_since(t0);
  const auto inst = read_instance(inst_path);
  o.expect(inst.size() == 5000 && inst.triangulations.size() == 20, "wrong instance size");

  // Best single input under the same surrogate the solver uses.
  SolverConfig eval_config;
  eval_config.threads = 0;
  std::uint64_t best_input = UINT64_MAX;
  for (const auto& t : inst.triangulations) {
    best_input = std::min(best_input, evaluate(t, inst, EvalMode::Surrogate, eval_config, false).total_upper);
  }

  std::size_t wins = 0;
  std::uint64_t best_total = UINT64_MAX;
  double slowest = 0;
  for (std::size_t run = 0; run < kScaleRuns; ++run) {
    const auto out = dir / ("solution" + std::to_string(run) + ".json");
    const auto cmd = cli + " solve " + inst_path.string() + " -q --seed " + std::to_string(run) + " --time-budget " +
                     std::to_string(kScaleRunBudget) + " -o " + out.string() + " > /dev/null";
    t0 = Clock::now();
    const int rc = std::system(cmd.c_str());
    const double secs = seconds_since(t0);
    slowest = std::max(slowest, secs);
    o.expect(rc == 0, "solve run " + std::to_string(run) + " failed");
    o.expect(secs <= kScaleBudgetCap + 60, "solve run " + std::to_string(run) + " overran");
    const auto solution = read_solution(out);
    const auto report = verify_solution(inst, solution, {.seed = 0, .restarts = 0, .threads = 0});
    o.expect(report.accepted, "run " + std::to_string(run) + " rejected by verification");
    o.expect(solution.objective && solution.objective->total_upper == report.objective_upper,
             "run " + std::to_string(run) + " claimed objective differs from recomputed");
    if (report.accepted && report.objective_upper < best_input) ++wins;
    best_total = std::min(best_total, report.objective_upper);

    // Child memory: the largest resident set of any finished child.
    rusage usage{};
    getrusage(RUSAGE_CHILDREN, &usage);
    o.expect(usage.ru_maxrss < kMemoryCapKiB, "solver memory over cap");
  }
  rusage children{};
  getrusage(RUSAGE_CHILDREN, &children);
  o.expect(peak_rss_kib() < kMemoryCapKiB, "verifier memory over cap");
  o.expect(wins >= kScaleWins, "improved in only " + std::to_string(wins) + " runs");
  o.detail << "n=5000 m=20 generated in " << gen_secs << " s; best input surrogate " << best_input << ", best center "
           << best_total << "; improved in " << wins << "/" << kScaleRuns << " runs (need " << kScaleWins
           << "); slowest solve " << slowest << " s; peak RSS " << std::max(children.ru_maxrss, peak_rss_kib()) / 1024
           << " MiB";
  fs::remove_all(dir);
  return o;
}

Outcome criterion10(const std::string& cli) {
  Outcome o;
  const auto dir = fs::temp_directory_path() / ("flipcenter_det_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<Instance> suite;
  {
    Instance sq;
    sq.uid = "square";
    sq.points = square_points();
    sq.triangulations = {square(0), square(1)};
    suite.push_back(sq);
    Instance fans;
    fans.uid = "pentagon_fans";
    fans.points = pentagon_points();
    fans.triangulations = {pentagon_fan(0), pentagon_fan(1), pentagon_fan(2)};
    suite.push_back(fans);
  }
  for (std::uint64_t s = 0; s < 8; ++s) {
    RandomInstanceParams p;
    p.n = 8 + 3 * s;
    p.m = 3 + s % 3;
    p.num_steps = menu_num_steps(900 + s);
    p.prob = menu_prob(900 + s);
    p.seed = 900 + s;
    suite.push_back(generate_random_instance(p));
  }
  for (std::uint64_t s = 0; s < 2; ++s) suite.push_back(generate_rirs_instance({.n = 60, .m = 4, .seed = 950 + s}));

  std::size_t identical = 0;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    const auto path = dir / ("inst" + std::to_string(i) + ".json");
    write_instance(suite[i], path);
    std::string files[2];
    int k = 0;
    for (const char* threads : {"1", "8"}) {
      const auto out = dir / ("sol" + std::to_string(i) + "_" + threads + ".json");
      const auto cmd = cli + " solve " + path.string() + " -q --seed 5 --threads " + threads + " -o " + out.string() +
                       " > /dev/null";
      o.expect(std::system(cmd.c_str()) == 0, suite[i].uid + ": solve failed");
      std::ifstream in(out, std::ios::binary);
      files[k++] = std::string(std::istreambuf_iterator<char>(in), {});
    }
    o.expect(!files[0].empty() && files[0] == files[1], suite[i].uid + ": thread count changed the solution file");
    identical += !files[0].empty() && files[0] == files[1];
  }
  o.detail << identical << "/" << suite.size() << " small instances give byte-identical solutions at 1 and 8 threads";
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <flipcenter binary> [criterion...]\n";
    return 2;
  }
  const std::string cli = argv[1];
  std::set<int> only;
  for (int i = 2; i < argc; ++i) only.insert(std::atoi(argv[i]));

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Euler invariants", criterion1},
      {"flip calculus", criterion2},
      {"simultaneous flip guarantee", criterion3},
      {"distance oracle sandwich", criterion4},
      {"pentagon exactness", criterion5},
      {"generator fidelity", criterion6},
      {"rirs overlap band", criterion7},
      {"scoring semantics", criterion8},
      {"scale smoke test", [&] { return criterion9(cli); }},
      {"determinism across thread counts", [&] { return criterion10(cli); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(number)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    all = all && o.pass;
    std::cout << "criterion " << number << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << o.detail.str() << "\n";
    for (const auto& f : o.failures) std::cout << "    " << f << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
