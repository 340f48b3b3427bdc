#include <doctest.h>

#include "fixtures.hpp"
#include "flipcenter/distance.hpp"
#include "flipcenter/generators.hpp"

using namespace flipcenter;
using namespace fixtures;

namespace {

// A random triangulation reached by a short random walk of single flips.
Triangulation walk_from(const Triangulation& start, std::size_t flips, std::uint64_t seed) {
  Rng rng(seed);
  Triangulation t = start;
  for (std::size_t i = 0; i < flips; ++i) {
    const auto f = flippable_edges(t);
    if (f.empty()) break;
    t = flip(t, f[rng.below(f.size())].edge);
  }
  return t;
}

std::pair<Triangulation, Triangulation> random_pair(std::size_t n, std::uint64_t seed) {
  const auto pts = random_points(n, 40, seed);
  auto a = greedy_random_triangulation(pts, derive_seed(seed, 1));
  if (seed % 2 == 0) return {a, greedy_random_triangulation(pts, derive_seed(seed, 2))};
  auto b = walk_from(a, 3 + seed % 5, derive_seed(seed, 3));
  return {std::move(a), std::move(b)};
}

}  // namespace

TEST_CASE("lower bound examples") {
  CHECK(distance_lower_bound(square(0), square(0)) == 0);
  CHECK(distance_lower_bound(square(0), square(1)) == 1);
  CHECK(distance_lower_bound(pentagon_fan(0), pentagon_fan(1)) == 2);
  CHECK(distance_lower_bound(pentagon_fan(0), pentagon_fan(2)) == 1);
  CHECK_THROWS_AS(distance_lower_bound(square(0), pentagon_fan(0)), PointSetMismatch);
}

TEST_CASE("exact distance examples") {
  const auto same = exact_distance(square(0), square(0));
  CHECK(same.exact);
  CHECK(same.upper == 0);
  CHECK(same.witness.empty());

  const auto sq = exact_distance(square(0), square(1));
  CHECK(sq.exact);
  CHECK(sq.upper == 1);
  CHECK(replay(square(0), sq.witness) == square(1));

  const auto far = exact_distance(pentagon_fan(0), pentagon_fan(1));
  CHECK(far.exact);
  CHECK(far.lower == 2);
  CHECK(far.upper == 2);
  CHECK(replay(pentagon_fan(0), far.witness) == pentagon_fan(1));
  CHECK(brute_parallel_distance(pentagon_fan(0), pentagon_fan(1)) == 2);

  const auto near = exact_distance(pentagon_fan(0), pentagon_fan(2));
  CHECK(near.upper == 1);
  CHECK(brute_parallel_distance(pentagon_fan(0), pentagon_fan(2)) == 1);
}

TEST_CASE("heuristic distance examples") {
  CHECK(heuristic_distance(square(1), square(1), 7).upper == 0);
  const auto sq = heuristic_distance(square(0), square(1), 7);
  CHECK(sq.upper == 1);
  CHECK(sq.lower == 1);
  CHECK(sq.exact);
  REQUIRE(sq.witness.size() == 1);
  CHECK(sq.witness.steps[0].flips[0].edge == Edge(0, 2));
  CHECK(sq.witness.steps[0].flips[0].opposite == Edge(1, 3));
}

TEST_CASE("replay") {
  CHECK(replay(square(0), {}) == square(0));

  FlipSequence bad;
  bad.steps.push_back({{{Edge(0, 2), Edge(1, 3), {1, 2, 3, 0}}}});
  bad.steps.push_back({{{Edge(0, 2), Edge(1, 3), {1, 2, 3, 0}}}});
  try {
    replay(square(0), bad);
    FAIL("expected InvalidStep");
  } catch (const InvalidStep& e) {
    CHECK(e.index() == 1);
  }

  FlipSequence wrong_opposite;
  wrong_opposite.steps.push_back({{{Edge(0, 2), Edge(0, 1), {1, 2, 3, 0}}}});
  CHECK_THROWS_AS(replay(square(0), wrong_opposite), InvalidStep);

  const auto d = heuristic_distance(pentagon_fan(0), pentagon_fan(1), 3);
  auto both = d.witness;
  both.steps.push_back(both.steps.back());
  CHECK_THROWS_AS(replay(pentagon_fan(0), both), InvalidStep);
}

TEST_CASE("exact distance matches breadth-first search") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 5 + seed % 3;
    const auto [a, b] = random_pair(n, 1000 + seed);
    const auto expected = brute_parallel_distance(a, b);
    REQUIRE(expected.has_value());
    const auto got = exact_distance(a, b);
    CHECK(got.exact);
    CHECK(got.upper == *expected);
    CHECK(replay(a, got.witness) == b);
  }
  const auto convex = convex_points(7);
  const auto all = all_triangulations(greedy_random_triangulation(convex, 1));
  CHECK(all.size() == 42);
  for (std::size_t i = 0; i < all.size(); i += 5) {
    for (std::size_t j = 0; j < all.size(); j += 3) {
      CHECK(exact_distance(all[i], all[j]).upper == brute_parallel_distance(all[i], all[j]));
    }
  }
}

TEST_CASE("distance sandwich, symmetry and witness soundness") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 6 + seed % 5;
    const auto [a, b] = random_pair(n, seed);
    const auto lb = distance_lower_bound(a, b);
    const auto ex = exact_distance(a, b);
    const auto back = exact_distance(b, a);
    const auto heur = heuristic_distance(a, b, seed);
    INFO("seed " << seed);
    CHECK(lb <= ex.upper);
    CHECK(ex.exact);
    CHECK(ex.upper == back.upper);
    CHECK(ex.upper <= heur.upper);
    CHECK(heur.lower == lb);
    CHECK(heur.upper <= sequential_greedy_walk_length(a, b, seed));
    CHECK(replay(a, ex.witness) == b);
    CHECK(replay(b, back.witness) == a);
    CHECK(replay(a, heur.witness) == b);
    CHECK(ex.witness.size() == ex.upper);
    CHECK(heur.witness.size() == heur.upper);
  }
}

TEST_CASE("exact distance triangle inequality") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto pts = random_points(7 + seed % 2, 30, 500 + seed);
    const auto a = greedy_random_triangulation(pts, 1);
    const auto b = greedy_random_triangulation(pts, 2);
    const auto c = greedy_random_triangulation(pts, 3);
    const auto ab = exact_distance(a, b).upper;
    const auto bc = exact_distance(b, c).upper;
    const auto ac = exact_distance(a, c).upper;
    CHECK(ac <= ab + bc);
    CHECK(ab <= ac + bc);
    CHECK(bc <= ab + ac);
  }
}

TEST_CASE("exact search budget") {
  const auto pts = random_points(10, 40, 77);
  const auto a = greedy_random_triangulation(pts, 1);
  const auto b = greedy_random_triangulation(pts, 2);
  REQUIRE(distance_lower_bound(a, b) < heuristic_distance(a, b, 0).upper);
  try {
    exact_distance(a, b, {.node_limit = 1, .depth_limit = 64});
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& e) {
    const auto& p = e.partial();
    CHECK_FALSE(p.exact);
    CHECK(p.lower <= p.upper);
    CHECK(replay(a, p.witness) == b);
  }
}

TEST_CASE("heuristic walk at larger sizes") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto pts = random_points(300, 2000, seed);
    const auto a = greedy_random_triangulation(pts, 10 + seed);
    const auto b = greedy_random_triangulation(pts, 20 + seed);
    const auto d = heuristic_distance(a, b, seed);
    CHECK(d.lower <= d.upper);
    CHECK(replay(a, d.witness) == b);
    // Linear regime: observed ratios stay far below this.
    CHECK(d.upper <= 2 * pts->size());
    MESSAGE("n=300 parallel steps " << d.upper << " flips " << d.witness.flip_count() << " lower " << d.lower);
  }
}

TEST_CASE("heuristic distance depends only on the edge sets") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto pts = random_points(200, 2000, seed);
    const auto a = greedy_random_triangulation(pts, 30 + seed);
    const auto b = greedy_random_triangulation(pts, 40 + seed);
    const auto walked = random_flip_walk(a, 20, 0.5, seed);
    const auto rebuilt = Triangulation::build(pts, {walked.edges().begin(), walked.edges().end()});
    REQUIRE(walked == rebuilt);
    const auto x = heuristic_distance(walked, b, seed);
    const auto y = heuristic_distance(rebuilt, b, seed);
    CHECK(x.upper == y.upper);
    REQUIRE(x.witness.steps.size() == y.witness.steps.size());
    for (std::size_t k = 0; k < x.witness.steps.size(); ++k) CHECK(x.witness.steps[k].edges() == y.witness.steps[k].edges());
    const auto u = heuristic_distance(b, walked, seed);
    const auto v = heuristic_distance(b, rebuilt, seed);
    CHECK(u.upper == v.upper);
  }
}
