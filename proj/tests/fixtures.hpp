#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "flipcenter/errors.hpp"
#include "flipcenter/random.hpp"
#include "flipcenter/triangulation.hpp"

namespace fixtures {

using namespace flipcenter;

inline PointSetPtr square_points() { return make_point_set({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline Triangulation square(std::uint32_t diagonal_from) {
  return Triangulation::build(square_points(), {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {diagonal_from, diagonal_from + 2}});
}

inline PointSetPtr pentagon_points() { return make_point_set({{0, 0}, {4, 0}, {5, 3}, {2, 5}, {-1, 3}}); }

/// Fan triangulation of the convex pentagon from vertex k.
inline Triangulation pentagon_fan(std::uint32_t k, PointSetPtr points = pentagon_points()) {
  std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  edges.emplace_back(k, (k + 2) % 5);
  edges.emplace_back(k, (k + 3) % 5);
  return Triangulation::build(std::move(points), edges);
}

/// n distinct integer points uniform in [0, range)^2, not all collinear.
inline PointSetPtr random_points(std::size_t n, std::int64_t range, std::uint64_t seed) {
  Rng rng(seed);
  for (;;) {
    std::set<Point> seen;
    std::vector<Point> pts;
    while (pts.size() < n) {
      const Point p{static_cast<std::int64_t>(rng.below(range)), static_cast<std::int64_t>(rng.below(range))};
      if (seen.insert(p).second) pts.push_back(p);
    }
    try {
      return make_point_set(std::move(pts));
    } catch (const DegenerateInput&) {
    }
  }
}

/// n points in convex position on a large circle-ish polygon.
inline PointSetPtr convex_points(std::size_t n) {
  std::vector<Point> pts;
  // Points on the parabola y = x^2 plus one point far above close the polygon
  // in strictly convex position.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto x = static_cast<std::int64_t>(i);
    pts.push_back({x, x * x});
  }
  const auto last = static_cast<std::int64_t>(n - 2);
  pts.push_back({last / 2, last * last + 1000});
  return make_point_set(std::move(pts));
}

/// Brute-force count of proper crossings between two edge sets.
inline std::uint64_t brute_crossings(const Triangulation& a, const Triangulation& b) {
  std::uint64_t total = 0;
  const auto& pts = a.points();
  for (const auto& e : a.edges()) {
    for (const auto& f : b.edges()) {
      if (segments_cross(pts[e.u], pts[e.v], pts[f.u], pts[f.v])) ++total;
    }
  }
  return total;
}

/// Every triangulation reachable from `start` by single flips, which is all
/// triangulations of the point set.
inline std::vector<Triangulation> all_triangulations(const Triangulation& start) {
  std::set<std::vector<Edge>> seen{{start.edges().begin(), start.edges().end()}};
  std::vector<Triangulation> out{start};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& f : flippable_edges(out[i])) {
      auto next = flip(out[i], f.edge);
      if (seen.insert({next.edges().begin(), next.edges().end()}).second) out.push_back(std::move(next));
    }
  }
  return out;
}

/// Every nonempty independent subset of flippable edges, found by checking
/// all subsets against the shared-triangle rule directly.
inline std::vector<std::vector<Edge>> all_parallel_moves(const Triangulation& t) {
  const auto flips = flippable_edges(t);
  std::vector<std::vector<Triangle>> tris;
  for (const auto& f : flips) tris.push_back(t.incident_triangles(f.edge));
  std::vector<std::vector<Edge>> out;
  const std::size_t k = flips.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
    std::set<Triangle> used;
    bool ok = true;
    std::vector<Edge> move;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (const auto& tri : tris[i]) ok = ok && used.insert(tri).second;
      move.push_back(flips[i].edge);
    }
    if (ok) out.push_back(std::move(move));
  }
  return out;
}

/// Breadth-first parallel flip distance; nullopt beyond `limit`.
inline std::optional<std::uint64_t> brute_parallel_distance(const Triangulation& a, const Triangulation& b,
                                                            std::uint64_t limit = 16) {
  using Key = std::vector<Edge>;
  const Key goal(b.edges().begin(), b.edges().end());
  std::set<Key> seen{{a.edges().begin(), a.edges().end()}};
  std::vector<Triangulation> frontier{a};
  for (std::uint64_t depth = 0; depth <= limit; ++depth) {
    std::vector<Triangulation> next;
    for (const auto& t : frontier) {
      if (Key(t.edges().begin(), t.edges().end()) == goal) return depth;
    }
    for (const auto& t : frontier) {
      for (const auto& move : all_parallel_moves(t)) {
        auto u = apply_parallel_flip(t, move);
        if (seen.insert({u.edges().begin(), u.edges().end()}).second) next.push_back(std::move(u));
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace fixtures
