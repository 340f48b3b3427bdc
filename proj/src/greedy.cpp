#include <algorithm>

#include "flipcenter/errors.hpp"
#include "flipcenter/segment_grid.hpp"
#include "flipcenter/triangulation.hpp"

namespace flipcenter {
namespace {

/// Incremental plane straight-line graph that accepts an edge only if it
/// conflicts with nothing accepted so far.
class GreedyInserter {
 public:
  explicit GreedyInserter(const PointSet& points)
      : points_(points), grid_(points.points()), around_(points.size()) {
    edges_.reserve(points.expected_edge_count());
  }

  bool complete() const noexcept { return edges_.size() == points_.expected_edge_count(); }

  bool try_insert(std::uint32_t u, std::uint32_t v) {
    if (u == v) return false;
    // An existing edge uv shares its direction from u, so the wedge test
    // also rejects duplicates.
    if (wedge_blocks(u, v) || wedge_blocks(v, u)) return false;
    if (grid_.conflicts(u, v)) return false;
    if (grid_.has_point_inside(u, v)) return false;
    grid_.insert_segment(static_cast<std::uint32_t>(edges_.size()), u, v);
    edges_.emplace_back(u, v);
    insert_around(u, v);
    insert_around(v, u);
    return true;
  }

  std::vector<Edge> take_edges() { return std::move(edges_); }

 private:
  auto angular_position(std::uint32_t p, std::uint32_t q) const {
    const auto& nb = around_[p];
    const auto& pts = points_.points();
    return std::lower_bound(nb.begin(), nb.end(), q, [&](std::uint32_t a, std::uint32_t b) {
      return compare_angle(pts[p], pts[a], pts[b]) < 0;
    });
  }

  bool adjacent(std::uint32_t a, std::uint32_t b) const {
    const auto& nb = around_[a].size() <= around_[b].size() ? around_[a] : around_[b];
    const auto other = around_[a].size() <= around_[b].size() ? b : a;
    return std::find(nb.begin(), nb.end(), other) != nb.end();
  }

  void insert_around(std::uint32_t p, std::uint32_t q) { around_[p].insert(angular_position(p, q), q); }

  // Fast rejection: if q's direction from p falls in a wedge (a, b) of p's
  // current fan that is closed by edge ab and q lies beyond ab, then pq
  // crosses ab. A direction shared with an existing edge is always a conflict.
  bool wedge_blocks(std::uint32_t p, std::uint32_t q) const {
    const auto& nb = around_[p];
    if (nb.empty()) return false;
    const auto& pts = points_.points();
    const auto it = angular_position(p, q);
    const auto pos = static_cast<std::size_t>(it - nb.begin());
    if (it != nb.end() && compare_angle(pts[p], pts[*it], pts[q]) == 0) return true;
    if (nb.size() < 2) return false;
    const auto b = nb[pos % nb.size()];
    const auto a = nb[(pos + nb.size() - 1) % nb.size()];
    if (orientation(pts[p], pts[a], pts[b]) != Orientation::CounterClockwise) return false;
    if (!adjacent(a, b)) return false;
    return orientation(pts[a], pts[b], pts[q]) == Orientation::Clockwise;
  }

  const PointSet& points_;
  SegmentGrid grid_;
  std::vector<std::vector<std::uint32_t>> around_;
  std::vector<Edge> edges_;
};

void insert_random_pairs(GreedyInserter& inserter, std::size_t n, std::uint64_t seed) {
  if (inserter.complete()) return;
  std::vector<std::uint64_t> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = u + 1; v < n; ++v) pairs.push_back(Edge(u, v).key());
  }
  Rng rng(seed);
  rng.shuffle(pairs);
  for (auto key : pairs) {
    const auto e = Edge::from_key(key);
    inserter.try_insert(e.u, e.v);
    if (inserter.complete()) return;
  }
}

Triangulation finish(PointSetPtr points, GreedyInserter& inserter) {
  if (!inserter.complete()) throw DegenerateInput("greedy insertion did not reach a full triangulation");
  auto edges = inserter.take_edges();
  std::sort(edges.begin(), edges.end());
  auto mesh = Mesh::from_edges(points->points(), edges);
  if (mesh.triangle_count() != points->expected_triangle_count()) {
    throw DegenerateInput("greedy insertion produced an inconsistent face structure");
  }
  return Triangulation::from_mesh(std::move(points), std::move(mesh));
}

}  // namespace

Triangulation greedy_random_triangulation(PointSetPtr points, std::uint64_t seed) {
  if (!points) throw std::invalid_argument("null point set");
  GreedyInserter inserter(*points);
  insert_random_pairs(inserter, points->size(), seed);
  return finish(std::move(points), inserter);
}

Triangulation greedy_completion(PointSetPtr points, std::span<const Edge> preferred, std::uint64_t seed) {
  if (!points) throw std::invalid_argument("null point set");
  GreedyInserter inserter(*points);
  for (const auto& e : preferred) {
    if (e.u < points->size() && e.v < points->size()) inserter.try_insert(e.u, e.v);
    if (inserter.complete()) break;
  }
  insert_random_pairs(inserter, points->size(), seed);
  return finish(std::move(points), inserter);
}

}  // namespace flipcenter
