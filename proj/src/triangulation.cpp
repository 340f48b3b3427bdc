#include "flipcenter/triangulation.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "flipcenter/crossings.hpp"
#include "flipcenter/errors.hpp"
#include "flipcenter/segment_grid.hpp"

namespace flipcenter {
namespace {

std::string edge_name(const Edge& e) {
  return "(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
}

}  // namespace

PointSet::PointSet(std::vector<Point> points) : points_(std::move(points)) {
  std::vector<std::uint32_t> order(points_.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return points_[a] < points_[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (points_[order[i]] == points_[order[i - 1]]) {
      throw DuplicatePoint("points " + std::to_string(std::min(order[i], order[i - 1])) + " and " +
                           std::to_string(std::max(order[i], order[i - 1])) + " coincide");
    }
  }
  hull_ = convex_hull(points_);
  boundary_ = hull_boundary(points_);
  std::uint64_t h = mix64(points_.size());
  for (const auto& p : points_) {
    h = mix64(h ^ static_cast<std::uint64_t>(p.x));
    h = mix64(h ^ static_cast<std::uint64_t>(p.y));
  }
  fingerprint_ = h;
}

PointSetPtr make_point_set(std::vector<Point> points) {
  return std::make_shared<const PointSet>(std::move(points));
}

std::vector<std::string> triangulation_violations(const PointSet& points, std::span<const Edge> edges) {
  std::vector<std::string> out;
  const std::size_t n = points.size();

  std::vector<Edge> usable;
  usable.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      out.push_back("edge " + edge_name(e) + " references a point index out of range (n = " +
                    std::to_string(n) + ")");
    } else if (e.u == e.v) {
      out.push_back("edge " + edge_name(e) + " is a self-loop");
    } else {
      usable.push_back(e);
    }
  }
  std::sort(usable.begin(), usable.end());
  for (std::size_t i = 1; i < usable.size(); ++i) {
    if (usable[i] == usable[i - 1]) out.push_back("duplicate edge " + edge_name(usable[i]));
  }
  usable.erase(std::unique(usable.begin(), usable.end()), usable.end());

  SegmentGrid grid(points.points());
  std::vector<std::uint32_t> seen_stamp(usable.size(), 0);
  for (std::uint32_t id = 0; id < usable.size(); ++id) {
    const auto& e = usable[id];
    if (grid.has_point_inside(e.u, e.v)) {
      out.push_back("edge " + edge_name(e) + " passes through another point");
    }
    const Point& a = points[e.u];
    const Point& b = points[e.v];
    std::vector<std::uint32_t> hits;
    grid.any_nearby(e.u, e.v, [&](std::uint32_t other) {
      if (seen_stamp[other] == id + 1) return false;
      seen_stamp[other] = id + 1;
      const auto& f = usable[other];
      if (segments_conflict(a, b, points[f.u], points[f.v])) hits.push_back(other);
      return false;
    });
    std::sort(hits.begin(), hits.end());
    for (auto other : hits) {
      out.push_back("edges " + edge_name(usable[other]) + " and " + edge_name(e) + " cross");
    }
    grid.insert_segment(id, e.u, e.v);
  }

  const auto boundary = points.boundary();
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const Edge hull_edge(boundary[i], boundary[(i + 1) % boundary.size()]);
    if (!std::binary_search(usable.begin(), usable.end(), hull_edge)) {
      out.push_back("missing hull edge " + edge_name(hull_edge));
    }
  }

  if (edges.size() != points.expected_edge_count()) {
    out.push_back("wrong edge count (3n-h-3): expected " + std::to_string(points.expected_edge_count()) +
                  " for n = " + std::to_string(n) + ", h = " + std::to_string(points.hull_size()) +
                  ", found " + std::to_string(edges.size()));
  }
  return out;
}

std::vector<Edge> ParallelFlipSet::edges() const {
  std::vector<Edge> out;
  out.reserve(flips.size());
  for (const auto& f : flips) out.push_back(f.edge);
  return out;
}

Triangulation::Triangulation(PointSetPtr points, Mesh mesh)
    : points_(std::move(points)), mesh_(std::move(mesh)), edges_(mesh_.sorted_edges()) {
  for (const auto& e : edges_) hash_ ^= edge_hash(e);
}

Triangulation Triangulation::build(PointSetPtr points, std::vector<Edge> edges) {
  if (!points) throw std::invalid_argument("null point set");
  auto violations = triangulation_violations(*points, edges);
  if (!violations.empty()) throw NotATriangulation(std::move(violations));
  std::sort(edges.begin(), edges.end());
  Mesh mesh = Mesh::from_edges(points->points(), edges);
  if (mesh.triangle_count() != points->expected_triangle_count()) {
    throw NotATriangulation({"wrong triangle count (2n-h-2): expected " +
                             std::to_string(points->expected_triangle_count()) + ", found " +
                             std::to_string(mesh.triangle_count())});
  }
  return Triangulation(std::move(points), std::move(mesh));
}

Triangulation Triangulation::from_mesh(PointSetPtr points, Mesh mesh) {
  return Triangulation(std::move(points), std::move(mesh));
}

bool Triangulation::contains(const Edge& e) const noexcept {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<Triangle> Triangulation::triangles() const {
  std::vector<Triangle> out;
  out.reserve(mesh_.triangle_count());
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(mesh_.triangle_count()); ++t) {
    auto tri = mesh_.triangle(t);
    std::sort(tri.begin(), tri.end());
    out.push_back(tri);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triangle> Triangulation::incident_triangles(const Edge& e) const {
  const auto h = mesh_.find_edge(e);
  if (!h) throw UnknownEdge("edge " + edge_name(e) + " is not in the triangulation");
  std::vector<Triangle> out;
  for (auto t : {h->tri, mesh_.neighbor(h->tri, h->side)}) {
    if (t == Mesh::kNone) continue;
    auto tri = mesh_.triangle(t);
    std::sort(tri.begin(), tri.end());
    out.push_back(tri);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const Triangulation& a, const Triangulation& b) noexcept {
  return a.hash_ == b.hash_ && a.edges_ == b.edges_ &&
         (a.points_ == b.points_ || *a.points_ == *b.points_);
}

void require_same_points(const Triangulation& a, const Triangulation& b) {
  if (a.point_set() != b.point_set() && !(a.points() == b.points())) throw PointSetMismatch();
}

std::vector<FlippableEdge> flippable_edges(const Triangulation& t) {
  std::vector<FlippableEdge> out;
  const auto& mesh = t.mesh();
  const auto points = t.points().points();
  mesh.for_each_edge([&](HalfEdge h) {
    if (!mesh.is_flippable(points, h)) return;
    out.push_back({mesh.edge(h), mesh.opposite(h), mesh.quad(h)});
  });
  std::sort(out.begin(), out.end(),
            [](const FlippableEdge& a, const FlippableEdge& b) { return a.edge < b.edge; });
  return out;
}

std::vector<Edge> degenerate_quad_edges(const Triangulation& t) {
  std::vector<Edge> out;
  const auto& mesh = t.mesh();
  const auto points = t.points().points();
  mesh.for_each_edge([&](HalfEdge h) {
    if (!mesh.is_interior(h)) return;
    const auto q = mesh.quad(h);
    bool straight = false;
    bool reflex = false;
    for (int i = 0; i < 4; ++i) {
      const auto o = orientation(points[q[i]], points[q[(i + 1) % 4]], points[q[(i + 2) % 4]]);
      straight = straight || o == Orientation::Collinear;
      reflex = reflex || o == Orientation::Clockwise;
    }
    if (straight && !reflex) out.push_back(mesh.edge(h));
  });
  std::sort(out.begin(), out.end());
  return out;
}

Triangulation flip(const Triangulation& t, const Edge& e) {
  const auto h = t.mesh().find_edge(e);
  if (!h) throw UnknownEdge("edge " + edge_name(e) + " is not in the triangulation");
  if (!t.mesh().is_flippable(t.points().points(), *h)) {
    throw NotFlippable("edge " + edge_name(e) + " is not the diagonal of a strictly convex quadrilateral");
  }
  Mesh mesh = t.mesh();
  mesh.flip(*h);
  return Triangulation::from_mesh(t.point_set(), std::move(mesh));
}

bool is_independent(const Triangulation& t, std::span<const Edge> edges) {
  const auto& mesh = t.mesh();
  std::vector<HalfEdge> handles;
  handles.reserve(edges.size());
  for (const auto& e : edges) {
    const auto h = mesh.find_edge(e);
    if (!h) throw UnknownEdge("edge " + edge_name(e) + " is not in the triangulation");
    handles.push_back(*h);
  }
  std::unordered_set<std::int32_t> used;
  for (const auto& h : handles) {
    if (!mesh.is_flippable(t.points().points(), h)) return false;
    if (!used.insert(h.tri).second) return false;
    if (!used.insert(mesh.neighbor(h.tri, h.side)).second) return false;
  }
  return true;
}

Triangulation apply_parallel_flip(const Triangulation& t, std::span<const Edge> edges) {
  if (!is_independent(t, edges)) {
    throw NotIndependent("flip set is not an independent set of flippable edges");
  }
  Mesh mesh = t.mesh();
  for (const auto& e : edges) mesh.flip(*mesh.find_edge(e));
  return Triangulation::from_mesh(t.point_set(), std::move(mesh));
}

Triangulation apply_parallel_flip(const Triangulation& t, const ParallelFlipSet& set) {
  const auto edges = set.edges();
  return apply_parallel_flip(t, edges);
}

ParallelFlipSet maximal_independent_flippable_set(const Triangulation& t, std::uint64_t seed) {
  auto candidates = flippable_edges(t);
  Rng rng(seed);
  rng.shuffle(candidates);
  const auto& mesh = t.mesh();
  std::vector<char> used(mesh.triangle_count(), 0);
  ParallelFlipSet out;
  for (const auto& f : candidates) {
    const auto h = *mesh.find_edge(f.edge);
    const auto other = mesh.neighbor(h.tri, h.side);
    if (used[h.tri] || used[other]) continue;
    used[h.tri] = used[other] = 1;
    out.flips.push_back(f);
  }
  std::sort(out.flips.begin(), out.flips.end(),
            [](const FlippableEdge& a, const FlippableEdge& b) { return a.edge < b.edge; });
  return out;
}

std::uint64_t crossing_number(const Triangulation& a, const Triangulation& b) {
  require_same_points(a, b);
  const CrossingCounter counter(b.points().points(), b.mesh());
  std::uint64_t total = 0;
  for (const auto& e : a.edges()) total += counter.count(e);
  return total;
}

std::vector<Edge> happy_edges(const Triangulation& a, const Triangulation& b) {
  require_same_points(a, b);
  std::vector<Edge> out;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace flipcenter
