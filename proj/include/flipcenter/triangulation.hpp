#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flipcenter/geometry.hpp"
#include "flipcenter/mesh.hpp"

namespace flipcenter {

/// Immutable point set shared by every triangulation of an instance. Points
/// must be distinct and not all collinear.
class PointSet {
 public:
  explicit PointSet(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const noexcept { return points_[i]; }
  std::span<const Point> points() const noexcept { return points_; }

  /// Strict hull vertices, counter-clockwise.
  std::span<const std::uint32_t> hull() const noexcept { return hull_; }
  /// All boundary points including collinear ones, counter-clockwise.
  std::span<const std::uint32_t> boundary() const noexcept { return boundary_; }
  /// `h`: number of points on the hull boundary.
  std::size_t hull_size() const noexcept { return boundary_.size(); }

  /// 3n - h - 3
  std::size_t expected_edge_count() const noexcept { return 3 * size() - hull_size() - 3; }
  /// 2n - h - 2
  std::size_t expected_triangle_count() const noexcept { return 2 * size() - hull_size() - 2; }

  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  friend bool operator==(const PointSet& a, const PointSet& b) noexcept {
    return a.fingerprint_ == b.fingerprint_ && a.points_ == b.points_;
  }

 private:
  std::vector<Point> points_;
  std::vector<std::uint32_t> hull_;
  std::vector<std::uint32_t> boundary_;
  std::uint64_t fingerprint_ = 0;
};

using PointSetPtr = std::shared_ptr<const PointSet>;

PointSetPtr make_point_set(std::vector<Point> points);

/// Every violated triangulation invariant for `edges` over `points`; empty
/// when the edge set is a valid triangulation.
std::vector<std::string> triangulation_violations(const PointSet& points, std::span<const Edge> edges);

/// A flippable diagonal together with the quadrilateral around it.
struct FlippableEdge {
  Edge edge;
  Edge opposite;
  /// Quad corners in counter-clockwise order; edge joins quad[1] and quad[3],
  /// opposite joins quad[0] and quad[2].
  std::array<std::uint32_t, 4> quad;

  friend bool operator==(const FlippableEdge&, const FlippableEdge&) = default;
};

/// Independent set of flippable edges of one triangulation.
struct ParallelFlipSet {
  std::vector<FlippableEdge> flips;

  std::vector<Edge> edges() const;
  bool empty() const noexcept { return flips.empty(); }
  std::size_t size() const noexcept { return flips.size(); }
};

/// Validated triangulation of a shared point set. Values are immutable; every
/// operation returns a new triangulation.
class Triangulation {
 public:
  /// Validates `edges` against `points`; throws NotATriangulation listing
  /// every violation.
  static Triangulation build(PointSetPtr points, std::vector<Edge> edges);

  /// Wraps an already consistent mesh without re-validating it.
  static Triangulation from_mesh(PointSetPtr points, Mesh mesh);

  const PointSet& points() const noexcept { return *points_; }
  const PointSetPtr& point_set() const noexcept { return points_; }
  const Mesh& mesh() const noexcept { return mesh_; }

  /// Canonical edges, sorted.
  std::span<const Edge> edges() const noexcept { return edges_; }
  bool contains(const Edge& e) const noexcept;

  /// Triangles as sorted index triples, sorted.
  std::vector<Triangle> triangles() const;
  /// The one (hull edge) or two (interior edge) triangles incident to `e`.
  /// Throws UnknownEdge if `e` is not in the triangulation.
  std::vector<Triangle> incident_triangles(const Edge& e) const;

  std::uint64_t hash() const noexcept { return hash_; }

  friend bool operator==(const Triangulation& a, const Triangulation& b) noexcept;

 private:
  Triangulation(PointSetPtr points, Mesh mesh);

  PointSetPtr points_;
  Mesh mesh_;
  std::vector<Edge> edges_;
  std::uint64_t hash_ = 0;
};

/// Throws PointSetMismatch unless both triangulations share a point set.
void require_same_points(const Triangulation& a, const Triangulation& b);

/// Greedy insertion of all C(n,2) candidate edges in a seeded random order,
/// keeping every edge that conflicts with none kept so far.
Triangulation greedy_random_triangulation(PointSetPtr points, std::uint64_t seed);

/// Inserts `preferred` greedily in the given order, then completes the result
/// by greedy random insertion driven by `seed`.
Triangulation greedy_completion(PointSetPtr points, std::span<const Edge> preferred, std::uint64_t seed);

std::vector<FlippableEdge> flippable_edges(const Triangulation& t);

/// Throws NotFlippable (or UnknownEdge for an edge not in t).
Triangulation flip(const Triangulation& t, const Edge& e);

/// Interior edges whose quadrilateral has a straight corner and no reflex one.
/// Such edges are treated as not flippable.
std::vector<Edge> degenerate_quad_edges(const Triangulation& t);

/// True iff every edge is flippable and no two share an incident triangle.
/// Throws UnknownEdge when an edge is missing from t.
bool is_independent(const Triangulation& t, std::span<const Edge> edges);

/// Flips all edges simultaneously. Throws NotIndependent.
Triangulation apply_parallel_flip(const Triangulation& t, std::span<const Edge> edges);
Triangulation apply_parallel_flip(const Triangulation& t, const ParallelFlipSet& set);

/// Seeded greedy maximal independent set of flippable edges.
ParallelFlipSet maximal_independent_flippable_set(const Triangulation& t, std::uint64_t seed);

/// Number of proper crossings between edges of a and edges of b.
std::uint64_t crossing_number(const Triangulation& a, const Triangulation& b);

/// Edges present in both triangulations.
std::vector<Edge> happy_edges(const Triangulation& a, const Triangulation& b);

}  // namespace flipcenter
