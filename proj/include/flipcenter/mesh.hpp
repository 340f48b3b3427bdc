#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "flipcenter/geometry.hpp"
#include "flipcenter/random.hpp"

namespace flipcenter {

/// Undirected edge between two point indices, stored with u < v.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;

  constexpr Edge() = default;
  constexpr Edge(std::uint32_t a, std::uint32_t b) : u(a < b ? a : b), v(a < b ? b : a) {}

  constexpr std::uint64_t key() const noexcept { return (std::uint64_t{u} << 32) | v; }
  static constexpr Edge from_key(std::uint64_t key) noexcept {
    return Edge(static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key));
  }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Zobrist-style per-edge hash; a triangulation hash is the XOR over its edges.
constexpr std::uint64_t edge_hash(const Edge& e) noexcept { return mix64(e.key() ^ 0x5bd1e9955bd1e995ULL); }

using Triangle = std::array<std::uint32_t, 3>;

/// Handle to the side of triangle `tri` opposite its vertex `side`.
struct HalfEdge {
  std::int32_t tri = -1;
  int side = 0;
};

/// Everything needed to undo one flip exactly, including triangle slot layout.
struct FlipRecord {
  std::int32_t t = -1;
  std::int32_t s = -1;
  Triangle t_vertices{};
  Triangle s_vertices{};
  std::array<std::int32_t, 3> t_neighbors{};
  std::array<std::int32_t, 3> s_neighbors{};
  std::int32_t moved_to_t = -1;  // outer triangle re-pointed from s to t
  std::int32_t moved_to_s = -1;  // outer triangle re-pointed from t to s
  std::array<std::pair<std::uint32_t, std::int32_t>, 4> vertex_slots{};
  Edge removed;
  Edge added;
};

/// Triangle/adjacency structure supporting O(1) flips with exact undo.
/// Triangles are stored counter-clockwise; side i of a triangle is the edge
/// opposite its i-th vertex.
class Mesh {
 public:
  static constexpr std::int32_t kNone = -1;

  Mesh() = default;

  /// Builds faces by angular scan around each vertex. `edges` must already
  /// form a valid triangulation of `points`.
  static Mesh from_edges(std::span<const Point> points, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return vertex_tri_.size(); }
  std::size_t triangle_count() const noexcept { return tris_.size(); }
  const Triangle& triangle(std::int32_t t) const noexcept { return tris_[t]; }
  std::int32_t neighbor(std::int32_t t, int side) const noexcept { return nbrs_[t][side]; }

  Edge edge(HalfEdge h) const noexcept {
    const auto& v = tris_[h.tri];
    return Edge(v[(h.side + 1) % 3], v[(h.side + 2) % 3]);
  }
  bool is_interior(HalfEdge h) const noexcept { return nbrs_[h.tri][h.side] != kNone; }

  /// Third vertex of the neighbouring triangle across `h`; requires interior.
  std::uint32_t apex_across(HalfEdge h) const noexcept;
  /// Diagonal that would replace `h`'s edge; requires interior.
  Edge opposite(HalfEdge h) const noexcept { return Edge(tris_[h.tri][h.side], apex_across(h)); }
  /// Quad (a, u, b, w) counter-clockwise around interior edge (u, w).
  std::array<std::uint32_t, 4> quad(HalfEdge h) const noexcept;
  bool is_flippable(std::span<const Point> points, HalfEdge h) const noexcept;

  std::optional<HalfEdge> find_edge(std::uint32_t u, std::uint32_t v) const;
  std::optional<HalfEdge> find_edge(const Edge& e) const { return find_edge(e.u, e.v); }

  /// Replaces the diagonal at `h`; the caller guarantees flippability.
  FlipRecord flip(HalfEdge h);
  /// Reverts `record`; records must be undone in reverse order of flipping.
  void undo(const FlipRecord& record);

  /// Visits every undirected edge once as fn(HalfEdge).
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (std::int32_t t = 0; t < static_cast<std::int32_t>(tris_.size()); ++t) {
      for (int side = 0; side < 3; ++side) {
        const auto n = nbrs_[t][side];
        if (n == kNone || t < n) fn(HalfEdge{t, side});
      }
    }
  }

  /// Visits every triangle incident to vertex u as fn(tri, index of u in tri).
  template <typename Fn>
  void for_each_around(std::uint32_t u, Fn&& fn) const {
    const std::int32_t start = vertex_tri_[u];
    if (start == kNone) return;
    std::int32_t t = start;
    // Counter-clockwise first; fall back to clockwise on hitting the hull.
    do {
      const int k = index_of(t, u);
      fn(t, k);
      t = nbrs_[t][(k + 1) % 3];
    } while (t != kNone && t != start);
    if (t == start) return;
    t = nbrs_[start][(index_of(start, u) + 2) % 3];
    while (t != kNone) {
      const int k = index_of(t, u);
      fn(t, k);
      t = nbrs_[t][(k + 2) % 3];
    }
  }

  std::vector<Edge> sorted_edges() const;
  std::uint64_t edge_set_hash() const;

 private:
  int index_of(std::int32_t t, std::uint32_t u) const noexcept {
    const auto& v = tris_[t];
    return v[0] == u ? 0 : (v[1] == u ? 1 : 2);
  }
  int side_towards(std::int32_t t, std::int32_t other) const noexcept {
    const auto& n = nbrs_[t];
    return n[0] == other ? 0 : (n[1] == other ? 1 : 2);
  }

  std::vector<Triangle> tris_;
  std::vector<std::array<std::int32_t, 3>> nbrs_;
  std::vector<std::int32_t> vertex_tri_;
};

}  // namespace flipcenter
