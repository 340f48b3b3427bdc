#include "flipcenter/mesh.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace flipcenter {
namespace {

std::uint64_t directed_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

Mesh Mesh::from_edges(std::span<const Point> points, std::span<const Edge> edges) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::uint32_t>> around(n);
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const auto& e : edges) {
    around[e.u].push_back(e.v);
    around[e.v].push_back(e.u);
    present.insert(e.key());
  }

  Mesh mesh;
  mesh.vertex_tri_.assign(n, kNone);
  for (std::uint32_t p = 0; p < n; ++p) {
    auto& nb = around[p];
    std::sort(nb.begin(), nb.end(), [&](std::uint32_t a, std::uint32_t b) {
      return compare_angle(points[p], points[a], points[b]) < 0;
    });
    for (std::size_t i = 0; i < nb.size() && nb.size() >= 2; ++i) {
      const auto a = nb[i];
      const auto b = nb[(i + 1) % nb.size()];
      if (p > a || p > b) continue;
      if (orientation(points[p], points[a], points[b]) != Orientation::CounterClockwise) continue;
      if (!present.contains(Edge(a, b).key())) continue;
      mesh.tris_.push_back({p, a, b});
    }
  }

  std::unordered_map<std::uint64_t, std::int32_t> side_of;
  side_of.reserve(mesh.tris_.size() * 3);
  mesh.nbrs_.assign(mesh.tris_.size(), {kNone, kNone, kNone});
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(mesh.tris_.size()); ++t) {
    const auto& v = mesh.tris_[t];
    for (int side = 0; side < 3; ++side) {
      const auto a = v[(side + 1) % 3];
      const auto b = v[(side + 2) % 3];
      side_of.emplace(directed_key(a, b), t * 3 + side);
      mesh.vertex_tri_[v[side]] = t;
    }
  }
  for (std::int32_t t = 0; t < static_cast<std::int32_t>(mesh.tris_.size()); ++t) {
    const auto& v = mesh.tris_[t];
    for (int side = 0; side < 3; ++side) {
      const auto a = v[(side + 1) % 3];
      const auto b = v[(side + 2) % 3];
      if (auto it = side_of.find(directed_key(b, a)); it != side_of.end()) {
        mesh.nbrs_[t][side] = it->second / 3;
      }
    }
  }
  return mesh;
}

std::uint32_t Mesh::apex_across(HalfEdge h) const noexcept {
  const auto s = nbrs_[h.tri][h.side];
  return tris_[s][side_towards(s, h.tri)];
}

std::array<std::uint32_t, 4> Mesh::quad(HalfEdge h) const noexcept {
  const auto& v = tris_[h.tri];
  return {v[h.side], v[(h.side + 1) % 3], apex_across(h), v[(h.side + 2) % 3]};
}

bool Mesh::is_flippable(std::span<const Point> points, HalfEdge h) const noexcept {
  if (!is_interior(h)) return false;
  const auto q = quad(h);
  return is_strictly_convex_quad(points[q[0]], points[q[1]], points[q[2]], points[q[3]]);
}

std::optional<HalfEdge> Mesh::find_edge(std::uint32_t u, std::uint32_t v) const {
  if (u >= vertex_tri_.size() || v >= vertex_tri_.size()) return std::nullopt;
  std::optional<HalfEdge> found;
  for_each_around(u, [&](std::int32_t t, int k) {
    if (found) return;
    const auto& tv = tris_[t];
    if (tv[(k + 1) % 3] == v) found = HalfEdge{t, (k + 2) % 3};
    else if (tv[(k + 2) % 3] == v) found = HalfEdge{t, (k + 1) % 3};
  });
  return found;
}

FlipRecord Mesh::flip(HalfEdge h) {
  const std::int32_t t = h.tri;
  const std::int32_t s = nbrs_[t][h.side];
  const int j = side_towards(s, t);

  FlipRecord rec;
  rec.t = t;
  rec.s = s;
  rec.t_vertices = tris_[t];
  rec.s_vertices = tris_[s];
  rec.t_neighbors = nbrs_[t];
  rec.s_neighbors = nbrs_[s];

  // t = (a, u, w), s = (b, w, u); the quad a, u, b, w is counter-clockwise.
  const auto a = tris_[t][h.side];
  const auto u = tris_[t][(h.side + 1) % 3];
  const auto w = tris_[t][(h.side + 2) % 3];
  const auto b = tris_[s][j];
  const auto n_au = nbrs_[t][(h.side + 2) % 3];
  const auto n_wa = nbrs_[t][(h.side + 1) % 3];
  const auto n_ub = nbrs_[s][(j + 1) % 3];
  const auto n_bw = nbrs_[s][(j + 2) % 3];

  tris_[t] = {a, u, b};
  nbrs_[t] = {n_ub, s, n_au};
  tris_[s] = {a, b, w};
  nbrs_[s] = {n_bw, n_wa, t};

  if (n_ub != kNone) {
    nbrs_[n_ub][side_towards(n_ub, s)] = t;
    rec.moved_to_t = n_ub;
  }
  if (n_wa != kNone) {
    nbrs_[n_wa][side_towards(n_wa, t)] = s;
    rec.moved_to_s = n_wa;
  }
  rec.vertex_slots = {std::pair{a, vertex_tri_[a]}, std::pair{u, vertex_tri_[u]},
                      std::pair{b, vertex_tri_[b]}, std::pair{w, vertex_tri_[w]}};
  vertex_tri_[u] = t;
  vertex_tri_[w] = s;
  vertex_tri_[a] = t;
  vertex_tri_[b] = s;
  rec.removed = Edge(u, w);
  rec.added = Edge(a, b);
  return rec;
}

void Mesh::undo(const FlipRecord& rec) {
  if (rec.moved_to_t != kNone) nbrs_[rec.moved_to_t][side_towards(rec.moved_to_t, rec.t)] = rec.s;
  if (rec.moved_to_s != kNone) nbrs_[rec.moved_to_s][side_towards(rec.moved_to_s, rec.s)] = rec.t;
  tris_[rec.t] = rec.t_vertices;
  tris_[rec.s] = rec.s_vertices;
  nbrs_[rec.t] = rec.t_neighbors;
  nbrs_[rec.s] = rec.s_neighbors;
  for (const auto& [vertex, slot] : rec.vertex_slots) vertex_tri_[vertex] = slot;
}

std::vector<Edge> Mesh::sorted_edges() const {
  std::vector<Edge> out;
  out.reserve(tris_.size() * 3 / 2 + vertex_tri_.size());
  for_each_edge([&](HalfEdge h) { out.push_back(edge(h)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Mesh::edge_set_hash() const {
  std::uint64_t h = 0;
  for_each_edge([&](HalfEdge e) { h ^= edge_hash(edge(e)); });
  return h;
}

}  // namespace flipcenter
