#pragma once

#include <cstdint>
#include <span>

#include "flipcenter/geometry.hpp"
#include "flipcenter/mesh.hpp"

namespace flipcenter {

/// Counts how many edges of a fixed target triangulation a segment between
/// two of its vertices properly crosses, by walking the target's triangles
/// along the segment. Cost is proportional to the answer plus deg(u).
class CrossingCounter {
 public:
  CrossingCounter(std::span<const Point> points, const Mesh& target) : points_(points), mesh_(&target) {}

  std::uint32_t count(std::uint32_t u, std::uint32_t v) const;
  std::uint32_t count(const Edge& e) const { return count(e.u, e.v); }

 private:
  std::span<const Point> points_;
  const Mesh* mesh_;
};

}  // namespace flipcenter
