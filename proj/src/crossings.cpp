#include "flipcenter/crossings.hpp"

#include <stdexcept>

namespace flipcenter {

std::uint32_t CrossingCounter::count(std::uint32_t u, std::uint32_t v) const {
  const Mesh& m = *mesh_;
  const Point& pu = points_[u];
  const Point& pv = points_[v];

  std::int32_t start = Mesh::kNone;
  int start_k = 0;
  bool adjacent = false;
  m.for_each_around(u, [&](std::int32_t t, int k) {
    if (adjacent || start != Mesh::kNone) return;
    const auto& tv = m.triangle(t);
    const auto p = tv[(k + 1) % 3];
    const auto q = tv[(k + 2) % 3];
    if (p == v || q == v) {
      adjacent = true;
      return;
    }
    if (orientation(pu, points_[p], pv) == Orientation::CounterClockwise &&
        orientation(pu, points_[q], pv) == Orientation::Clockwise) {
      start = t;
      start_k = k;
    }
  });
  if (adjacent) return 0;
  if (start == Mesh::kNone) throw std::logic_error("crossing walk found no start wedge");

  // right/left: endpoints of the edge just crossed, relative to u -> v.
  std::uint32_t right = m.triangle(start)[(start_k + 1) % 3];
  std::uint32_t left = m.triangle(start)[(start_k + 2) % 3];
  std::int32_t cur = start;
  std::int32_t next = m.neighbor(start, start_k);
  std::uint32_t crossings = 1;
  for (;;) {
    if (next == Mesh::kNone) throw std::logic_error("crossing walk left the triangulation");
    const auto& sv = m.triangle(next);
    int apex = 0;
    while (m.neighbor(next, apex) != cur) ++apex;
    const auto r = sv[apex];
    if (r == v) return crossings;
    int exit_side;
    switch (orientation(pu, pv, points_[r])) {
      case Orientation::CounterClockwise:
        exit_side = sv[0] == left ? 0 : (sv[1] == left ? 1 : 2);
        left = r;
        break;
      case Orientation::Clockwise:
        exit_side = sv[0] == right ? 0 : (sv[1] == right ? 1 : 2);
        right = r;
        break;
      default:
        throw std::logic_error("crossing walk met a point on the segment");
    }
    ++crossings;
    cur = next;
    next = m.neighbor(next, exit_side);
  }
}

}  // namespace flipcenter
