#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace flipcenter {

/// A planar point with exact integer coordinates.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;
};

enum class Orientation : int { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };

constexpr Orientation reverse(Orientation o) noexcept {
  return static_cast<Orientation>(-static_cast<int>(o));
}

namespace detail {
Orientation orientation_wide(const Point& p, const Point& q, const Point& r) noexcept;
}

/// Sign of (q - p) x (r - p). Exact for the full 64-bit coordinate range.
inline Orientation orientation(const Point& p, const Point& q, const Point& r) noexcept {
  // Differences below 2^31 keep both products under 2^62, so 64-bit
  // arithmetic is exact; anything wider takes the 128/256-bit path.
  constexpr std::int64_t kLimit = std::int64_t{1} << 30;
  if (p.x > -kLimit && p.x < kLimit && p.y > -kLimit && p.y < kLimit && q.x > -kLimit && q.x < kLimit &&
      q.y > -kLimit && q.y < kLimit && r.x > -kLimit && r.x < kLimit && r.y > -kLimit && r.y < kLimit) {
    const std::int64_t det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return static_cast<Orientation>((det > 0) - (det < 0));
  }
  return detail::orientation_wide(p, q, r);
}

/// True iff `p` lies on segment ab and differs from both endpoints.
bool on_open_segment(const Point& p, const Point& a, const Point& b) noexcept;

/// Proper crossing: the open segments ab and cd meet in exactly one point that
/// is interior to both. Shared endpoints and collinear overlap do not count.
bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) noexcept;

/// Planarity conflict: the closed segments share any point other than a
/// common endpoint. Collinear overlap and T-junctions are conflicts; identical
/// segments conflict with each other.
bool segments_conflict(const Point& a, const Point& b, const Point& c, const Point& d) noexcept;

/// a, b, c, d in claimed boundary order form a strictly convex quadrilateral.
bool is_strictly_convex_quad(const Point& a, const Point& b, const Point& c, const Point& d) noexcept;

/// Angular order of `a` and `b` as seen from `origin`, sweeping counter-clockwise
/// from the positive x direction. Returns <0, 0 or >0.
int compare_angle(const Point& origin, const Point& a, const Point& b) noexcept;

/// Strict convex hull (collinear boundary points dropped), as indices in
/// counter-clockwise order starting from the lowest-leftmost point.
/// Throws DegenerateInput when fewer than 3 points or all points are collinear.
std::vector<std::uint32_t> convex_hull(std::span<const Point> points);

/// Every point on the hull boundary, collinear ones included, in
/// counter-clockwise order. Its size is the `h` of the edge-count formulas.
std::vector<std::uint32_t> hull_boundary(std::span<const Point> points);

}  // namespace flipcenter
