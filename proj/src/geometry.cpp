#include "flipcenter/geometry.hpp"

#include <algorithm>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "flipcenter/errors.hpp"

namespace flipcenter {
namespace {

using i128 = __int128;

constexpr i128 kSafeMagnitude = static_cast<i128>(1) << 63;

constexpr bool fits(i128 v) noexcept { return v < kSafeMagnitude && v > -kSafeMagnitude; }

template <typename T>
Orientation sign_of(const T& v) noexcept {
  if (v > 0) return Orientation::CounterClockwise;
  if (v < 0) return Orientation::Clockwise;
  return Orientation::Collinear;
}

}  // namespace

Orientation detail::orientation_wide(const Point& p, const Point& q, const Point& r) noexcept {
  const i128 ax = static_cast<i128>(q.x) - p.x;
  const i128 ay = static_cast<i128>(q.y) - p.y;
  const i128 bx = static_cast<i128>(r.x) - p.x;
  const i128 by = static_cast<i128>(r.y) - p.y;
  if (fits(ax) && fits(ay) && fits(bx) && fits(by)) {
    // |products| < 2^126, so the difference stays below 2^127.
    return sign_of(ax * by - ay * bx);
  }
  using boost::multiprecision::int256_t;
  const int256_t det = int256_t(ax) * int256_t(by) - int256_t(ay) * int256_t(bx);
  return sign_of(det);
}

bool on_open_segment(const Point& p, const Point& a, const Point& b) noexcept {
  if (orientation(a, b, p) != Orientation::Collinear) return false;
  if (a.x != b.x) {
    return std::min(a.x, b.x) < p.x && p.x < std::max(a.x, b.x);
  }
  return std::min(a.y, b.y) < p.y && p.y < std::max(a.y, b.y);
}

bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) noexcept {
  const auto o1 = orientation(a, b, c);
  const auto o2 = orientation(a, b, d);
  if (o1 == Orientation::Collinear || o2 == Orientation::Collinear || o1 == o2) return false;
  const auto o3 = orientation(c, d, a);
  const auto o4 = orientation(c, d, b);
  return o3 != Orientation::Collinear && o4 != Orientation::Collinear && o3 != o4;
}

bool segments_conflict(const Point& a, const Point& b, const Point& c, const Point& d) noexcept {
  const auto o1 = orientation(a, b, c);
  const auto o2 = orientation(a, b, d);
  if (o1 != Orientation::Collinear && o1 == o2) return false;
  const auto o3 = orientation(c, d, a);
  const auto o4 = orientation(c, d, b);
  if (o3 != Orientation::Collinear && o3 == o4) return false;
  if (o1 != Orientation::Collinear && o2 != Orientation::Collinear && o3 != Orientation::Collinear &&
      o4 != Orientation::Collinear) {
    return true;
  }
  if ((a == c && b == d) || (a == d && b == c)) return true;
  // Some endpoint is on the other segment's line; conflict iff it is strictly inside.
  auto strictly_between = [](const Point& p, const Point& s, const Point& t) {
    if (s.x != t.x) return std::min(s.x, t.x) < p.x && p.x < std::max(s.x, t.x);
    return std::min(s.y, t.y) < p.y && p.y < std::max(s.y, t.y);
  };
  return (o1 == Orientation::Collinear && strictly_between(c, a, b)) ||
         (o2 == Orientation::Collinear && strictly_between(d, a, b)) ||
         (o3 == Orientation::Collinear && strictly_between(a, c, d)) ||
         (o4 == Orientation::Collinear && strictly_between(b, c, d));
}

bool is_strictly_convex_quad(const Point& a, const Point& b, const Point& c, const Point& d) noexcept {
  const auto o = orientation(a, b, c);
  if (o == Orientation::Collinear) return false;
  return orientation(b, c, d) == o && orientation(c, d, a) == o && orientation(d, a, b) == o;
}

int compare_angle(const Point& origin, const Point& a, const Point& b) noexcept {
  auto half = [&origin](const Point& p) {
    return (p.y < origin.y || (p.y == origin.y && p.x < origin.x)) ? 1 : 0;
  };
  const int ha = half(a);
  const int hb = half(b);
  if (ha != hb) return ha < hb ? -1 : 1;
  switch (orientation(origin, a, b)) {
    case Orientation::CounterClockwise:
      return -1;
    case Orientation::Clockwise:
      return 1;
    case Orientation::Collinear:
      break;
  }
  return 0;
}

std::vector<std::uint32_t> convex_hull(std::span<const Point> points) {
  if (points.size() < 3) throw DegenerateInput("convex hull needs at least 3 points");
  std::vector<std::uint32_t> order(points.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t i, std::uint32_t j) { return points[i] < points[j]; });

  // Andrew's monotone chain; popping on non-left turns drops collinear points.
  std::vector<std::uint32_t> hull(2 * order.size());
  std::size_t k = 0;
  auto turns_left = [&](std::uint32_t o, std::uint32_t a, std::uint32_t b) {
    return orientation(points[o], points[a], points[b]) == Orientation::CounterClockwise;
  };
  for (auto idx : order) {
    while (k >= 2 && !turns_left(hull[k - 2], hull[k - 1], idx)) --k;
    hull[k++] = idx;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower && !turns_left(hull[k - 2], hull[k - 1], *it)) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) throw DegenerateInput("all points are collinear");
  return hull;
}

std::vector<std::uint32_t> hull_boundary(std::span<const Point> points) {
  const auto hull = convex_hull(points);
  std::vector<std::uint32_t> boundary;
  boundary.reserve(hull.size());
  std::vector<std::uint32_t> on_edge;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = points[hull[i]];
    const Point& b = points[hull[(i + 1) % hull.size()]];
    boundary.push_back(hull[i]);
    on_edge.clear();
    for (std::uint32_t p = 0; p < points.size(); ++p) {
      if (on_open_segment(points[p], a, b)) on_edge.push_back(p);
    }
    std::sort(on_edge.begin(), on_edge.end(), [&](std::uint32_t p, std::uint32_t q) {
      // Order along a -> b; both lie on the segment so one coordinate decides.
      const i128 dp = a.x != b.x ? i128{points[p].x} - a.x : i128{points[p].y} - a.y;
      const i128 dq = a.x != b.x ? i128{points[q].x} - a.x : i128{points[q].y} - a.y;
      const bool increasing = a.x != b.x ? a.x < b.x : a.y < b.y;
      return increasing ? dp < dq : dp > dq;
    });
    boundary.insert(boundary.end(), on_edge.begin(), on_edge.end());
  }
  return boundary;
}

}  // namespace flipcenter
