#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "flipcenter/geometry.hpp"

namespace flipcenter {

/// Uniform bucket grid over a point set, used to find segment conflicts
/// without an all-pairs scan. Cell enumeration is conservative (it may visit
/// extra cells, never misses one); every decision is made by the exact
/// predicates.
class SegmentGrid {
 public:
  explicit SegmentGrid(std::span<const Point> points);

  /// Registers segment (u, v) under an arbitrary caller id.
  void insert_segment(std::uint32_t id, std::uint32_t u, std::uint32_t v);

  /// True iff some point of the set lies on the open segment uv.
  bool has_point_inside(std::uint32_t u, std::uint32_t v) const;

  /// Calls fn(id) for every registered segment sharing a cell with uv. The
  /// same id may be reported more than once. Stops early when fn returns true
  /// and then returns true itself.
  template <typename Fn>
  bool any_nearby(std::uint32_t u, std::uint32_t v, Fn&& fn) const {
    return for_each_cell(points_[u], points_[v], [&](std::size_t cell) {
      for (auto id : segment_cells_[cell]) {
        if (fn(id)) return true;
      }
      return false;
    });
  }

  /// Whether uv conflicts with any registered segment.
  bool conflicts(std::uint32_t u, std::uint32_t v) const;

  std::span<const Point> points() const noexcept { return points_; }
  std::pair<std::uint32_t, std::uint32_t> segment(std::uint32_t id) const { return segments_[id]; }

 private:
  template <typename Fn>
  bool for_each_cell(const Point& a, const Point& b, Fn&& fn) const;

  std::size_t cell_of(const Point& p) const;

  static constexpr double kCellMargin = 1e-6;

  std::span<const Point> points_;
  std::int64_t min_x_ = 0;
  std::int64_t min_y_ = 0;
  double cell_size_ = 1.0;
  std::size_t nx_ = 1;
  std::size_t ny_ = 1;
  std::vector<std::vector<std::uint32_t>> segment_cells_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> segments_;
  std::vector<std::uint32_t> point_start_;
  std::vector<std::uint32_t> point_ids_;
};

template <typename Fn>
inline bool SegmentGrid::for_each_cell(const Point& a, const Point& b, Fn&& fn) const {
  double ax = static_cast<double>(static_cast<__int128>(a.x) - min_x_) / cell_size_;
  double ay = static_cast<double>(static_cast<__int128>(a.y) - min_y_) / cell_size_;
  double bx = static_cast<double>(static_cast<__int128>(b.x) - min_x_) / cell_size_;
  double by = static_cast<double>(static_cast<__int128>(b.y) - min_y_) / cell_size_;
  if (ax > bx) {
    std::swap(ax, bx);
    std::swap(ay, by);
  }
  const auto clamp_axis = [](double v, std::size_t n) {
    if (v <= 0.0) return std::size_t{0};
    return std::min(n - 1, static_cast<std::size_t>(v));
  };
  const std::size_t c0 = clamp_axis(ax - kCellMargin, nx_);
  const std::size_t c1 = clamp_axis(bx + kCellMargin, nx_);
  const double dx = bx - ax;
  for (std::size_t c = c0; c <= c1; ++c) {
    double lo_y;
    double hi_y;
    if (dx <= 0.0) {
      lo_y = std::min(ay, by);
      hi_y = std::max(ay, by);
    } else {
      const double x0 = std::max(ax, static_cast<double>(c));
      const double x1 = std::min(bx, static_cast<double>(c + 1));
      const double y0 = ay + (by - ay) * ((x0 - ax) / dx);
      const double y1 = ay + (by - ay) * ((x1 - ax) / dx);
      lo_y = std::min(y0, y1);
      hi_y = std::max(y0, y1);
    }
    const std::size_t r0 = clamp_axis(lo_y - kCellMargin, ny_);
    const std::size_t r1 = clamp_axis(hi_y + kCellMargin, ny_);
    for (std::size_t r = r0; r <= r1; ++r) {
      if (fn(r * nx_ + c)) return true;
    }
  }
  return false;
}

}  // namespace flipcenter
