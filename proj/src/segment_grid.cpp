#include "flipcenter/segment_grid.hpp"

#include <algorithm>
#include <cmath>

namespace flipcenter {
namespace {

constexpr std::size_t kMaxCellsPerAxis = 4096;

}  // namespace

SegmentGrid::SegmentGrid(std::span<const Point> points) : points_(points) {
  if (points.empty()) {
    segment_cells_.resize(1);
    point_start_.assign(2, 0);
    return;
  }
  std::int64_t max_x = points[0].x;
  std::int64_t max_y = points[0].y;
  min_x_ = points[0].x;
  min_y_ = points[0].y;
  for (const auto& p : points) {
    min_x_ = std::min(min_x_, p.x);
    min_y_ = std::min(min_y_, p.y);
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double width = std::max(1.0, static_cast<double>(static_cast<__int128>(max_x) - min_x_));
  const double height = std::max(1.0, static_cast<double>(static_cast<__int128>(max_y) - min_y_));
  // Roughly one point per cell.
  cell_size_ = std::sqrt(width * height / static_cast<double>(points.size()));
  cell_size_ = std::max({cell_size_, width / kMaxCellsPerAxis, height / kMaxCellsPerAxis});
  nx_ = std::clamp<std::size_t>(static_cast<std::size_t>(width / cell_size_) + 1, 1, kMaxCellsPerAxis);
  ny_ = std::clamp<std::size_t>(static_cast<std::size_t>(height / cell_size_) + 1, 1, kMaxCellsPerAxis);
  segment_cells_.resize(nx_ * ny_);

  point_start_.assign(nx_ * ny_ + 1, 0);
  for (const auto& p : points) ++point_start_[cell_of(p) + 1];
  for (std::size_t c = 0; c < nx_ * ny_; ++c) point_start_[c + 1] += point_start_[c];
  point_ids_.resize(points.size());
  auto fill = point_start_;
  for (std::uint32_t i = 0; i < points.size(); ++i) point_ids_[fill[cell_of(points[i])]++] = i;
}

std::size_t SegmentGrid::cell_of(const Point& p) const {
  const double fx = static_cast<double>(static_cast<__int128>(p.x) - min_x_) / cell_size_;
  const double fy = static_cast<double>(static_cast<__int128>(p.y) - min_y_) / cell_size_;
  const auto cx = std::min(nx_ - 1, static_cast<std::size_t>(std::max(0.0, fx)));
  const auto cy = std::min(ny_ - 1, static_cast<std::size_t>(std::max(0.0, fy)));
  return cy * nx_ + cx;
}

void SegmentGrid::insert_segment(std::uint32_t id, std::uint32_t u, std::uint32_t v) {
  if (segments_.size() <= id) segments_.resize(id + 1);
  segments_[id] = {u, v};
  for_each_cell(points_[u], points_[v], [&](std::size_t cell) {
    segment_cells_[cell].push_back(id);
    return false;
  });
}

bool SegmentGrid::has_point_inside(std::uint32_t u, std::uint32_t v) const {
  const Point& a = points_[u];
  const Point& b = points_[v];
  return for_each_cell(a, b, [&](std::size_t cell) {
    for (auto i = point_start_[cell]; i < point_start_[cell + 1]; ++i) {
      if (on_open_segment(points_[point_ids_[i]], a, b)) return true;
    }
    return false;
  });
}

bool SegmentGrid::conflicts(std::uint32_t u, std::uint32_t v) const {
  const Point& a = points_[u];
  const Point& b = points_[v];
  return any_nearby(u, v, [&](std::uint32_t id) {
    const auto [s, t] = segments_[id];
    return segments_conflict(a, b, points_[s], points_[t]);
  });
}

}  // namespace flipcenter
