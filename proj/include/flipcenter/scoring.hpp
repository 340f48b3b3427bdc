#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace flipcenter {

inline constexpr std::array<int, 12> kRankPoints{40, 32, 25, 19, 14, 10, 7, 5, 4, 3, 2, 1};

/// Points for a 1-based rank; 0 past the table.
int rank_points(std::size_t rank) noexcept;

/// Lower objective is better. A team's rank is one plus the number of teams
/// strictly better, so tied teams share points and the next value skips ahead.
std::map<std::string, int> score(const std::map<std::string, std::uint64_t>& objectives);

/// Sum of per-instance points.
std::map<std::string, int> score_totals(const std::vector<std::map<std::string, std::uint64_t>>& instances);

}  // namespace flipcenter
