#include "flipcenter/scoring.hpp"

namespace flipcenter {

int rank_points(std::size_t rank) noexcept {
  if (rank == 0 || rank > kRankPoints.size()) return 0;
  return kRankPoints[rank - 1];
}

std::map<std::string, int> score(const std::map<std::string, std::uint64_t>& objectives) {
  std::map<std::string, int> out;
  for (const auto& [team, value] : objectives) {
    std::size_t better = 0;
    for (const auto& [other, v] : objectives) better += v < value ? 1 : 0;
    out[team] = rank_points(better + 1);
  }
  return out;
}

std::map<std::string, int> score_totals(const std::vector<std::map<std::string, std::uint64_t>>& instances) {
  std::map<std::string, int> totals;
  for (const auto& objectives : instances) {
    for (const auto& [team, points] : score(objectives)) totals[team] += points;
  }
  return totals;
}

}  // namespace flipcenter
