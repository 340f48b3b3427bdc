#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "flipcenter/geometry.hpp"
#include "flipcenter/solver.hpp"

namespace flipcenter::cli {

/// Fresh seed from the OS for runs that did not pass one.
std::uint64_t entropy_seed();

/// Points as a JSON object with points_x/points_y, a JSON array of [x, y]
/// pairs, or plain "x y" lines. Throws ParseError or IoError.
std::vector<Point> read_points_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

/// Every solver field, for manifests.
nlohmann::ordered_json config_json(const SolverConfig& config);

nlohmann::ordered_json distance_json(const DistanceResult& result, bool with_witness);

/// UTC timestamp in ISO 8601.
std::string utc_now();

}  // namespace flipcenter::cli
