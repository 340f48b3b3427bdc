#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "flipcenter/instance.hpp"

namespace flipcenter {

/// n distinct integer points uniform in [0, range)^2, not all collinear.
/// Gives up with DegenerateInput after 100 n rejected draws.
std::vector<Point> sample_points(std::size_t n, std::int64_t range, std::uint64_t seed);

/// num_steps rounds; each round draws a maximal independent flippable set and
/// flips each member with probability prob. Rounds that flip nothing still
/// count.
Triangulation random_flip_walk(const Triangulation& center, std::size_t num_steps, double prob, std::uint64_t seed);

/// Walk lengths and flip probabilities used for random-class instances.
inline constexpr std::array<std::size_t, 5> kNumStepsMenu{10, 20, 50, 100, 1000};
inline constexpr std::array<double, 5> kProbMenu{0.1, 0.3, 0.5, 0.7, 0.9};

/// Seeded pick from the menus above, for callers that leave them open.
std::size_t menu_num_steps(std::uint64_t seed) noexcept;
double menu_prob(std::uint64_t seed) noexcept;

struct RandomInstanceParams {
  std::size_t n = 15;
  std::size_t m = 4;
  std::size_t num_steps = 10;
  double prob = 0.5;
  std::uint64_t seed = 0;
  /// 0 picks max(100, 10 n).
  std::int64_t coordinate_range = 0;
  /// When nonempty, n points are drawn from here instead of the grid; n = 0
  /// takes all of them.
  std::vector<Point> point_pool;
  std::string uid;
  std::size_t threads = 1;
  /// The stored center objective is exact up to this many points.
  std::size_t exact_threshold = 12;
};

struct RirsParams {
  std::size_t n = 500;
  std::size_t m = 20;
  /// 0 picks max(100, 10 n).
  std::int64_t coordinate_range = 0;
  std::uint64_t seed = 0;
  std::string uid;
  std::size_t threads = 1;
};

Instance generate_random_instance(const RandomInstanceParams& params);
Instance generate_rirs_instance(const RirsParams& params);

/// Rebuilds every input of a random-class instance from its metadata.
std::vector<Triangulation> replay_random_walks(const Instance& instance);

}  // namespace flipcenter
