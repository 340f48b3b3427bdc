#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "flipcenter/errors.hpp"
#include "flipcenter/triangulation.hpp"

namespace flipcenter {

/// Parallel flip steps, each valid in the triangulation produced by the
/// steps before it.
struct FlipSequence {
  std::vector<ParallelFlipSet> steps;

  std::size_t size() const noexcept { return steps.size(); }
  bool empty() const noexcept { return steps.empty(); }
  /// Total number of single flips over all steps.
  std::size_t flip_count() const noexcept;
};

struct DistanceResult {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  /// Replays from the source to the target in exactly `upper` steps.
  FlipSequence witness;
  bool exact = false;
};

/// Raised when exact search runs out of nodes or depth. The partial result
/// keeps the best bounds proven so far and a valid witness for the upper one.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(DistanceResult partial);
  const DistanceResult& partial() const noexcept { return partial_; }

 private:
  DistanceResult partial_;
};

struct ExactBudget {
  std::uint64_t node_limit = 10'000'000;
  std::uint64_t depth_limit = 64;
};

struct HeuristicOptions {
  std::uint64_t seed = 0;
  /// 0 picks 8 for n <= 1000 and 2 above.
  std::size_t restarts = 0;
  bool record_witness = true;
  /// Neutral flips allowed in a row before a worsening flip is taken.
  std::size_t neutral_flips = 3;
  /// Recent triangulations a stall-breaking flip may not return to.
  std::size_t tabu_length = 8;
  /// At most this many flips per step; 0 means unlimited. 1 gives a purely
  /// sequential walk.
  std::size_t max_step_size = 0;
};

std::size_t default_restarts(std::size_t n) noexcept;

/// max(ceil(d / floor(t / 2)), [d > 0]) where d is the number of edges of a
/// missing from b and t the triangle count. Zero iff a == b.
std::uint64_t distance_lower_bound(const Triangulation& a, const Triangulation& b);

/// Iterative deepening over all independent flip sets. Throws BudgetExhausted
/// with the best bounds found when the budget runs out.
DistanceResult exact_distance(const Triangulation& from, const Triangulation& to, const ExactBudget& budget = {});

/// Greedy parallel walk with seeded restarts; keeps the shortest.
DistanceResult heuristic_distance(const Triangulation& from, const Triangulation& to, std::uint64_t seed,
                                  std::size_t restarts = 0);
DistanceResult heuristic_distance(const Triangulation& from, const Triangulation& to, const HeuristicOptions& options);

/// Number of single flips used by a greedy one-flip-per-step walk.
std::uint64_t sequential_greedy_walk_length(const Triangulation& from, const Triangulation& to, std::uint64_t seed = 0);

/// Applies every step in order. Throws InvalidStep naming the first bad step.
Triangulation replay(const Triangulation& source, const FlipSequence& sequence);

}  // namespace flipcenter
