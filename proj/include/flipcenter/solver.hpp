#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flipcenter/distance.hpp"
#include "flipcenter/instance.hpp"

namespace flipcenter {

enum class EvalMode { Exact, Surrogate };

std::string to_string(EvalMode mode);

struct ObjectiveValue {
  std::vector<DistanceResult> per_input;
  std::uint64_t total_upper = 0;
  std::uint64_t total_lower = 0;
  EvalMode mode = EvalMode::Surrogate;

  ObjectiveSummary summary() const;
};

struct SolverConfig {
  std::uint64_t seed = 0;
  /// Wall-clock cap in seconds for the whole solve.
  double time_budget = 60.0;
  /// Seeds the heuristic distance walks. Kept apart from `seed` so the
  /// surrogate objective is one fixed function across solver runs.
  std::uint64_t eval_seed = 0;
  /// Heuristic restarts per distance; 0 picks the size-based default.
  std::size_t restarts = 0;

  /// Annealing. A zero initial temperature is calibrated from the first
  /// `calibration_samples` proposals, which run greedily.
  double initial_temperature = 0.0;
  double cooling = 0.995;
  /// Proposals per temperature step; 0 means 4 x flippable edge count.
  std::size_t batch_size = 0;
  std::size_t calibration_samples = 100;
  /// Chain stops after this many batches without a new incumbent.
  std::size_t max_stale_batches = 30;
  /// Hard cap on proposals per chain; 0 means none.
  std::uint64_t max_proposals = 0;

  /// Accepted moves between full surrogate refreshes.
  std::size_t refresh_interval = 50;
  /// Recompute every input's distance on each proposal, not only those whose
  /// edge difference changed. 0 = off, 1 = on, 2 = automatic (on when
  /// n * m <= 4000).
  int full_delta = 2;

  /// Exact distances are used for final reporting up to this many points.
  std::size_t exact_threshold = 12;
  /// Exact drives the whole search (requires n <= exact_threshold).
  EvalMode search_mode = EvalMode::Surrogate;
  ExactBudget exact_budget{};

  /// Candidates kept after ranking by total edge difference.
  std::size_t candidate_prefilter = 8;
  /// Candidates that seed an annealing chain.
  std::size_t top_k = 3;
  std::size_t threads = 0;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

struct Checkpoint {
  double elapsed = 0.0;
  std::uint64_t total_upper = 0;
};

struct SolveStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  std::uint64_t improvements = 0;
  double initial_temperature = 0.0;
  bool stopped_by_time = false;
  std::uint64_t best_input_upper = 0;
  std::uint64_t start_upper = 0;
};

struct SolveResult {
  Triangulation center;
  ObjectiveValue objective;
  std::vector<Checkpoint> trajectory;
  SolveStats stats;

  Solution solution(const std::string& uid) const;
};

/// Called with each new global incumbent. Calls are serialized.
using ImprovementCallback = std::function<void(const Triangulation&, std::uint64_t total_upper, double elapsed)>;

/// Sum of distances from c to every input. Exact mode throws
/// ExactModeUnavailable above the threshold or when a search runs out of
/// budget.
ObjectiveValue evaluate(const Triangulation& c, const Instance& instance, EvalMode mode, const SolverConfig& config = {},
                        bool record_witness = true);

/// Every input, then the edge-majority triangulation.
std::vector<Triangulation> initial_candidates(const Instance& instance, std::uint64_t seed);

/// Edges sorted by how many inputs contain them, most first, ties in seeded
/// random order; inserted greedily and completed at random.
Triangulation majority_triangulation(const Instance& instance, std::uint64_t seed);

/// Single-flip simulated annealing from `start`.
std::pair<Triangulation, ObjectiveValue> local_search(const Instance& instance, const Triangulation& start,
                                                      const SolverConfig& config);

SolveResult solve(const Instance& instance, const SolverConfig& config, const ImprovementCallback& on_improve = {});

}  // namespace flipcenter
