#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flipcenter/distance.hpp"
#include "flipcenter/triangulation.hpp"

namespace flipcenter {

/// How a generated instance was produced. Enough to regenerate it.
struct GeneratorInfo {
  std::string kind;  // "random" or "rirs"
  std::uint64_t seed = 0;
  std::int64_t coordinate_range = 0;
  // random class
  std::size_t num_steps = 0;
  double prob = 0.0;
  std::uint64_t center_seed = 0;
  std::vector<Edge> center;
  std::optional<std::uint64_t> center_objective;
  bool center_objective_exact = false;
  // per input: walk seed (random) or insertion seed (rirs)
  std::vector<std::uint64_t> input_seeds;

  friend bool operator==(const GeneratorInfo&, const GeneratorInfo&) = default;
};

struct Instance {
  std::string uid;
  PointSetPtr points;
  std::vector<Triangulation> triangulations;
  std::optional<GeneratorInfo> meta;

  std::size_t size() const noexcept { return points ? points->size() : 0; }
  friend bool operator==(const Instance& a, const Instance& b);
};

/// Totals as claimed by whoever produced a solution. Informational only.
struct ObjectiveSummary {
  std::string mode;
  std::uint64_t total_lower = 0;
  std::uint64_t total_upper = 0;
  std::vector<std::uint64_t> per_input_lower;
  std::vector<std::uint64_t> per_input_upper;

  friend bool operator==(const ObjectiveSummary&, const ObjectiveSummary&) = default;
};

struct Solution {
  std::string instance_uid;
  /// Not validated on load; verification reports every problem.
  std::vector<Edge> center;
  std::optional<ObjectiveSummary> objective;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Throws ParseError for malformed text and ValidationError when the point
/// set or any input triangulation is invalid. File variants throw IoError
/// when the file cannot be read or written.
Instance parse_instance(const std::string& text);
std::string format_instance(const Instance& instance);
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

Solution parse_solution(const std::string& text);
std::string format_solution(const Solution& solution);
Solution read_solution(const std::filesystem::path& path);
void write_solution(const Solution& solution, const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::size_t threads = 1;
  /// Also compute exact distances when n is at most this.
  std::size_t exact_threshold = 0;
};

struct VerificationReport {
  bool accepted = false;
  bool uid_matches = false;
  std::string expected_uid;
  std::string found_uid;
  std::vector<std::string> violations;
  /// Present only for an accepted center.
  std::vector<DistanceResult> per_input;
  std::uint64_t objective_lower = 0;
  std::uint64_t objective_upper = 0;
  bool exact = false;
  /// Claimed totals that disagree with the recomputed ones, if any.
  std::vector<std::string> notes;

  std::string to_text() const;
  std::string to_json() const;
};

/// Recomputes everything from scratch; the objective in `solution` is only
/// compared, never trusted.
VerificationReport verify_solution(const Instance& instance, const Solution& solution, const VerifyOptions& options = {});

/// Fraction of a's edges also in b.
double edge_overlap(const Triangulation& a, const Triangulation& b);
/// Mean of edge_overlap over all unordered input pairs; 1 when m == 1.
double mean_pairwise_overlap(const Instance& instance);

}  // namespace flipcenter
