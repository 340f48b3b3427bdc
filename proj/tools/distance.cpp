#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "flipcenter/distance.hpp"
#include "flipcenter/errors.hpp"
#include "flipcenter/instance.hpp"

namespace flipcenter::cli {

namespace {

struct DistanceArgs {
  std::string instance;
  std::size_t first = 0;
  std::size_t second = 1;
  std::string center;
  std::string method = "heuristic";
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  ExactBudget budget;
  bool witness = false;
  bool json = false;
};

void print(const DistanceResult& r, const DistanceArgs& args, const std::string& note) {
  if (args.json) {
    auto j = distance_json(r, args.witness);
    if (!note.empty()) j["note"] = note;
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "lower " << r.lower << "\nupper " << r.upper << "\nexact " << (r.exact ? "yes" : "no") << "\n";
  if (!note.empty()) std::cout << note << "\n";
  if (!args.witness) return;
  for (std::size_t k = 0; k < r.witness.steps.size(); ++k) {
    std::cout << "step " << k + 1 << ":";
    for (const auto& f : r.witness.steps[k].flips) {
      std::cout << " (" << f.edge.u << ", " << f.edge.v << ")->(" << f.opposite.u << ", " << f.opposite.v << ")";
    }
    std::cout << "\n";
  }
}

int run_distance(const DistanceArgs& args) {
  const auto instance = read_instance(args.instance);
  const auto m = instance.triangulations.size();
  auto pick = [&](std::size_t i, const char* which) -> const Triangulation& {
    if (i >= m) {
      throw std::invalid_argument(std::string(which) + " index " + std::to_string(i) + " out of range (instance has " +
                                  std::to_string(m) + " triangulations)");
    }
    return instance.triangulations[i];
  };
  std::optional<Triangulation> center;
  if (!args.center.empty()) {
    const auto s = read_solution(args.center);
    const auto violations = triangulation_violations(*instance.points, s.center);
    if (!violations.empty()) throw ValidationError(violations);
    center = Triangulation::build(instance.points, s.center);
  }
  const Triangulation& a = center ? *center : pick(args.first, "first");
  const Triangulation& b = pick(args.second, "second");

  if (args.method == "exact") {
    try {
      print(exact_distance(a, b, args.budget), args, "");
    } catch (const BudgetExhausted& e) {
      print(e.partial(), args, "budget exhausted; bounds are not tight");
      return kExitRejected;
    }
  } else {
    HeuristicOptions options;
    options.seed = args.seed;
    options.restarts = args.restarts;
    options.record_witness = args.witness;
    print(heuristic_distance(a, b, options), args, "");
  }
  return kExitOk;
}

}  // namespace

Handler add_distance(CLI::App& app) {
  auto args = std::make_shared<DistanceArgs>();
  auto* cmd = app.add_subcommand("distance", "Parallel flip distance between two triangulations of an instance");
  cmd->add_option("instance", args->instance, "Instance file")->required()->check(CLI::ExistingFile);
  cmd->add_option("first", args->first, "Index of the source input")->capture_default_str();
  cmd->add_option("second", args->second, "Index of the target input")->capture_default_str();
  cmd->add_option("--center", args->center, "Use this solution's center as the source")->check(CLI::ExistingFile);
  auto* exact = cmd->add_flag_callback("--exact", [args] { args->method = "exact"; }, "Exact search");
  auto* heur = cmd->add_flag_callback("--heuristic", [args] { args->method = "heuristic"; }, "Heuristic bounds (default)");
  exact->excludes(heur);
  cmd->add_option("--seed", args->seed, "Heuristic seed")->capture_default_str();
  cmd->add_option("--restarts", args->restarts, "Heuristic restarts (0: size based)")->capture_default_str();
  cmd->add_option("--node-limit", args->budget.node_limit, "Exact search node budget")->capture_default_str();
  cmd->add_option("--depth-limit", args->budget.depth_limit, "Exact search depth cap")->capture_default_str();
  cmd->add_flag("--witness", args->witness, "Print the flip sequence");
  cmd->add_flag("--json", args->json, "JSON output");
  return [args] { return run_distance(*args); };
}

}  // namespace flipcenter::cli
