#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>

#include "commands.hpp"
#include "common.hpp"
#include "flipcenter/errors.hpp"
#include "flipcenter/instance.hpp"
#include "flipcenter/parallel.hpp"
#include "flipcenter/solver.hpp"

namespace flipcenter::cli {

namespace {

struct SolveArgs {
  std::string instance;
  std::string output;
  std::string manifest;
  std::string config_file;
  std::uint64_t seed = 0;
  std::string search_mode = "surrogate";
  bool quiet = false;
  SolverConfig config;
};

/// Options from a TOML or INI file, keyed by long flag name with dashes or
/// underscores, optionally under a [solve] section. Flags on the command line
/// take precedence.
void apply_config_file(CLI::App& cmd, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  for (const auto& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == "solve")) continue;
    std::string name = item.name;
    std::replace(name.begin(), name.end(), '_', '-');
    CLI::Option* opt = nullptr;
    try {
      opt = cmd.get_option("--" + name);
    } catch (const CLI::OptionNotFound&) {
      throw std::invalid_argument(path + ": unknown option '" + item.name + "'");
    }
    if (opt->count() > 0 || name == "config") continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

int run_solve(CLI::App& cmd, SolveArgs& args, const std::vector<std::string>& argv) {
  if (!args.config_file.empty()) apply_config_file(cmd, args.config_file);
  const auto started = std::chrono::steady_clock::now();
  const auto started_at = utc_now();
  const auto instance = read_instance(args.instance);

  SolverConfig config = args.config;
  const bool seed_given = cmd.count("--seed") > 0;
  config.seed = seed_given ? args.seed : entropy_seed();
  config.search_mode = args.search_mode == "exact" ? EvalMode::Exact : EvalMode::Surrogate;
  config.validate();
  if (!args.quiet && !seed_given) std::cerr << "seed " << config.seed << " (from entropy)\n";

  std::mutex io;
  const auto on_improve = [&](const Triangulation& c, std::uint64_t total, double elapsed) {
    Solution s{instance.uid, {c.edges().begin(), c.edges().end()}, ObjectiveSummary{"surrogate", 0, total, {}, {}}};
    std::lock_guard lock(io);
    write_solution(s, args.output);
    if (!args.quiet) std::cerr << "[" << elapsed << "s] incumbent " << total << "\n";
  };
  const auto result = solve(instance, config, on_improve);
  write_solution(result.solution(instance.uid), args.output);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  nlohmann::ordered_json m;
  m["command"] = "solve";
  m["version"] = kVersion;
  m["arguments"] = std::vector<std::string>(argv.begin() + 1, argv.end());
  m["instance"] = args.instance;
  m["instance_uid"] = instance.uid;
  m["output"] = args.output;
  m["seed"] = config.seed;
  m["seed_source"] = seed_given ? "argument" : "entropy";
  m["threads_resolved"] = resolve_threads(config.threads);
  m["config"] = config_json(config);
  m["started_at"] = started_at;
  m["wall_clock_seconds"] = wall;
  const auto summary = result.objective.summary();
  m["objective"] = {{"mode", summary.mode},
                    {"total_lower", summary.total_lower},
                    {"total_upper", summary.total_upper},
                    {"per_input_lower", summary.per_input_lower},
                    {"per_input_upper", summary.per_input_upper}};
  m["stats"] = {{"proposals", result.stats.proposals},
                {"accepted", result.stats.accepted},
                {"improvements", result.stats.improvements},
                {"initial_temperature", result.stats.initial_temperature},
                {"stopped_by_time", result.stats.stopped_by_time},
                {"start_upper", result.stats.start_upper},
                {"best_input_upper", result.stats.best_input_upper}};
  auto trajectory = nlohmann::ordered_json::array();
  for (const auto& c : result.trajectory) trajectory.push_back({{"elapsed", c.elapsed}, {"total_upper", c.total_upper}});
  m["trajectory"] = std::move(trajectory);
  const std::string manifest = args.manifest.empty() ? args.output + ".manifest.json" : args.manifest;
  write_file_atomic(manifest, m.dump(2) + "\n");

  std::cout << "objective " << summary.total_upper << " (" << summary.mode << ", lower bound " << summary.total_lower
            << ")\n";
  std::cout << "best single input " << result.stats.best_input_upper << "\n";
  return kExitOk;
}

}  // namespace

Handler add_solve(CLI::App& app, const std::vector<std::string>& argv) {
  auto args = std::make_shared<SolveArgs>();
  auto* cmd = app.add_subcommand("solve", "Search for a center triangulation");
  cmd->add_option("--config", args->config_file, "Read options from a TOML or INI file (flag names as keys)")
      ->check(CLI::ExistingFile);
  cmd->add_option("instance", args->instance, "Instance file")->required()->check(CLI::ExistingFile);
  cmd->add_option("-o,--output", args->output, "Solution file, rewritten on every improvement")->required();
  cmd->add_option("--manifest", args->manifest, "Run manifest (default: <output>.manifest.json)");
  cmd->add_option("--seed", args->seed, "Search seed (default: from entropy, recorded in the manifest)");
  cmd->add_option("--time-budget", args->config.time_budget, "Wall-clock cap in seconds")->capture_default_str();
  cmd->add_option("--eval-seed", args->config.eval_seed, "Seed of the heuristic distance walks")->capture_default_str();
  cmd->add_option("--restarts", args->config.restarts, "Heuristic restarts per distance (0: size based)")
      ->capture_default_str();
  cmd->add_option("--initial-temperature", args->config.initial_temperature, "Annealing start (0: calibrate)")
      ->capture_default_str();
  cmd->add_option("--cooling", args->config.cooling, "Temperature factor per batch")->capture_default_str();
  cmd->add_option("--batch-size", args->config.batch_size, "Proposals per batch (0: 4 x flippable edges)")
      ->capture_default_str();
  cmd->add_option("--calibration-samples", args->config.calibration_samples, "Greedy proposals used to calibrate")
      ->capture_default_str();
  cmd->add_option("--max-stale-batches", args->config.max_stale_batches, "Batches without improvement before a chain stops")
      ->capture_default_str();
  cmd->add_option("--max-proposals", args->config.max_proposals, "Proposal cap per chain (0: none)")->capture_default_str();
  cmd->add_option("--refresh-interval", args->config.refresh_interval, "Accepted moves between full refreshes")
      ->capture_default_str();
  cmd->add_option("--full-delta", args->config.full_delta, "Recompute all inputs per proposal: 0 off, 1 on, 2 auto")
      ->capture_default_str()
      ->check(CLI::Range(0, 2));
  cmd->add_option("--exact-threshold", args->config.exact_threshold, "Report exact distances up to this many points")
      ->capture_default_str();
  cmd->add_option("--search-mode", args->search_mode, "Objective driving the search")
      ->capture_default_str()
      ->check(CLI::IsMember({"surrogate", "exact"}));
  cmd->add_option("--exact-node-limit", args->config.exact_budget.node_limit, "Node budget per exact distance")
      ->capture_default_str();
  cmd->add_option("--exact-depth-limit", args->config.exact_budget.depth_limit, "Depth cap per exact distance")
      ->capture_default_str();
  cmd->add_option("--candidate-prefilter", args->config.candidate_prefilter, "Starts kept after edge-difference ranking")
      ->capture_default_str();
  cmd->add_option("--top-k", args->config.top_k, "Starts that get an annealing chain")->capture_default_str();
  cmd->add_option("--threads", args->config.threads, "Worker threads (0: all cores)")->capture_default_str();
  cmd->add_flag("-q,--quiet", args->quiet, "No progress on stderr");
  return [cmd, args, argv] { return run_solve(*cmd, *args, argv); };
}

}  // namespace flipcenter::cli
