#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "flipcenter/generators.hpp"
#include "flipcenter/instance.hpp"

namespace flipcenter::cli {

namespace {

struct GenerateArgs {
  std::string kind;
  std::string output;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t num_steps = 0;
  double prob = 0.0;
  std::uint64_t seed = 0;
  std::int64_t range = 0;
  std::string points;
  std::string uid;
  std::size_t threads = 1;
  std::size_t exact_threshold = 12;
  bool quiet = false;
};

int run_generate(CLI::App& cmd, const GenerateArgs& args) {
  const bool seed_given = cmd.count("--seed") > 0;
  const std::uint64_t seed = seed_given ? args.seed : entropy_seed();
  if (!args.quiet && !seed_given) std::cerr << "seed " << seed << " (from entropy)\n";

  Instance instance;
  if (args.kind == "random") {
    RandomInstanceParams p;
    p.seed = seed;
    if (cmd.count("-n")) p.n = args.n;
    if (cmd.count("-m")) p.m = args.m;
    p.num_steps = cmd.count("--num-steps") ? args.num_steps : menu_num_steps(seed);
    p.prob = cmd.count("--prob") ? args.prob : menu_prob(seed);
    p.coordinate_range = args.range;
    if (!args.points.empty()) {
      p.point_pool = read_points_file(args.points);
      if (!cmd.count("-n")) p.n = 0;
    }
    p.uid = args.uid;
    p.threads = args.threads;
    p.exact_threshold = args.exact_threshold;
    instance = generate_random_instance(p);
  } else {
    RirsParams p;
    p.seed = seed;
    if (cmd.count("-n")) p.n = args.n;
    if (cmd.count("-m")) p.m = args.m;
    p.coordinate_range = args.range;
    p.uid = args.uid;
    p.threads = args.threads;
    instance = generate_rirs_instance(p);
  }
  write_instance(instance, args.output);
  std::cout << instance.uid << ": n=" << instance.size() << " m=" << instance.triangulations.size();
  if (instance.meta && instance.meta->kind == "random") {
    std::cout << " num_steps=" << instance.meta->num_steps << " prob=" << instance.meta->prob;
    if (instance.meta->center_objective) {
      std::cout << " center_objective=" << *instance.meta->center_objective
                << (instance.meta->center_objective_exact ? " (exact)" : " (upper bound)");
    }
  } else {
    std::cout << " overlap=" << mean_pairwise_overlap(instance);
  }
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

Handler add_generate(CLI::App& app) {
  auto args = std::make_shared<GenerateArgs>();
  auto* cmd = app.add_subcommand("generate", "Write a new benchmark instance");
  cmd->add_option("class", args->kind, "Instance class")->required()->check(CLI::IsMember({"random", "rirs"}));
  cmd->add_option("-o,--output", args->output, "Instance file")->required();
  cmd->add_option("-n", args->n, "Number of points (random: 15, rirs: 500)");
  cmd->add_option("-m", args->m, "Number of input triangulations (random: 4, rirs: 20)");
  cmd->add_option("--num-steps", args->num_steps, "Walk rounds per input (default: seeded pick from 10 20 50 100 1000)");
  cmd->add_option("--prob", args->prob, "Flip probability per round (default: seeded pick from 0.1 .. 0.9)")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", args->seed, "Master seed (default: from entropy)");
  cmd->add_option("--range", args->range, "Coordinates in [0, range) (0: max(100, 10 n))")->capture_default_str();
  cmd->add_option("--points", args->points, "Draw points from this file (random class)")->check(CLI::ExistingFile);
  cmd->add_option("--uid", args->uid, "Instance uid (default: built from the parameters)");
  cmd->add_option("--threads", args->threads, "Worker threads (0: all cores)")->capture_default_str();
  cmd->add_option("--exact-threshold", args->exact_threshold, "Exact center objective up to this many points")
      ->capture_default_str();
  cmd->add_flag("-q,--quiet", args->quiet, "No notes on stderr");
  return [cmd, args] { return run_generate(*cmd, *args); };
}

}  // namespace flipcenter::cli
