#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "flipcenter/instance.hpp"

namespace flipcenter::cli {

namespace {

struct VerifyArgs {
  std::string instance;
  std::string solution;
  std::string report;
  bool json = false;
  VerifyOptions options;
};

int run_verify(const VerifyArgs& args) {
  const auto instance = read_instance(args.instance);
  const auto solution = read_solution(args.solution);
  const auto report = verify_solution(instance, solution, args.options);
  const auto text = args.json ? report.to_json() : report.to_text();
  if (args.report.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(args.report, text);
    std::cout << (report.accepted ? "ACCEPTED" : "REJECTED") << "\n";
  }
  return report.accepted ? kExitOk : kExitRejected;
}

}  // namespace

Handler add_verify(CLI::App& app) {
  auto args = std::make_shared<VerifyArgs>();
  auto* cmd = app.add_subcommand("verify", "Check a solution and recompute its objective");
  cmd->add_option("instance", args->instance, "Instance file")->required()->check(CLI::ExistingFile);
  cmd->add_option("solution", args->solution, "Solution file")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--json", args->json, "Machine-readable report");
  cmd->add_option("--report", args->report, "Write the report here instead of stdout");
  cmd->add_option("--seed", args->options.seed, "Seed of the heuristic distance walks")->capture_default_str();
  cmd->add_option("--restarts", args->options.restarts, "Heuristic restarts (0: size based)")->capture_default_str();
  cmd->add_option("--threads", args->options.threads, "Worker threads (0: all cores)")->capture_default_str();
  cmd->add_option("--exact-threshold", args->options.exact_threshold, "Exact distances up to this many points")
      ->capture_default_str();
  return [args] { return run_verify(*args); };
}

}  // namespace flipcenter::cli
