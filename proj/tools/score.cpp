#include <algorithm>
#include <charconv>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "flipcenter/errors.hpp"
#include "flipcenter/scoring.hpp"

namespace flipcenter::cli {

namespace {

namespace fs = std::filesystem;

struct ScoreArgs {
  std::string directory;
  bool json = false;
  bool per_instance = false;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\"");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\"");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(trim(field));
  return out;
}

using Results = std::map<std::string, std::map<std::string, std::uint64_t>>;

/// Rows are instance_uid,team,objective. A header row is skipped. A team
/// listed twice for one instance keeps its best objective.
void read_results(const fs::path& path, Results& results) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto fields = split(line);
    if (number == 1 && !fields.empty() && fields[0] == "instance_uid") continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("", number, path.string() + ":" + std::to_string(number) + ": " + why);
    };
    if (fields.size() != 3) fail("expected instance_uid,team,objective");
    std::uint64_t value = 0;
    const auto& text = fields[2];
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail("objective must be a non-negative integer");
    if (fields[0].empty() || fields[1].empty()) fail("empty instance or team");
    auto& slot = results[fields[0]];
    const auto it = slot.find(fields[1]);
    if (it == slot.end() || value < it->second) slot[fields[1]] = value;
  }
}

int run_score(const ScoreArgs& args) {
  const fs::path dir(args.directory);
  if (!fs::is_directory(dir)) throw IoError(args.directory + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no .csv files in " + args.directory);

  Results results;
  for (const auto& f : files) read_results(f, results);

  std::map<std::string, int> totals;
  std::map<std::string, std::map<std::string, int>> points;
  for (const auto& [uid, objectives] : results) {
    points[uid] = score(objectives);
    for (const auto& [team, p] : points[uid]) totals[team] += p;
  }
  std::vector<std::pair<std::string, int>> order(totals.begin(), totals.end());
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

  if (args.json) {
    nlohmann::ordered_json j;
    j["instances"] = results.size();
    auto teams = nlohmann::ordered_json::array();
    for (const auto& [team, total] : order) teams.push_back({{"team", team}, {"points", total}});
    j["totals"] = std::move(teams);
    if (args.per_instance) {
      nlohmann::ordered_json per;
      for (const auto& [uid, p] : points) per[uid] = p;
      j["per_instance"] = std::move(per);
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }
  if (args.per_instance) {
    for (const auto& [uid, p] : points) {
      std::cout << uid << "\n";
      for (const auto& [team, v] : p) {
        std::cout << "  " << std::left << std::setw(24) << team << std::right << std::setw(12)
                  << results[uid][team] << std::setw(6) << v << "\n";
      }
    }
    std::cout << "\n";
  }
  std::cout << "rank  team                      points\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t rank = i + 1;
    while (rank > 1 && order[rank - 2].second == order[i].second) --rank;
    std::cout << std::left << std::setw(6) << rank << std::setw(24) << order[i].first << std::right << std::setw(8)
              << order[i].second << "\n";
  }
  return kExitOk;
}

}  // namespace

Handler add_score(CLI::App& app) {
  auto args = std::make_shared<ScoreArgs>();
  auto* cmd = app.add_subcommand("score", "Rank teams per instance and sum their points");
  cmd->add_option("directory", args->directory, "Directory of .csv files with rows instance_uid,team,objective")
      ->required();
  cmd->add_flag("--json", args->json, "JSON output");
  cmd->add_flag("--per-instance", args->per_instance, "Also list points for each instance");
  return [args] { return run_score(*args); };
}

}  // namespace flipcenter::cli
