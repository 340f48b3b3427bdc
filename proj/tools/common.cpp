#include "common.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "flipcenter/errors.hpp"

namespace flipcenter::cli {

using nlohmann::ordered_json;

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::int64_t coordinate(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ParseError(field, 0, field + ": coordinate must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

std::vector<Point> read_points_file(const std::filesystem::path& path) {
  const auto text = read_text_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  std::vector<Point> points;
  if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      const auto line = 1 + std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n');
      throw ParseError("", static_cast<std::size_t>(line), path.string() + ": " + e.what());
    }
    if (doc.is_object()) {
      if (!doc.contains("points_x") || !doc.contains("points_y") || !doc["points_x"].is_array() ||
          !doc["points_y"].is_array() || doc["points_x"].size() != doc["points_y"].size()) {
        throw ParseError("points_x", 0, path.string() + ": expected equal-length points_x and points_y arrays");
      }
      for (std::size_t i = 0; i < doc["points_x"].size(); ++i) {
        points.push_back({coordinate(doc["points_x"][i], "points_x[" + std::to_string(i) + "]"),
                          coordinate(doc["points_y"][i], "points_y[" + std::to_string(i) + "]")});
      }
    } else {
      for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& p = doc[i];
        const auto field = "[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 2) throw ParseError(field, 0, path.string() + ": expected [x, y] at " + field);
        points.push_back({coordinate(p[0], field + "[0]"), coordinate(p[1], field + "[1]")});
      }
    }
    return points;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::string rest;
    if (!(fields >> x)) {
      if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
      throw ParseError("", number, path.string() + ": expected two integers on line " + std::to_string(number));
    }
    if (fields.peek() == ',') fields.get();
    if (!(fields >> y) || (fields >> rest)) {
      throw ParseError("", number, path.string() + ": expected two integers on line " + std::to_string(number));
    }
    points.push_back({x, y});
  }
  return points;
}

ordered_json config_json(const SolverConfig& c) {
  ordered_json j;
  j["seed"] = c.seed;
  j["time_budget"] = c.time_budget;
  j["eval_seed"] = c.eval_seed;
  j["restarts"] = c.restarts;
  j["initial_temperature"] = c.initial_temperature;
  j["cooling"] = c.cooling;
  j["batch_size"] = c.batch_size;
  j["calibration_samples"] = c.calibration_samples;
  j["max_stale_batches"] = c.max_stale_batches;
  j["max_proposals"] = c.max_proposals;
  j["refresh_interval"] = c.refresh_interval;
  j["full_delta"] = c.full_delta;
  j["exact_threshold"] = c.exact_threshold;
  j["search_mode"] = to_string(c.search_mode);
  j["exact_node_limit"] = c.exact_budget.node_limit;
  j["exact_depth_limit"] = c.exact_budget.depth_limit;
  j["candidate_prefilter"] = c.candidate_prefilter;
  j["top_k"] = c.top_k;
  j["threads"] = c.threads;
  return j;
}

ordered_json distance_json(const DistanceResult& r, bool with_witness) {
  ordered_json j;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["exact"] = r.exact;
  if (with_witness) {
    auto steps = ordered_json::array();
    for (const auto& step : r.witness.steps) {
      auto flips = ordered_json::array();
      for (const auto& f : step.flips) {
        flips.push_back({{"edge", {f.edge.u, f.edge.v}}, {"opposite", {f.opposite.u, f.opposite.v}}});
      }
      steps.push_back(std::move(flips));
    }
    j["witness"] = std::move(steps);
  }
  return j;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace flipcenter::cli
