#include <algorithm>
#include <iostream>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "flipcenter/errors.hpp"
#include "flipcenter/instance.hpp"

namespace flipcenter::cli {

namespace {

struct DrawArgs {
  std::string instance;
  std::string solution;
  std::string output;
  std::vector<std::size_t> inputs;
  bool no_inputs = false;
  bool labels = false;
  double size = 800;
};

constexpr const char* kPalette[] = {"#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string render(const Instance& instance, const std::vector<Edge>* center, const DrawArgs& args) {
  const auto& pts = instance.points->points();
  auto [minx, maxx] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.x < b.x; });
  auto [miny, maxy] = std::minmax_element(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.y < b.y; });
  const double x0 = static_cast<double>(minx->x);
  const double y1 = static_cast<double>(maxy->y);
  const double span = std::max<double>(1.0, std::max(maxx->x - minx->x, maxy->y - miny->y));
  const double margin = 20;
  const double scale = (args.size - 2 * margin) / span;
  auto X = [&](std::uint32_t i) { return margin + (static_cast<double>(pts[i].x) - x0) * scale; };
  auto Y = [&](std::uint32_t i) { return margin + (y1 - static_cast<double>(pts[i].y)) * scale; };
  const double width = 2 * margin + (maxx->x - minx->x) * scale;
  const double height = 2 * margin + (maxy->y - miny->y) * scale;
  const double radius = std::clamp(args.size / (8.0 * std::sqrt(static_cast<double>(pts.size()) + 1)), 0.8, 5.0);

  std::ostringstream s;
  s.precision(2);
  s << std::fixed;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 "
    << width << " " << height << "\">\n";
  s << "<title>" << instance.uid << "</title>\n";
  s << "<style>.input line{stroke-width:1;stroke-opacity:0.6}.center line{stroke:#d62728;stroke-width:2.5}"
       ".point{fill:#000}.label{font:10px sans-serif}</style>\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  auto lines = [&](std::span<const Edge> edges) {
    for (const auto& e : edges) {
      s << "<line x1=\"" << X(e.u) << "\" y1=\"" << Y(e.u) << "\" x2=\"" << X(e.v) << "\" y2=\"" << Y(e.v) << "\"/>\n";
    }
  };
  std::vector<std::size_t> shown = args.inputs;
  if (shown.empty() && !args.no_inputs) {
    for (std::size_t i = 0; i < instance.triangulations.size(); ++i) shown.push_back(i);
  }
  for (const auto i : shown) {
    if (i >= instance.triangulations.size()) throw std::invalid_argument("no input " + std::to_string(i));
    s << "<g class=\"input input-" << i << "\" stroke=\"" << kPalette[i % std::size(kPalette)] << "\">\n";
    lines(instance.triangulations[i].edges());
    s << "</g>\n";
  }
  if (center) {
    s << "<g class=\"center\">\n";
    lines(*center);
    s << "</g>\n";
  }
  s << "<g class=\"points\">\n";
  for (std::uint32_t i = 0; i < pts.size(); ++i) {
    s << "<circle class=\"point\" cx=\"" << X(i) << "\" cy=\"" << Y(i) << "\" r=\"" << radius << "\"/>\n";
    if (args.labels) s << "<text class=\"label\" x=\"" << X(i) + 3 << "\" y=\"" << Y(i) - 3 << "\">" << i << "</text>\n";
  }
  s << "</g>\n</svg>\n";
  return s.str();
}

int run_draw(const DrawArgs& args) {
  const auto instance = read_instance(args.instance);
  std::optional<Solution> solution;
  if (!args.solution.empty()) {
    solution = read_solution(args.solution);
    for (const auto& e : solution->center) {
      if (e.v >= instance.size()) throw ParseError("triangulation", 0, "solution edge index out of range");
    }
  }
  write_file_atomic(args.output, render(instance, solution ? &solution->center : nullptr, args));
  return kExitOk;
}

}  // namespace

Handler add_draw(CLI::App& app) {
  auto args = std::make_shared<DrawArgs>();
  auto* cmd = app.add_subcommand("draw", "Render an instance and optional center as SVG");
  cmd->add_option("instance", args->instance, "Instance file")->required();
  cmd->add_option("solution", args->solution, "Solution whose center is overlaid");
  cmd->add_option("-o,--output", args->output, "SVG file")->required();
  cmd->add_option("--inputs", args->inputs, "Input indices to draw (default: all)");
  cmd->add_flag("--no-inputs", args->no_inputs, "Draw only points and center");
  cmd->add_flag("--labels", args->labels, "Label points with their index");
  cmd->add_option("--size", args->size, "Longest side in pixels")->capture_default_str()->check(CLI::PositiveNumber);
  return [args] { return run_draw(*args); };
}

}  // namespace flipcenter::cli
