#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "flipcenter/distance.hpp"
#include "flipcenter/errors.hpp"
#include "flipcenter/generators.hpp"
#include "flipcenter/instance.hpp"
#include "flipcenter/scoring.hpp"
#include "flipcenter/solver.hpp"
#include "flipcenter/triangulation.hpp"

namespace py = pybind11;
using namespace flipcenter;

namespace {

using EdgeTuple = std::pair<std::uint32_t, std::uint32_t>;

std::vector<EdgeTuple> edge_tuples(std::span<const Edge> edges) {
  std::vector<EdgeTuple> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

std::vector<Edge> to_edges(const std::vector<EdgeTuple>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (const auto& [u, v] : edges) out.emplace_back(u, v);
  return out;
}

std::vector<Point> to_points(const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back({x, y});
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> point_tuples(const PointSet& ps) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& p : ps.points()) out.emplace_back(p.x, p.y);
  return out;
}

/// Each step as a list of (edge, new edge) pairs.
py::list witness_list(const FlipSequence& seq) {
  py::list steps;
  for (const auto& step : seq.steps) {
    py::list flips;
    for (const auto& f : step.flips) {
      flips.append(py::make_tuple(py::make_tuple(f.edge.u, f.edge.v), py::make_tuple(f.opposite.u, f.opposite.v)));
    }
    steps.append(flips);
  }
  return steps;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Center triangulations under parallel flips";
  m.attr("__version__") = "0.1.0";

  auto base = py::register_exception<Error>(m, "FlipcenterError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<ValidationError>(m, "ValidationError", base);
  py::register_exception<NotATriangulation>(m, "NotATriangulation", base);
  py::register_exception<NotFlippable>(m, "NotFlippable", base);
  py::register_exception<NotIndependent>(m, "NotIndependent", base);
  py::register_exception<UnknownEdge>(m, "UnknownEdge", base);
  py::register_exception<DegenerateInput>(m, "DegenerateInput", base);
  py::register_exception<DuplicatePoint>(m, "DuplicatePoint", base);
  py::register_exception<PointSetMismatch>(m, "PointSetMismatch", base);
  py::register_exception<InvalidStep>(m, "InvalidStep", base);
  py::register_exception<IoError>(m, "IoError", base);
  py::register_exception<ExactModeUnavailable>(m, "ExactModeUnavailable", base);
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted", base);

  py::class_<Triangulation>(m, "Triangulation")
      .def_static(
          "from_edges",
          [](const std::vector<std::pair<std::int64_t, std::int64_t>>& points, const std::vector<EdgeTuple>& edges) {
            return Triangulation::build(make_point_set(to_points(points)), to_edges(edges));
          },
          py::arg("points"), py::arg("edges"), "Validated triangulation; raises NotATriangulation listing every problem.")
      .def_property_readonly("points", [](const Triangulation& t) { return point_tuples(t.points()); })
      .def_property_readonly("num_points", [](const Triangulation& t) { return t.points().size(); })
      .def_property_readonly("hull_size", [](const Triangulation& t) { return t.points().hull_size(); })
      .def("edges", [](const Triangulation& t) { return edge_tuples(t.edges()); })
      .def("triangles",
           [](const Triangulation& t) {
             std::vector<std::array<std::uint32_t, 3>> out;
             for (const auto& tri : t.triangles()) out.push_back({tri[0], tri[1], tri[2]});
             return out;
           })
      .def("contains", [](const Triangulation& t, std::uint32_t u, std::uint32_t v) { return t.contains(Edge(u, v)); })
      .def("flippable_edges",
           [](const Triangulation& t) {
             std::vector<EdgeTuple> out;
             for (const auto& f : flippable_edges(t)) out.emplace_back(f.edge.u, f.edge.v);
             return out;
           })
      .def("flip", [](const Triangulation& t, std::uint32_t u, std::uint32_t v) { return flip(t, Edge(u, v)); })
      .def("parallel_flip",
           [](const Triangulation& t, const std::vector<EdgeTuple>& edges) {
             return apply_parallel_flip(t, to_edges(edges));
           })
      .def("maximal_independent_set",
           [](const Triangulation& t, std::uint64_t seed) {
             return edge_tuples(maximal_independent_flippable_set(t, seed).edges());
           },
           py::arg("seed") = 0)
      .def_property_readonly("hash", &Triangulation::hash)
      .def("__eq__", [](const Triangulation& a, const Triangulation& b) { return a == b; })
      .def("__hash__", &Triangulation::hash)
      .def("__len__", [](const Triangulation& t) { return t.edges().size(); })
      .def("__repr__", [](const Triangulation& t) {
        return "<Triangulation n=" + std::to_string(t.points().size()) + " edges=" + std::to_string(t.edges().size()) +
               ">";
      });

  m.def(
      "greedy_random_triangulation",
      [](const std::vector<std::pair<std::int64_t, std::int64_t>>& points, std::uint64_t seed) {
        return greedy_random_triangulation(make_point_set(to_points(points)), seed);
      },
      py::arg("points"), py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("crossing_number", &crossing_number);

  py::class_<DistanceResult>(m, "DistanceResult")
      .def_readonly("lower", &DistanceResult::lower)
      .def_readonly("upper", &DistanceResult::upper)
      .def_readonly("exact", &DistanceResult::exact)
      .def_property_readonly("witness", [](const DistanceResult& r) { return witness_list(r.witness); })
      .def("__repr__", [](const DistanceResult& r) {
        return "<DistanceResult lower=" + std::to_string(r.lower) + " upper=" + std::to_string(r.upper) +
               (r.exact ? " exact>" : ">");
      });

  m.def("distance_lower_bound", &distance_lower_bound);
  m.def(
      "exact_distance",
      [](const Triangulation& a, const Triangulation& b, std::uint64_t node_limit, std::uint64_t depth_limit) {
        return exact_distance(a, b, ExactBudget{node_limit, depth_limit});
      },
      py::arg("source"), py::arg("target"), py::arg("node_limit") = ExactBudget{}.node_limit,
      py::arg("depth_limit") = ExactBudget{}.depth_limit, py::call_guard<py::gil_scoped_release>());
  m.def(
      "heuristic_distance",
      [](const Triangulation& a, const Triangulation& b, std::uint64_t seed, std::size_t restarts) {
        return heuristic_distance(a, b, seed, restarts);
      },
      py::arg("source"), py::arg("target"), py::arg("seed") = 0, py::arg("restarts") = 0,
      py::call_guard<py::gil_scoped_release>());

  py::class_<Instance>(m, "Instance")
      .def_readonly("uid", &Instance::uid)
      .def_property_readonly("points", [](const Instance& i) { return point_tuples(*i.points); })
      .def_readonly("triangulations", &Instance::triangulations)
      .def_property_readonly("num_points", &Instance::size)
      .def_property_readonly("kind", [](const Instance& i) { return i.meta ? py::cast(i.meta->kind) : py::none(); })
      .def_property_readonly("center",
                             [](const Instance& i) {
                               if (!i.meta || i.meta->center.empty()) return py::object(py::none());
                               return py::cast(Triangulation::build(i.points, i.meta->center));
                             })
      .def_property_readonly("center_objective",
                             [](const Instance& i) {
                               return i.meta && i.meta->center_objective ? py::cast(*i.meta->center_objective)
                                                                         : py::none();
                             })
      .def("to_json", &format_instance)
      .def("write", [](const Instance& i, const std::filesystem::path& p) { write_instance(i, p); })
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) {
        return "<Instance " + i.uid + " n=" + std::to_string(i.size()) +
               " m=" + std::to_string(i.triangulations.size()) + ">";
      });

  m.def("parse_instance", &parse_instance);
  m.def("read_instance", [](const std::filesystem::path& p) { return read_instance(p); });
  m.def(
      "make_instance",
      [](const std::string& uid, const std::vector<Triangulation>& inputs) {
        if (inputs.empty()) throw std::invalid_argument("at least one triangulation is required");
        for (const auto& t : inputs) require_same_points(inputs.front(), t);
        return Instance{uid, inputs.front().point_set(), inputs, std::nullopt};
      },
      py::arg("uid"), py::arg("triangulations"));

  m.def(
      "generate_random_instance",
      [](std::size_t n, std::size_t m_, std::size_t num_steps, double prob, std::uint64_t seed, std::int64_t range,
         std::size_t threads) {
        RandomInstanceParams p;
        p.n = n;
        p.m = m_;
        p.num_steps = num_steps;
        p.prob = prob;
        p.seed = seed;
        p.coordinate_range = range;
        p.threads = threads;
        return generate_random_instance(p);
      },
      py::arg("n") = 15, py::arg("m") = 4, py::arg("num_steps") = 10, py::arg("prob") = 0.5, py::arg("seed") = 0,
      py::arg("coordinate_range") = 0, py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def(
      "generate_rirs_instance",
      [](std::size_t n, std::size_t m_, std::uint64_t seed, std::int64_t range, std::size_t threads) {
        return generate_rirs_instance({.n = n, .m = m_, .coordinate_range = range, .seed = seed, .threads = threads});
      },
      py::arg("n") = 500, py::arg("m") = 20, py::arg("seed") = 0, py::arg("coordinate_range") = 0,
      py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("replay_random_walks", &replay_random_walks);
  m.def("mean_pairwise_overlap", &mean_pairwise_overlap);
  m.def("edge_overlap", &edge_overlap);

  py::enum_<EvalMode>(m, "EvalMode").value("EXACT", EvalMode::Exact).value("SURROGATE", EvalMode::Surrogate);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](py::kwargs kwargs) {
        auto config = py::cast(SolverConfig{});
        for (const auto& [k, v] : kwargs) {
          const auto name = py::cast<std::string>(k);
          if (!py::hasattr(config, name.c_str())) throw py::type_error("unknown solver option '" + name + "'");
          config.attr(name.c_str()) = v;
        }
        return config.cast<SolverConfig>();
      }))
      .def_readwrite("seed", &SolverConfig::seed)
      .def_readwrite("time_budget", &SolverConfig::time_budget)
      .def_readwrite("eval_seed", &SolverConfig::eval_seed)
      .def_readwrite("restarts", &SolverConfig::restarts)
      .def_readwrite("initial_temperature", &SolverConfig::initial_temperature)
      .def_readwrite("cooling", &SolverConfig::cooling)
      .def_readwrite("batch_size", &SolverConfig::batch_size)
      .def_readwrite("calibration_samples", &SolverConfig::calibration_samples)
      .def_readwrite("max_stale_batches", &SolverConfig::max_stale_batches)
      .def_readwrite("max_proposals", &SolverConfig::max_proposals)
      .def_readwrite("refresh_interval", &SolverConfig::refresh_interval)
      .def_readwrite("full_delta", &SolverConfig::full_delta)
      .def_readwrite("exact_threshold", &SolverConfig::exact_threshold)
      .def_readwrite("search_mode", &SolverConfig::search_mode)
      .def_readwrite("candidate_prefilter", &SolverConfig::candidate_prefilter)
      .def_readwrite("top_k", &SolverConfig::top_k)
      .def_readwrite("threads", &SolverConfig::threads)
      .def("validate", &SolverConfig::validate);

  py::class_<ObjectiveValue>(m, "ObjectiveValue")
      .def_readonly("per_input", &ObjectiveValue::per_input)
      .def_readonly("total_upper", &ObjectiveValue::total_upper)
      .def_readonly("total_lower", &ObjectiveValue::total_lower)
      .def_readonly("mode", &ObjectiveValue::mode);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("center", &SolveResult::center)
      .def_readonly("objective", &SolveResult::objective)
      .def_property_readonly("trajectory",
                             [](const SolveResult& r) {
                               std::vector<std::pair<double, std::uint64_t>> out;
                               for (const auto& c : r.trajectory) out.emplace_back(c.elapsed, c.total_upper);
                               return out;
                             })
      .def_property_readonly("proposals", [](const SolveResult& r) { return r.stats.proposals; })
      .def_property_readonly("best_input_upper", [](const SolveResult& r) { return r.stats.best_input_upper; })
      .def("solution_json",
           [](const SolveResult& r, const std::string& uid) { return format_solution(r.solution(uid)); });

  m.def(
      "evaluate",
      [](const Triangulation& c, const Instance& inst, EvalMode mode, const SolverConfig& config) {
        return evaluate(c, inst, mode, config);
      },
      py::arg("center"), py::arg("instance"), py::arg("mode") = EvalMode::Surrogate, py::arg("config") = SolverConfig{},
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "solve",
      [](const Instance& inst, const SolverConfig& config) {
        py::gil_scoped_release release;
        return solve(inst, config);
      },
      py::arg("instance"), py::arg("config") = SolverConfig{});

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("accepted", &VerificationReport::accepted)
      .def_readonly("uid_matches", &VerificationReport::uid_matches)
      .def_readonly("violations", &VerificationReport::violations)
      .def_readonly("per_input", &VerificationReport::per_input)
      .def_readonly("objective_lower", &VerificationReport::objective_lower)
      .def_readonly("objective_upper", &VerificationReport::objective_upper)
      .def_readonly("exact", &VerificationReport::exact)
      .def_readonly("notes", &VerificationReport::notes)
      .def("to_text", &VerificationReport::to_text)
      .def("to_json", &VerificationReport::to_json);

  m.def(
      "verify",
      [](const Instance& inst, const std::vector<EdgeTuple>& center, std::optional<std::string> uid,
         std::uint64_t seed, std::size_t exact_threshold) {
        Solution s{uid.value_or(inst.uid), to_edges(center), std::nullopt};
        VerifyOptions options;
        options.seed = seed;
        options.exact_threshold = exact_threshold;
        return verify_solution(inst, s, options);
      },
      py::arg("instance"), py::arg("center"), py::arg("uid") = py::none(), py::arg("seed") = 0,
      py::arg("exact_threshold") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "verify_solution_json",
      [](const Instance& inst, const std::string& solution_text) {
        return verify_solution(inst, parse_solution(solution_text));
      },
      py::arg("instance"), py::arg("solution_text"));

  m.def("score", &score, py::arg("objectives"));
  m.def("score_totals", &score_totals, py::arg("instances"));
  m.attr("RANK_POINTS") = std::vector<int>(kRankPoints.begin(), kRankPoints.end());
}
