#include "flipcenter/generators.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "flipcenter/errors.hpp"
#include "flipcenter/parallel.hpp"

namespace flipcenter {
namespace {

std::int64_t resolve_range(std::int64_t range, std::size_t n) {
  if (range > 0) return range;
  return std::max<std::int64_t>(100, 10 * static_cast<std::int64_t>(n));
}

std::string prob_text(double p) {
  std::ostringstream s;
  s << p;
  return s.str();
}

std::uint64_t center_objective(const Triangulation& center, const std::vector<Triangulation>& inputs,
                               std::uint64_t seed, bool exact, std::size_t threads, bool& all_exact) {
  std::vector<std::uint64_t> values(inputs.size());
  std::vector<char> exactness(inputs.size(), 0);
  parallel_for(inputs.size(), threads, [&](std::size_t i) {
    DistanceResult d;
    if (exact) {
      try {
        d = exact_distance(center, inputs[i]);
      } catch (const BudgetExhausted& e) {
        d = e.partial();
      }
    } else {
      d = heuristic_distance(center, inputs[i], derive_seed(seed, i));
    }
    values[i] = d.upper;
    exactness[i] = d.exact;
  });
  all_exact = std::all_of(exactness.begin(), exactness.end(), [](char c) { return c != 0; });
  std::uint64_t total = 0;
  for (auto v : values) total += v;
  return total;
}

}  // namespace

std::size_t menu_num_steps(std::uint64_t seed) noexcept {
  return kNumStepsMenu[derive_seed(seed, 0x5157) % kNumStepsMenu.size()];
}

double menu_prob(std::uint64_t seed) noexcept { return kProbMenu[derive_seed(seed, 0x9b0b) % kProbMenu.size()]; }

std::vector<Point> sample_points(std::size_t n, std::int64_t range, std::uint64_t seed) {
  if (n < 3) throw DegenerateInput("at least 3 points are required");
  if (range <= 0 || static_cast<double>(range) * static_cast<double>(range) < static_cast<double>(n)) {
    throw DegenerateInput("coordinate range too small for " + std::to_string(n) + " distinct points");
  }
  Rng rng(seed);
  const auto r = static_cast<std::uint64_t>(range);
  const std::size_t retry_cap = 100 * n;
  std::size_t retries = 0;
  for (;;) {
    std::set<Point> seen;
    std::vector<Point> pts;
    pts.reserve(n);
    while (pts.size() < n) {
      const Point p{static_cast<std::int64_t>(rng.below(r)), static_cast<std::int64_t>(rng.below(r))};
      if (seen.insert(p).second) {
        pts.push_back(p);
      } else if (++retries > retry_cap) {
        throw DegenerateInput("gave up sampling distinct points after " + std::to_string(retry_cap) + " retries");
      }
    }
    // All collinear: resample, charging the whole draw to the retry budget.
    bool collinear = true;
    for (std::size_t i = 2; i < n && collinear; ++i) {
      collinear = orientation(pts[0], pts[1], pts[i]) == Orientation::Collinear;
    }
    if (!collinear) return pts;
    retries += n;
    if (retries > retry_cap) throw DegenerateInput("sampled points are all collinear");
  }
}

Triangulation random_flip_walk(const Triangulation& center, std::size_t num_steps, double prob, std::uint64_t seed) {
  Rng rng(seed);
  Triangulation t = center;
  for (std::size_t round = 0; round < num_steps; ++round) {
    const auto set = maximal_independent_flippable_set(t, rng.next());
    std::vector<Edge> chosen;
    for (const auto& f : set.flips) {
      if (rng.uniform() < prob) chosen.push_back(f.edge);
    }
    if (!chosen.empty()) t = apply_parallel_flip(t, chosen);
  }
  return t;
}

Instance generate_random_instance(const RandomInstanceParams& params) {
  if (params.m == 0) throw std::invalid_argument("m must be at least 1");
  if (!(params.prob > 0.0 && params.prob <= 1.0)) throw std::invalid_argument("prob must lie in (0, 1]");
  std::vector<Point> pts;
  std::size_t n = params.n;
  const std::int64_t range = params.point_pool.empty() ? resolve_range(params.coordinate_range, n) : 0;
  if (params.point_pool.empty()) {
    pts = sample_points(n, range, derive_seed(params.seed, 0));
  } else {
    if (n == 0 || n >= params.point_pool.size()) {
      pts = params.point_pool;
    } else {
      std::vector<std::size_t> idx(params.point_pool.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      Rng rng(derive_seed(params.seed, 0));
      rng.shuffle(idx);
      idx.resize(n);
      std::sort(idx.begin(), idx.end());
      for (auto i : idx) pts.push_back(params.point_pool[i]);
    }
    n = pts.size();
  }
  const auto points = make_point_set(std::move(pts));

  GeneratorInfo meta;
  meta.kind = "random";
  meta.seed = params.seed;
  meta.coordinate_range = range;
  meta.num_steps = params.num_steps;
  meta.prob = params.prob;
  meta.center_seed = derive_seed(params.seed, 1);
  const auto center = greedy_random_triangulation(points, meta.center_seed);
  meta.center.assign(center.edges().begin(), center.edges().end());
  for (std::size_t i = 0; i < params.m; ++i) meta.input_seeds.push_back(derive_seed(params.seed, 2 + i));

  Instance inst;
  inst.points = points;
  inst.triangulations.resize(params.m, center);
  parallel_for(params.m, params.threads, [&](std::size_t i) {
    inst.triangulations[i] = random_flip_walk(center, params.num_steps, params.prob, meta.input_seeds[i]);
  });
  bool exact = false;
  meta.center_objective = center_objective(center, inst.triangulations, params.seed, n <= params.exact_threshold,
                                           params.threads, exact);
  meta.center_objective_exact = exact;
  inst.uid = !params.uid.empty() ? params.uid
                                 : "random_n" + std::to_string(n) + "_m" + std::to_string(params.m) + "_steps" +
                                       std::to_string(params.num_steps) + "_prob" + prob_text(params.prob) + "_seed" +
                                       std::to_string(params.seed);
  inst.meta = std::move(meta);
  return inst;
}

Instance generate_rirs_instance(const RirsParams& params) {
  if (params.m == 0) throw std::invalid_argument("m must be at least 1");
  const auto range = resolve_range(params.coordinate_range, params.n);
  const auto points = make_point_set(sample_points(params.n, range, derive_seed(params.seed, 0)));
  GeneratorInfo meta;
  meta.kind = "rirs";
  meta.seed = params.seed;
  meta.coordinate_range = range;
  for (std::size_t i = 0; i < params.m; ++i) meta.input_seeds.push_back(derive_seed(params.seed, 1 + i));

  std::vector<std::optional<Triangulation>> slots(params.m);
  parallel_for(params.m, params.threads, [&](std::size_t i) {
    slots[i] = greedy_random_triangulation(points, meta.input_seeds[i]);
  });
  Instance inst;
  inst.points = points;
  for (auto& t : slots) inst.triangulations.push_back(std::move(*t));
  inst.uid = !params.uid.empty() ? params.uid
                                 : "rirs_n" + std::to_string(params.n) + "_m" + std::to_string(params.m) + "_seed" +
                                       std::to_string(params.seed);
  inst.meta = std::move(meta);
  return inst;
}

std::vector<Triangulation> replay_random_walks(const Instance& instance) {
  if (!instance.meta || instance.meta->kind != "random") {
    throw std::invalid_argument("instance carries no random-class metadata");
  }
  const auto& meta = *instance.meta;
  const auto center = Triangulation::build(instance.points, meta.center);
  std::vector<Triangulation> out;
  for (auto s : meta.input_seeds) out.push_back(random_flip_walk(center, meta.num_steps, meta.prob, s));
  return out;
}

}  // namespace flipcenter
