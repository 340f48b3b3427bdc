#include "flipcenter/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "flipcenter/errors.hpp"
#include "flipcenter/parallel.hpp"

namespace flipcenter {

std::string to_string(EvalMode mode) { return mode == EvalMode::Exact ? "exact" : "surrogate"; }

ObjectiveSummary ObjectiveValue::summary() const {
  ObjectiveSummary s;
  s.mode = to_string(mode);
  s.total_lower = total_lower;
  s.total_upper = total_upper;
  for (const auto& d : per_input) {
    s.per_input_lower.push_back(d.lower);
    s.per_input_upper.push_back(d.upper);
  }
  return s;
}

void SolverConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("solver config: " + what); };
  if (!(time_budget > 0)) fail("time_budget must be positive");
  if (initial_temperature < 0) fail("initial_temperature must not be negative");
  if (!(cooling > 0 && cooling < 1)) fail("cooling must lie in (0, 1)");
  if (calibration_samples == 0) fail("calibration_samples must be positive");
  if (max_stale_batches == 0) fail("max_stale_batches must be positive");
  if (refresh_interval == 0) fail("refresh_interval must be positive");
  if (full_delta < 0 || full_delta > 2) fail("full_delta must be 0, 1 or 2");
  if (candidate_prefilter == 0) fail("candidate_prefilter must be positive");
  if (top_k == 0) fail("top_k must be positive");
  if (exact_budget.node_limit == 0 || exact_budget.depth_limit == 0) fail("exact budget limits must be positive");
}

Solution SolveResult::solution(const std::string& uid) const {
  return {uid, {center.edges().begin(), center.edges().end()}, objective.summary()};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::uint64_t symmetric_difference(const Triangulation& a, const Triangulation& b) {
  return 2 * (a.edges().size() - happy_edges(a, b).size());
}

DistanceResult surrogate_distance(const Triangulation& c, const Triangulation& t, std::size_t i,
                                  const SolverConfig& config, bool record_witness) {
  HeuristicOptions options;
  options.seed = derive_seed(config.eval_seed, i);
  options.restarts = config.restarts;
  options.record_witness = record_witness;
  return heuristic_distance(c, t, options);
}

// Distance oracle used inside the annealing chain.
class Evaluator {
 public:
  Evaluator(const Instance& instance, const SolverConfig& config) : instance_(instance), config_(config) {}

  // Memoised by triangulation hash; chains revisit states often.
  std::uint64_t distance(const Triangulation& c, std::size_t i) {
    const auto& t = instance_.triangulations[i];
    const auto key = c.hash() ^ mix64(i);
    {
      std::lock_guard lock(mutex_);
      if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    std::uint64_t value;
    if (config_.search_mode == EvalMode::Surrogate) {
      value = surrogate_distance(c, t, i, config_, false).upper;
    } else {
      try {
        value = exact_distance(c, t, config_.exact_budget).upper;
      } catch (const BudgetExhausted& e) {
        value = e.partial().upper;
      }
    }
    std::lock_guard lock(mutex_);
    if (memo_.size() < kMemoCap) memo_.emplace(key, value);
    return value;
  }

  std::vector<std::uint64_t> all(const Triangulation& c) {
    std::vector<std::uint64_t> out(instance_.triangulations.size());
    parallel_for(out.size(), config_.threads, [&](std::size_t i) { out[i] = distance(c, i); });
    return out;
  }

 private:
  static constexpr std::size_t kMemoCap = 2'000'000;

  const Instance& instance_;
  const SolverConfig& config_;
  std::mutex mutex_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

std::uint64_t sum(const std::vector<std::uint64_t>& v) {
  std::uint64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

// Which inputs contain each edge.
using EdgeOwners = std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>;

EdgeOwners edge_owners(const Instance& instance) {
  EdgeOwners owners;
  for (std::uint32_t i = 0; i < instance.triangulations.size(); ++i) {
    for (const auto& e : instance.triangulations[i].edges()) owners[e.key()].push_back(i);
  }
  return owners;
}

// Serializes incumbent reports from chains.
class Reporter {
 public:
  Reporter(Clock::time_point start, const ImprovementCallback& callback) : start_(start), callback_(callback) {}

  void offer(const Triangulation& t, std::uint64_t total) {
    std::lock_guard lock(mutex_);
    if (best_ && total >= *best_) return;
    best_ = total;
    trajectory_.push_back({seconds_since(start_), total});
    if (callback_) callback_(t, total, trajectory_.back().elapsed);
  }

  std::vector<Checkpoint> trajectory() const { return trajectory_; }

 private:
  Clock::time_point start_;
  const ImprovementCallback& callback_;
  std::mutex mutex_;
  std::optional<std::uint64_t> best_;
  std::vector<Checkpoint> trajectory_;
};

struct ChainResult {
  Triangulation best;
  std::uint64_t best_total;
  SolveStats stats;
};

ChainResult run_chain(const Instance& instance, const Triangulation& start, std::vector<std::uint64_t> values,
                      const SolverConfig& config, std::uint64_t seed, Clock::time_point deadline, Evaluator& eval,
                      const EdgeOwners& owners, Reporter* reporter) {
  const std::size_t m = instance.triangulations.size();
  const bool full = config.full_delta == 1 || (config.full_delta == 2 && instance.size() * m <= 4000);
  Rng rng(seed);
  Triangulation current = start;
  std::uint64_t total = sum(values);
  ChainResult out{start, total, {}};
  if (total == 0) return out;

  double temperature = config.initial_temperature;
  bool calibrating = temperature <= 0;
  std::vector<double> samples;
  std::size_t batch = config.batch_size;
  if (batch == 0) batch = std::max<std::size_t>(1, 4 * flippable_edges(start).size());
  std::size_t in_batch = 0;
  std::size_t stale = 0;
  bool improved = false;
  std::vector<std::uint32_t> affected;
  std::vector<std::uint64_t> fresh;

  for (;;) {
    if (Clock::now() >= deadline) {
      out.stats.stopped_by_time = true;
      break;
    }
    if (config.max_proposals > 0 && out.stats.proposals >= config.max_proposals) break;
    const auto flips = flippable_edges(current);
    if (flips.empty()) break;
    const auto& move = flips[rng.below(flips.size())];
    Triangulation next = flip(current, move.edge);

    affected.clear();
    if (full) {
      for (std::uint32_t i = 0; i < m; ++i) affected.push_back(i);
    } else {
      for (const auto& e : {move.edge, move.opposite}) {
        if (const auto it = owners.find(e.key()); it != owners.end()) {
          affected.insert(affected.end(), it->second.begin(), it->second.end());
        }
      }
      std::sort(affected.begin(), affected.end());
      affected.erase(std::unique(affected.begin(), affected.end()), affected.end());
    }
    fresh.assign(affected.size(), 0);
    parallel_for(affected.size(), config.threads, [&](std::size_t k) { fresh[k] = eval.distance(next, affected[k]); });
    std::int64_t delta = 0;
    for (std::size_t k = 0; k < affected.size(); ++k) {
      delta += static_cast<std::int64_t>(fresh[k]) - static_cast<std::int64_t>(values[affected[k]]);
    }
    ++out.stats.proposals;

    bool accept;
    if (calibrating) {
      if (delta != 0) samples.push_back(std::abs(static_cast<double>(delta)));
      accept = delta <= 0;
      if (out.stats.proposals >= config.calibration_samples) {
        calibrating = false;
        if (samples.empty()) {
          temperature = 1.0;
        } else {
          std::nth_element(samples.begin(), samples.begin() + samples.size() / 2, samples.end());
          temperature = samples[samples.size() / 2] / std::log(2.0);
        }
        out.stats.initial_temperature = temperature;
      }
    } else {
      accept = delta <= 0 || rng.uniform() < std::exp(-static_cast<double>(delta) / temperature);
    }

    if (accept) {
      current = std::move(next);
      for (std::size_t k = 0; k < affected.size(); ++k) values[affected[k]] = fresh[k];
      total = sum(values);
      ++out.stats.accepted;
      if (!full && out.stats.accepted % config.refresh_interval == 0) {
        values = eval.all(current);
        total = sum(values);
      }
      if (total < out.best_total && !full) {
        // Stale entries may flatter the estimate; confirm before keeping it.
        values = eval.all(current);
        total = sum(values);
      }
      if (total < out.best_total) {
        out.best = current;
        out.best_total = total;
        ++out.stats.improvements;
        improved = true;
        if (reporter) reporter->offer(current, total);
        if (total == 0) break;
      }
    }

    if (++in_batch >= batch) {
      in_batch = 0;
      if (!calibrating) temperature *= config.cooling;
      stale = improved ? 0 : stale + 1;
      improved = false;
      if (stale >= config.max_stale_batches) break;
    }
  }
  return out;
}

}  // namespace

ObjectiveValue evaluate(const Triangulation& c, const Instance& instance, EvalMode mode, const SolverConfig& config,
                        bool record_witness) {
  if (mode == EvalMode::Exact && instance.size() > config.exact_threshold) {
    throw ExactModeUnavailable("exact evaluation is limited to " + std::to_string(config.exact_threshold) +
                               " points; instance has " + std::to_string(instance.size()));
  }
  const std::size_t m = instance.triangulations.size();
  ObjectiveValue value;
  value.mode = mode;
  value.per_input.resize(m);
  parallel_for(m, config.threads, [&](std::size_t i) {
    const auto& t = instance.triangulations[i];
    if (mode == EvalMode::Surrogate) {
      value.per_input[i] = surrogate_distance(c, t, i, config, record_witness);
      return;
    }
    try {
      value.per_input[i] = exact_distance(c, t, config.exact_budget);
    } catch (const BudgetExhausted&) {
      throw ExactModeUnavailable("exact search ran out of budget on input " + std::to_string(i));
    }
  });
  for (const auto& d : value.per_input) {
    value.total_upper += d.upper;
    value.total_lower += d.lower;
  }
  return value;
}

Triangulation majority_triangulation(const Instance& instance, std::uint64_t seed) {
  std::unordered_map<std::uint64_t, std::uint32_t> counts;
  for (const auto& t : instance.triangulations) {
    for (const auto& e : t.edges()) ++counts[e.key()];
  }
  struct Ranked {
    std::uint32_t count;
    std::uint64_t tie;
    Edge edge;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(counts.size());
  for (const auto& [key, count] : counts) ranked.push_back({count, 0, Edge::from_key(key)});
  // Hash-map order is unspecified; fix it before drawing tie-breakers.
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) { return a.edge < b.edge; });
  Rng rng(seed);
  for (auto& r : ranked) r.tie = rng.next();
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.tie < b.tie;
  });
  std::vector<Edge> preferred;
  preferred.reserve(ranked.size());
  for (const auto& r : ranked) preferred.push_back(r.edge);
  return greedy_completion(instance.points, preferred, derive_seed(seed, 1));
}

std::vector<Triangulation> initial_candidates(const Instance& instance, std::uint64_t seed) {
  std::vector<Triangulation> out = instance.triangulations;
  out.push_back(majority_triangulation(instance, seed));
  return out;
}

std::pair<Triangulation, ObjectiveValue> local_search(const Instance& instance, const Triangulation& start,
                                                      const SolverConfig& config) {
  config.validate();
  const auto begin = Clock::now();
  const auto deadline = begin + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config.time_budget));
  Evaluator eval(instance, config);
  const auto owners = edge_owners(instance);
  auto chain = run_chain(instance, start, eval.all(start), config, config.seed, deadline, eval, owners, nullptr);
  const bool exact = instance.size() <= config.exact_threshold;
  ObjectiveValue value;
  try {
    value = evaluate(chain.best, instance, exact ? EvalMode::Exact : EvalMode::Surrogate, config);
  } catch (const ExactModeUnavailable&) {
    value = evaluate(chain.best, instance, EvalMode::Surrogate, config);
  }
  return {std::move(chain.best), std::move(value)};
}

SolveResult solve(const Instance& instance, const SolverConfig& config, const ImprovementCallback& on_improve) {
  config.validate();
  if (config.search_mode == EvalMode::Exact && instance.size() > config.exact_threshold) {
    throw ExactModeUnavailable("exact search mode is limited to " + std::to_string(config.exact_threshold) + " points");
  }
  const auto begin = Clock::now();
  const auto deadline = begin + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(config.time_budget));
  Reporter reporter(begin, on_improve);
  Evaluator eval(instance, config);
  const std::size_t m = instance.triangulations.size();

  // Deduplicate candidates, then keep the closest by total edge difference.
  auto candidates = initial_candidates(instance, derive_seed(config.seed, 1));
  std::vector<std::size_t> order;
  {
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (seen.insert(candidates[c].hash()).second) order.push_back(c);
    }
  }
  std::vector<std::uint64_t> spread(candidates.size(), 0);
  parallel_for(order.size(), config.threads, [&](std::size_t k) {
    const auto c = order[k];
    for (const auto& t : instance.triangulations) spread[c] += symmetric_difference(candidates[c], t);
  });
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spread[a] < spread[b]; });
  if (order.size() > config.candidate_prefilter) order.resize(config.candidate_prefilter);

  std::vector<std::vector<std::uint64_t>> values(candidates.size());
  for (auto c : order) values[c] = eval.all(candidates[c]);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sum(values[a]) < sum(values[b]); });

  SolveStats stats;
  stats.best_input_upper = UINT64_MAX;
  for (auto c : order) {
    if (c < m) stats.best_input_upper = std::min(stats.best_input_upper, sum(values[c]));
  }
  stats.start_upper = sum(values[order.front()]);
  reporter.offer(candidates[order.front()], stats.start_upper);

  // Chains run one after another, each with an equal share of what is left.
  const std::size_t chains = std::min(config.top_k, order.size());
  const auto owners = edge_owners(instance);
  std::vector<ChainResult> results;
  for (std::size_t k = 0; k < chains; ++k) {
    const auto now = Clock::now();
    const auto share = now >= deadline ? Clock::duration::zero() : (deadline - now) / static_cast<long>(chains - k);
    const auto c = order[k];
    results.push_back(run_chain(instance, candidates[c], values[c], config, derive_seed(config.seed, 100 + k),
                                now + share, eval, owners, &reporter));
    const auto& s = results.back().stats;
    stats.proposals += s.proposals;
    stats.accepted += s.accepted;
    stats.improvements += s.improvements;
    stats.stopped_by_time = stats.stopped_by_time || s.stopped_by_time;
    if (k == 0) stats.initial_temperature = s.initial_temperature;
  }

  // Final pick: the chain results plus the ranked starting candidates.
  std::vector<const Triangulation*> finalists;
  std::vector<std::uint64_t> finalist_totals;
  for (const auto& r : results) {
    finalists.push_back(&r.best);
    finalist_totals.push_back(r.best_total);
  }
  for (auto c : order) {
    finalists.push_back(&candidates[c]);
    finalist_totals.push_back(sum(values[c]));
  }
  std::size_t pick = 0;
  for (std::size_t k = 1; k < finalists.size(); ++k) {
    if (finalist_totals[k] < finalist_totals[pick]) pick = k;
  }

  std::optional<SolveResult> result;
  if (instance.size() <= config.exact_threshold) {
    try {
      std::unordered_set<std::uint64_t> seen;
      for (std::size_t k = 0; k < finalists.size(); ++k) {
        if (!seen.insert(finalists[k]->hash()).second) continue;
        auto value = evaluate(*finalists[k], instance, EvalMode::Exact, config);
        if (!result || value.total_upper < result->objective.total_upper) {
          result = SolveResult{*finalists[k], std::move(value), {}, {}};
        }
      }
    } catch (const ExactModeUnavailable&) {
      result.reset();
    }
  }
  if (!result) {
    result = SolveResult{*finalists[pick], evaluate(*finalists[pick], instance, EvalMode::Surrogate, config), {}, {}};
  }
  reporter.offer(result->center, result->objective.total_upper);
  result->trajectory = reporter.trajectory();
  result->stats = stats;
  return std::move(*result);
}

}  // namespace flipcenter
