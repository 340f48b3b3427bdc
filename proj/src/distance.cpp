#include "flipcenter/distance.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>

#include "flipcenter/crossings.hpp"

namespace flipcenter {

std::size_t FlipSequence::flip_count() const noexcept {
  std::size_t total = 0;
  for (const auto& s : steps) total += s.size();
  return total;
}

BudgetExhausted::BudgetExhausted(DistanceResult partial)
    : Error("exact distance search budget exhausted (bounds " + std::to_string(partial.lower) + ".." +
            std::to_string(partial.upper) + ")"),
      partial_(std::move(partial)) {}

std::size_t default_restarts(std::size_t n) noexcept { return n <= 1000 ? 8 : 2; }

namespace {

std::uint64_t max_parallel(const PointSet& points) {
  return std::max<std::uint64_t>(1, points.expected_triangle_count() / 2);
}

std::uint64_t bound_for(std::uint64_t d, std::uint64_t per_step) {
  if (d == 0) return 0;
  return std::max<std::uint64_t>(1, (d + per_step - 1) / per_step);
}

// Edge membership for a fixed triangulation: sorted neighbour lists.
class EdgeIndex {
 public:
  explicit EdgeIndex(const Triangulation& t) : offsets_(t.points().size() + 1, 0) {
    for (const auto& e : t.edges()) ++offsets_[e.u + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
    higher_.resize(t.edges().size());
    // Edges are sorted, so each vertex's list comes out sorted.
    auto fill = offsets_;
    for (const auto& e : t.edges()) higher_[fill[e.u]++] = e.v;
  }

  bool contains(const Edge& e) const noexcept {
    const auto* first = higher_.data() + offsets_[e.u];
    const auto* last = higher_.data() + offsets_[e.u + 1];
    for (; first != last; ++first) {
      if (*first >= e.v) return *first == e.v;
    }
    return false;
  }

 private:
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> higher_;
};

// Cheap counter-based stream for tie-breaking keys.
class TieStream {
 public:
  explicit TieStream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() noexcept { return mix64(state_++); }

 private:
  std::uint64_t state_;
};

std::uint64_t missing_count(const Triangulation& a, const Triangulation& b) {
  std::uint64_t common = 0;
  auto i = a.edges().begin();
  auto j = b.edges().begin();
  while (i != a.edges().end() && j != b.edges().end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return a.edges().size() - common;
}

FlippableEdge describe(const Mesh& mesh, HalfEdge h) { return {mesh.edge(h), mesh.opposite(h), mesh.quad(h)}; }

void sort_step(ParallelFlipSet& step) {
  std::sort(step.flips.begin(), step.flips.end(),
            [](const FlippableEdge& a, const FlippableEdge& b) { return a.edge < b.edge; });
}

// Target edge membership plus memoised crossing counts against the target.
class Target {
 public:
  explicit Target(const Triangulation& t) : index_(t), counter_(t.points().points(), t.mesh()) {}

  bool has(const Edge& e) const { return index_.contains(e); }

  std::int64_t crossings(const Edge& e) {
    if (has(e)) return 0;
    auto [it, inserted] = cache_.try_emplace(e.key(), 0);
    if (inserted) it->second = counter_.count(e);
    return it->second;
  }

 private:
  EdgeIndex index_;
  CrossingCounter counter_;
  std::unordered_map<std::uint64_t, std::uint32_t> cache_;
};

struct Walk {
  std::uint64_t steps = 0;
  FlipSequence witness;
};

class Walker {
 public:
  Walker(const Triangulation& from, const Triangulation& to, const HeuristicOptions& options)
      : from_(from), target_(to), options_(options), points_(from.points().points()) {
    start_missing_ = missing_count(from, to);
    step_cap_ = 4 * from.edges().size() + 64;
  }

  std::uint64_t start_missing() const { return start_missing_; }

  // Returns nothing when the walk reaches `give_up` steps without finishing.
  std::optional<Walk> run(std::uint64_t seed, std::uint64_t give_up) {
    struct Candidate {
      HalfEdge h;
      std::int64_t gain;
      bool direct;
      std::uint64_t tie;
      std::uint64_t key;
    };
    Mesh mesh = from_.mesh();
    std::uint64_t hash = from_.hash();
    std::uint64_t missing = start_missing_;
    TieStream rng(seed);
    std::deque<std::uint64_t> tabu{hash};
    std::size_t stall = 0;
    std::vector<char> used(mesh.triangle_count(), 0);
    std::vector<Candidate> cands;
    std::vector<HalfEdge> chosen;
    Walk walk;

    while (missing > 0) {
      if (walk.steps >= give_up) return std::nullopt;
      if (walk.steps >= step_cap_) throw NoProgress("greedy flip walk exceeded its step cap");
      cands.clear();
      // Tie keys depend on the edge, not on mesh slot order.
      const std::uint64_t salt = rng.next();
      mesh.for_each_edge([&](HalfEdge h) {
        if (!mesh.is_interior(h)) return;
        const Edge e = mesh.edge(h);
        if (target_.has(e) || !mesh.is_flippable(points_, h)) return;
        const Edge f = mesh.opposite(h);
        cands.push_back({h, target_.crossings(e) - target_.crossings(f), target_.has(f), mix64(salt ^ e.key()), e.key()});
      });
      std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.direct != b.direct) return a.direct;
        if (a.gain != b.gain) return a.gain > b.gain;
        if (a.tie != b.tie) return a.tie < b.tie;
        return a.key < b.key;
      });

      chosen.clear();
      for (const auto& c : cands) {
        if (c.gain <= 0) break;
        const auto other = mesh.neighbor(c.h.tri, c.h.side);
        if (used[c.h.tri] || used[other]) continue;
        used[c.h.tri] = used[other] = 1;
        chosen.push_back(c.h);
        if (options_.max_step_size > 0 && chosen.size() >= options_.max_step_size) break;
      }
      for (const auto& h : chosen) used[h.tri] = used[mesh.neighbor(h.tri, h.side)] = 0;

      if (chosen.empty()) {
        // Plateau: take one flip that does not revisit a recent triangulation,
        // neutral ones first and the least damaging one after that.
        const auto pick = [&](bool neutral_only) -> std::optional<HalfEdge> {
          for (const auto& c : cands) {
            if (neutral_only && c.gain != 0) continue;
            const auto next = hash ^ edge_hash(mesh.edge(c.h)) ^ edge_hash(mesh.opposite(c.h));
            if (std::find(tabu.begin(), tabu.end(), next) != tabu.end()) continue;
            return c.h;
          }
          return std::nullopt;
        };
        std::optional<HalfEdge> h;
        if (stall < options_.neutral_flips) h = pick(true);
        if (!h) h = pick(false);
        if (!h) throw NoProgress("greedy flip walk found no admissible flip");
        chosen.push_back(*h);
        ++stall;
      } else {
        stall = 0;
      }

      ParallelFlipSet step;
      if (options_.record_witness) step.flips.reserve(chosen.size());
      for (const auto& h : chosen) {
        if (options_.record_witness) step.flips.push_back(describe(mesh, h));
        const auto rec = mesh.flip(h);
        hash ^= edge_hash(rec.removed) ^ edge_hash(rec.added);
        if (!target_.has(rec.removed)) --missing;
        if (!target_.has(rec.added)) ++missing;
      }
      if (options_.record_witness) {
        sort_step(step);
        walk.witness.steps.push_back(std::move(step));
      }
      ++walk.steps;
      tabu.push_back(hash);
      while (tabu.size() > std::max<std::size_t>(1, options_.tabu_length)) tabu.pop_front();
    }
    return walk;
  }

 private:
  const Triangulation& from_;
  Target target_;
  HeuristicOptions options_;
  std::span<const Point> points_;
  std::uint64_t start_missing_ = 0;
  std::uint64_t step_cap_ = 0;
};

class ExactSearch {
 public:
  struct OutOfBudget {};

  ExactSearch(const Triangulation& from, const Triangulation& to, const ExactBudget& budget)
      : mesh_(from.mesh()),
        points_(from.points().points()),
        target_(to),
        per_step_(max_parallel(from.points())),
        budget_(budget) {
    hash_ = from.hash();
    missing_ = missing_count(from, to);
    used_.assign(mesh_.triangle_count(), 0);
    created_slot_.assign(mesh_.triangle_count(), 0);
  }

  std::uint64_t missing() const { return missing_; }
  const std::vector<ParallelFlipSet>& path() const { return path_; }

  // True iff the target is reachable within `bound` steps.
  bool within(std::uint64_t bound) {
    path_.clear();
    return descend(bound, {}, 0);
  }

 private:
  struct Candidate {
    HalfEdge h;
    std::int32_t other;
  };

  bool in_target(const Edge& e) const { return target_.contains(e); }

  void apply(HalfEdge h, std::vector<FlipRecord>& records) {
    records.push_back(mesh_.flip(h));
    const auto& rec = records.back();
    hash_ ^= edge_hash(rec.removed) ^ edge_hash(rec.added);
    if (!in_target(rec.removed)) --missing_;
    if (!in_target(rec.added)) ++missing_;
  }

  void revert(std::vector<FlipRecord>& records) {
    const auto rec = records.back();
    records.pop_back();
    mesh_.undo(rec);
    hash_ ^= edge_hash(rec.removed) ^ edge_hash(rec.added);
    if (!in_target(rec.removed)) ++missing_;
    if (!in_target(rec.added)) --missing_;
  }

  // One step that flips exactly the edges still missing from the target.
  bool finish_in_one() {
    if (missing_ > per_step_) return false;
    ParallelFlipSet step;
    bool ok = true;
    std::vector<std::int32_t> touched;
    mesh_.for_each_edge([&](HalfEdge h) {
      if (!ok) return;
      const Edge e = mesh_.edge(h);
      if (in_target(e)) return;
      if (!mesh_.is_flippable(points_, h) || !in_target(mesh_.opposite(h))) {
        ok = false;
        return;
      }
      const auto other = mesh_.neighbor(h.tri, h.side);
      if (used_[h.tri] || used_[other]) {
        ok = false;
        return;
      }
      used_[h.tri] = used_[other] = 1;
      touched.push_back(h.tri);
      touched.push_back(other);
      step.flips.push_back(describe(mesh_, h));
    });
    for (auto t : touched) used_[t] = 0;
    if (!ok) return false;
    sort_step(step);
    path_.push_back(std::move(step));
    return true;
  }

  // `context` hashes the diagonals created by the previous step; the pruning
  // rules depend on it, so it is part of the memo key.
  bool descend(std::uint64_t remaining, const std::vector<Edge>& created, std::uint64_t context) {
    if (missing_ == 0) return true;
    if (bound_for(missing_, per_step_) > remaining) return false;
    if (++nodes_ > budget_.node_limit) throw OutOfBudget{};
    const std::uint64_t key = hash_ ^ mix64(context ^ 0x2545f4914f6cdd1dULL);
    if (const auto it = memo_.find(key); it != memo_.end() && it->second >= remaining) return false;
    if (memo_.size() < kMemoCap) memo_[key] = remaining;
    if (remaining == 1) return finish_in_one();

    // Any optimal sequence can be rearranged so that no step undoes a flip of
    // the previous one and every flip touches a triangle the previous step
    // created; only such steps are enumerated.
    std::vector<Candidate> cands;
    std::vector<Candidate> rest;
    mesh_.for_each_edge([&](HalfEdge h) {
      if (!mesh_.is_flippable(points_, h)) return;
      const auto other = mesh_.neighbor(h.tri, h.side);
      const Edge e = mesh_.edge(h);
      if (!created.empty()) {
        if (!created_slot_[h.tri] && !created_slot_[other]) return;
        if (std::find(created.begin(), created.end(), e) != created.end()) return;
      }
      const bool good = !in_target(e) && in_target(mesh_.opposite(h));
      (good ? cands : rest).push_back({h, other});
    });
    cands.insert(cands.end(), rest.begin(), rest.end());

    std::vector<FlipRecord> records;
    std::vector<FlippableEdge> step;
    return branch(cands, 0, remaining, records, step);
  }

  bool branch(const std::vector<Candidate>& cands, std::size_t i, std::uint64_t remaining,
              std::vector<FlipRecord>& records, std::vector<FlippableEdge>& step) {
    if (i == cands.size()) {
      if (records.empty()) return false;
      if (bound_for(missing_, per_step_) > remaining - 1) return false;
      std::vector<Edge> created;
      std::uint64_t context = 0;
      created.reserve(records.size());
      for (const auto& r : records) {
        created.push_back(r.added);
        context ^= edge_hash(r.added);
      }
      // Mark slots for the child; restore the caller's marks afterwards.
      std::vector<std::pair<std::int32_t, char>> saved;
      std::vector<std::int32_t> mine;
      for (std::size_t k = 0; k < created_slot_.size(); ++k) {
        if (created_slot_[k]) saved.emplace_back(static_cast<std::int32_t>(k), 1);
      }
      std::fill(created_slot_.begin(), created_slot_.end(), 0);
      for (const auto& r : records) created_slot_[r.t] = created_slot_[r.s] = 1;
      ParallelFlipSet s{step};
      sort_step(s);
      path_.push_back(std::move(s));
      const bool found = descend(remaining - 1, created, context);
      std::fill(created_slot_.begin(), created_slot_.end(), 0);
      for (const auto& [k, v] : saved) created_slot_[k] = v;
      if (found) return true;
      path_.pop_back();
      return false;
    }
    const auto& c = cands[i];
    if (!used_[c.h.tri] && !used_[c.other]) {
      used_[c.h.tri] = used_[c.other] = 1;
      step.push_back(describe(mesh_, c.h));
      apply(c.h, records);
      const bool found = branch(cands, i + 1, remaining, records, step);
      revert(records);
      step.pop_back();
      used_[c.h.tri] = used_[c.other] = 0;
      if (found) return true;
    }
    return branch(cands, i + 1, remaining, records, step);
  }

  static constexpr std::size_t kMemoCap = 4'000'000;

  Mesh mesh_;
  std::span<const Point> points_;
  EdgeIndex target_;
  std::uint64_t per_step_;
  ExactBudget budget_;
  std::uint64_t hash_ = 0;
  std::uint64_t missing_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<char> used_;
  std::vector<char> created_slot_;
  std::vector<ParallelFlipSet> path_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace

std::uint64_t distance_lower_bound(const Triangulation& a, const Triangulation& b) {
  require_same_points(a, b);
  return bound_for(missing_count(a, b), max_parallel(a.points()));
}

DistanceResult heuristic_distance(const Triangulation& from, const Triangulation& to, const HeuristicOptions& options) {
  require_same_points(from, to);
  DistanceResult result;
  result.lower = distance_lower_bound(from, to);
  if (result.lower == 0) {
    result.exact = true;
    return result;
  }
  Walker walker(from, to, options);
  const std::size_t restarts =
      std::max<std::size_t>(1, options.restarts > 0 ? options.restarts : default_restarts(from.points().size()));
  std::optional<Walk> best;
  for (std::size_t r = 0; r < restarts; ++r) {
    const std::uint64_t give_up = best ? best->steps : ~std::uint64_t{0};
    auto walk = walker.run(derive_seed(options.seed, r), give_up);
    if (walk) best = std::move(walk);
    if (best->steps == result.lower) break;
  }
  result.upper = best->steps;
  result.witness = std::move(best->witness);
  result.exact = result.lower == result.upper;
  return result;
}

DistanceResult heuristic_distance(const Triangulation& from, const Triangulation& to, std::uint64_t seed,
                                  std::size_t restarts) {
  HeuristicOptions options;
  options.seed = seed;
  options.restarts = restarts;
  return heuristic_distance(from, to, options);
}

std::uint64_t sequential_greedy_walk_length(const Triangulation& from, const Triangulation& to, std::uint64_t seed) {
  HeuristicOptions options;
  options.seed = seed;
  options.restarts = 1;
  options.record_witness = false;
  options.max_step_size = 1;
  return heuristic_distance(from, to, options).upper;
}

DistanceResult exact_distance(const Triangulation& from, const Triangulation& to, const ExactBudget& budget) {
  require_same_points(from, to);
  DistanceResult result = heuristic_distance(from, to, 0);
  ExactSearch search(from, to, budget);
  try {
    for (std::uint64_t bound = result.lower; bound < result.upper; ++bound) {
      if (bound > budget.depth_limit) throw ExactSearch::OutOfBudget{};
      if (search.within(bound)) {
        result.upper = bound;
        result.witness.steps = search.path();
        break;
      }
      result.lower = bound + 1;
    }
  } catch (const ExactSearch::OutOfBudget&) {
    result.exact = false;
    throw BudgetExhausted(std::move(result));
  }
  result.lower = result.upper;
  result.exact = true;
  return result;
}

Triangulation replay(const Triangulation& source, const FlipSequence& sequence) {
  Triangulation current = source;
  for (std::size_t i = 0; i < sequence.steps.size(); ++i) {
    const auto& step = sequence.steps[i];
    const auto edges = step.edges();
    try {
      if (!is_independent(current, edges)) throw InvalidStep(i, "flips are not independent or not all flippable");
    } catch (const UnknownEdge& e) {
      throw InvalidStep(i, e.what());
    }
    for (const auto& f : step.flips) {
      const auto h = *current.mesh().find_edge(f.edge);
      if (current.mesh().opposite(h) != f.opposite) {
        throw InvalidStep(i, "recorded opposite diagonal does not match the triangulation");
      }
    }
    current = apply_parallel_flip(current, edges);
  }
  return current;
}

}  // namespace flipcenter
