#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "brcycle/graph_core.hpp"
#include "brcycle/knowledge.hpp"
#include "brcycle/oracle.hpp"
#include "brcycle/rng.hpp"

namespace brcycle {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

struct FinderOutcome {
  std::optional<std::vector<Vertex>> cycle;
  std::uint64_t queries_used = 0;
  // Stable keys: walks, color_ids, walls_built, wall_failures, backtracks,
  // stage1_queries, stage2_queries, plus algorithm-specific extras.
  std::map<std::string, std::uint64_t> aux;
  // Final blue path for the path-growing algorithms.
  std::vector<Vertex> path;
  bool timed_out = false;
};

enum class ColorVerdict { Blue, Red, Unknown };

struct ColorEstimate {
  ColorVerdict verdict = ColorVerdict::Unknown;
  std::uint16_t layer = 0;  // 1..L when verdict is Red
  std::size_t walks_used = 0;

  std::optional<Color> color() const {
    if (verdict == ColorVerdict::Blue) return Color::blue();
    if (verdict == ColorVerdict::Red) return Color::red(layer);
    return std::nullopt;
  }
};

// Frontier of a depth-limited BFS from a vertex believed red.
struct Wall {
  Vertex origin = 0;
  std::size_t depth = 0;
  std::size_t layer_estimate = 0;  // origin layer + depth, or 0 if origin layer unknown
  std::vector<Vertex> members;
};

// Lenient query front-end shared by the finders. A fresh query is charged
// against the budget and followed by a cycle check on the knowledge graph; a
// repeat is free. Once a cycle is found, the budget is spent, or the deadline
// passes, done() is true.
class Prober {
 public:
  Prober(Oracle& oracle, std::uint64_t budget, Deadline deadline = {})
      : oracle_(oracle), budget_(budget), deadline_(deadline), start_(oracle.query_count()) {}

  std::optional<std::span<const Vertex>> probe(Vertex u) {
    if (oracle_.queried(u)) return oracle_.query_vertex(u, RepeatPolicy::Lenient);
    if (cycle_ || used() >= budget_) {
      exhausted_ = true;
      return std::nullopt;
    }
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) {
      exhausted_ = timed_out_ = true;
      return std::nullopt;
    }
    auto answer = oracle_.query_vertex(u, RepeatPolicy::Lenient);
    if (!cycle_) cycle_ = detect_cycle(oracle_.knowledge(), oracle_.history().back());
    return answer;
  }

  bool done() const { return cycle_.has_value() || exhausted_; }
  bool timed_out() const { return timed_out_; }
  std::uint64_t used() const { return oracle_.query_count() - start_; }
  const std::optional<std::vector<Vertex>>& cycle() const { return cycle_; }
  Oracle& oracle() { return oracle_; }
  std::size_t vertex_count() const { return oracle_.vertex_count(); }

  void finish(FinderOutcome& out) const {
    out.cycle = cycle_;
    out.queries_used = used();
    out.timed_out = timed_out_;
  }

 private:
  Oracle& oracle_;
  std::uint64_t budget_;
  Deadline deadline_;
  std::uint64_t start_;
  std::optional<std::vector<Vertex>> cycle_;
  bool exhausted_ = false;
  bool timed_out_ = false;
};

inline Vertex random_vertex(std::size_t vertex_count, Rng& rng) {
  return static_cast<Vertex>(rng.below(vertex_count));
}

inline std::uint64_t default_path_budget(const BRParams& p) {
  return static_cast<std::uint64_t>(
      std::ceil(100.0 * static_cast<double>(p.layers) * std::sqrt(static_cast<double>(p.n_blue))));
}

// ---------------------------------------------------------------------------
// Baselines

// Walks from a random vertex to uniformly random out-neighbors until the
// knowledge graph closes a cycle; restarts at a random vertex on a sink.
inline FinderOutcome run_random_walk_finder(Oracle& oracle, std::uint64_t max_queries, Rng& rng,
                                            Deadline deadline = {}) {
  FinderOutcome out;
  Prober pr(oracle, max_queries, deadline);
  const std::size_t nv = oracle.vertex_count();
  // Repeats are free, so bound the total number of steps as well.
  const std::uint64_t max_steps = 16 * (max_queries + nv);
  std::uint64_t walks = 1, steps = 0;
  Vertex cur = random_vertex(nv, rng);
  while (!pr.done() && steps < max_steps) {
    auto answer = pr.probe(cur);
    if (!answer || pr.done()) break;
    ++steps;
    if (answer->empty()) {
      ++walks;
      cur = random_vertex(nv, rng);
      continue;
    }
    cur = rng.pick(*answer);
  }
  out.aux["walks"] = walks;
  out.aux["steps"] = steps;
  pr.finish(out);
  return out;
}

// Queries uniformly random distinct (u, i) pairs in the adjacency model. A
// collision is an answer already observed as the input or output of an
// earlier query. Any cycle among the recorded edges is reported.
inline FinderOutcome run_birthday_sampler(Oracle& oracle, std::uint64_t max_queries, Rng& rng) {
  if (oracle.model() != QueryModel::AdjList)
    throw Error(Errc::WrongModel, "birthday sampler needs the adjacency model");
  FinderOutcome out;
  const std::uint64_t nv = oracle.vertex_count();
  const std::uint64_t d = std::max<std::uint64_t>(1, oracle.outdegree_bound());
  const std::uint64_t start = oracle.query_count();
  const std::uint64_t limit = std::min(max_queries, nv * d);

  std::unordered_set<std::uint64_t> asked;
  std::unordered_set<Vertex> observed;
  std::unordered_map<Vertex, std::vector<Vertex>> fwd;
  std::set<std::pair<Vertex, Vertex>> edges;
  std::uint64_t collisions = 0;

  // Shortest path from -> to over recorded edges.
  auto find_path = [&](Vertex from, Vertex to) -> std::optional<std::vector<Vertex>> {
    std::unordered_map<Vertex, Vertex> parent{{from, from}};
    std::deque<Vertex> queue{from};
    while (!queue.empty()) {
      const Vertex x = queue.front();
      queue.pop_front();
      if (x == to) {
        std::vector<Vertex> path;
        for (Vertex y = to; y != from; y = parent.at(y)) path.push_back(y);
        path.push_back(from);
        std::reverse(path.begin(), path.end());
        return path;
      }
      auto it = fwd.find(x);
      if (it == fwd.end()) continue;
      for (Vertex y : it->second)
        if (parent.emplace(y, x).second) queue.push_back(y);
    }
    return std::nullopt;
  };

  while (oracle.query_count() - start < limit) {
    std::uint64_t key;
    do key = rng.below(nv * d);
    while (!asked.insert(key).second);
    const auto u = static_cast<Vertex>(key / d);
    const auto i = static_cast<std::size_t>(key % d) + 1;
    auto w = oracle.query_adj(u, i);
    if (!w) {
      observed.insert(u);
      continue;
    }
    if (observed.count(*w)) ++collisions;
    observed.insert(u);
    observed.insert(*w);
    if (!edges.insert({u, *w}).second) continue;
    fwd[u].push_back(*w);
    if (!out.cycle) {
      if (auto back = find_path(*w, u)) {
        // back runs w ... u; rotate to start at u.
        std::vector<Vertex> cycle{u};
        cycle.insert(cycle.end(), back->begin(), back->end() - 1);
        out.cycle = std::move(cycle);
        break;
      }
    }
  }
  out.queries_used = oracle.query_count() - start;
  out.aux["collisions"] = collisions;
  out.aux["distinct_pairs"] = asked.size();
  return out;
}

// ---------------------------------------------------------------------------
// Color identification

namespace detail {

// One random walk from v; returns the number of edges to a sink, or nullopt
// when the walk exceeds max_len or the prober runs out.
inline std::optional<std::size_t> walk_to_sink(Prober& pr, Vertex v, std::size_t max_len,
                                               Rng& rng) {
  Vertex cur = v;
  for (std::size_t steps = 0;; ++steps) {
    auto answer = pr.probe(cur);
    if (!answer) return std::nullopt;
    if (answer->empty()) return steps;
    if (steps == max_len) return std::nullopt;
    cur = rng.pick(*answer);
  }
}

inline ColorEstimate identify_by_sinks(Prober& pr, Vertex v, std::size_t layers,
                                       std::size_t num_walks, std::size_t max_walk_len, Rng& rng) {
  ColorEstimate est;
  std::optional<std::size_t> first;
  bool differ = false;
  for (std::size_t w = 0; w < num_walks; ++w) {
    auto len = walk_to_sink(pr, v, max_walk_len, rng);
    ++est.walks_used;
    if (pr.done() && !pr.cycle()) return ColorEstimate{ColorVerdict::Unknown, 0, est.walks_used};
    if (!len) continue;
    if (!first)
      first = len;
    else if (*len != *first)
      differ = true;
  }
  if (!first) return est;
  if (differ || *first >= layers) {
    est.verdict = ColorVerdict::Blue;
  } else {
    est.verdict = ColorVerdict::Red;
    est.layer = static_cast<std::uint16_t>(layers - *first);
  }
  return est;
}

}  // namespace detail

// Random walks from v. Red(L - l) when every sink-terminating walk has the
// same length l, Blue when lengths differ (or l >= L), Unknown when no walk
// reached a sink. Repeated vertices are free.
inline ColorEstimate identify_color(Oracle& oracle, Vertex v, std::size_t layers,
                                    std::size_t num_walks, std::size_t max_walk_len, Rng& rng) {
  if (max_walk_len < layers)
    throw Error(Errc::InvalidParams, "max_walk_len must be at least L");
  Prober pr(oracle, UINT64_MAX);
  return detail::identify_by_sinks(pr, v, layers, num_walks, max_walk_len, rng);
}

// ---------------------------------------------------------------------------
// Algorithm 1: grow a path of color-confirmed blue vertices

struct Alg1Options {
  std::size_t num_walks = 6;
  std::size_t max_walk_len = 0;  // 0: 2L
  std::size_t seed_candidates = 10;
  double path_target_mult = 2.0;  // path target = ceil(mult * sqrt(N))
  std::uint64_t budget = 0;       // 0: 100 L sqrt(N)
  Deadline deadline;
  std::function<void(Vertex, const ColorEstimate&)> on_identify;
};

namespace detail {

// Shared second stage of both algorithms. identify(v) returns a ColorEstimate.
template <class Identify>
void grow_blue_path(Prober& pr, const BRParams& p, std::size_t seed_candidates,
                    double path_target_mult, Identify&& identify,
                    const std::function<void(Vertex, const ColorEstimate&)>& on_identify,
                    Rng& rng, FinderOutcome& out) {
  const std::size_t nv = pr.vertex_count();
  const auto target = static_cast<std::size_t>(
      std::ceil(path_target_mult * std::sqrt(static_cast<double>(p.n_blue))));
  std::unordered_map<Vertex, ColorEstimate> known;
  std::unordered_set<Vertex> on_path, dead;
  std::vector<Vertex>& path = out.path;
  std::uint64_t color_ids = 0, backtracks = 0, seeds = 0, walks = 0;
  bool reached = false;
  std::uint64_t last_used = pr.used(), idle_rounds = 0;

  auto classify = [&](Vertex v) -> const ColorEstimate& {
    auto it = known.find(v);
    if (it != known.end()) return it->second;
    ColorEstimate est = identify(v);
    ++color_ids;
    walks += est.walks_used;
    if (on_identify && est.verdict != ColorVerdict::Unknown) on_identify(v, est);
    return known.emplace(v, est).first->second;
  };

  while (!pr.done()) {
    if (path.empty()) {
      // Guard against spinning once every sampled vertex is already classified.
      if (pr.used() == last_used) {
        if (++idle_rounds > 1000) break;
      } else {
        idle_rounds = 0;
        last_used = pr.used();
      }
      for (std::size_t c = 0; c < seed_candidates && !pr.done(); ++c) {
        const Vertex v = random_vertex(nv, rng);
        ++seeds;
        if (dead.count(v)) continue;
        if (classify(v).verdict == ColorVerdict::Blue) {
          path.push_back(v);
          on_path.insert(v);
          break;
        }
      }
      continue;
    }
    const Vertex head = path.back();
    auto answer = pr.probe(head);
    if (!answer || pr.done()) break;
    bool grown = false;
    for (Vertex c : *answer) {
      if (on_path.count(c) || dead.count(c)) continue;
      const auto& est = classify(c);
      if (pr.done()) break;
      if (est.verdict == ColorVerdict::Blue) {
        path.push_back(c);
        on_path.insert(c);
        grown = true;
        break;
      }
    }
    if (pr.done()) break;
    if (!grown) {
      ++backtracks;
      dead.insert(head);
      on_path.erase(head);
      path.pop_back();
    }
    reached = reached || path.size() >= target;
  }
  out.aux["color_ids"] += color_ids;
  out.aux["walks"] += walks;
  out.aux["backtracks"] += backtracks;
  out.aux["seeds_tried"] += seeds;
  out.aux["path_len"] = path.size();
  out.aux["path_target"] = target;
  out.aux["reached_target"] = reached ? 1 : 0;
}

}  // namespace detail

// Every fresh query is checked for a closed cycle, so a cycle through any
// explored vertex ends the run, not only one closing the blue path.
inline FinderOutcome run_algorithm1(Oracle& oracle, const BRParams& p, const Alg1Options& opt,
                                    Rng& rng) {
  FinderOutcome out;
  const std::uint64_t budget = opt.budget ? opt.budget : default_path_budget(p);
  const std::size_t max_len = opt.max_walk_len ? opt.max_walk_len : 2 * p.layers;
  Prober pr(oracle, budget, opt.deadline);
  auto identify = [&](Vertex v) {
    return detail::identify_by_sinks(pr, v, p.layers, opt.num_walks, max_len, rng);
  };
  detail::grow_blue_path(pr, p, opt.seed_candidates, opt.path_target_mult, identify,
                         opt.on_identify, rng, out);
  pr.finish(out);
  return out;
}

// ---------------------------------------------------------------------------
// Algorithm 2: walls, then wall-calibrated color identification

namespace detail {

inline std::optional<Wall> build_wall(Prober& pr, Vertex v, std::size_t depth,
                                      std::size_t origin_layer) {
  std::vector<Vertex> level{v};
  for (std::size_t t = 0; t < depth; ++t) {
    std::vector<Vertex> next;
    std::unordered_set<Vertex> in_next;
    for (Vertex x : level) {
      auto answer = pr.probe(x);
      if (!answer || answer->empty()) return std::nullopt;
      for (Vertex w : *answer)
        if (in_next.insert(w).second) next.push_back(w);
    }
    level = std::move(next);
  }
  return Wall{v, depth, origin_layer ? origin_layer + depth : 0, std::move(level)};
}

}  // namespace detail

// BFS of exactly `depth` levels from v; the last level is the wall. Absent if
// a sink turns up before the last level. origin_layer, when known, sets the
// wall's layer estimate.
inline std::optional<Wall> build_wall(Oracle& oracle, Vertex v, std::size_t depth,
                                      std::size_t origin_layer = 0) {
  Prober pr(oracle, UINT64_MAX);
  return detail::build_wall(pr, v, depth, origin_layer);
}

struct Alg2Options {
  std::size_t walls = 0;   // M; 0: round(N^(1/4) L / sqrt(N + L^2)), at least 1
  std::size_t wall_p = 0;  // queries per wall P; 0: W ceil(log2 W)
  std::size_t num_walks = 6;
  std::size_t stage1_walk_len = 0;  // 0: 2L
  std::size_t stage2_walk_len = 0;  // 0: L
  double red_share = 0.8;
  std::size_t seed_candidates = 10;
  std::size_t max_wall_attempts = 0;  // 0: 10 M
  double path_target_mult = 2.0;
  std::uint64_t budget = 0;  // 0: 100 L sqrt(N)
  Deadline deadline;
  std::function<void(Vertex, const ColorEstimate&)> on_identify;  // stage 2 only
};

inline std::size_t default_wall_count(const BRParams& p) {
  const double n = static_cast<double>(p.n_blue), l = static_cast<double>(p.layers);
  const double m = std::pow(n, 0.25) * l / std::sqrt(n + l * l);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(m)));
}

inline std::size_t default_wall_p(const BRParams& p) {
  const auto lg = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(p.width))));
  return p.width * std::max<std::size_t>(1, lg);
}

// Wall depth t = round(log_d P), at least 1.
inline std::size_t wall_depth(std::size_t wall_p, std::size_t outdeg) {
  const double t = std::log(static_cast<double>(wall_p)) / std::log(static_cast<double>(outdeg));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t)));
}

namespace detail {

// Each walk stops at the first wall member or sink. A walk stopping after s
// steps at a member of a wall in layer m implies start layer m - s; at a sink
// it implies L - s. Red vertices imply one layer on every walk.
inline ColorEstimate identify_by_walls(Prober& pr, Vertex v, std::size_t layers,
                                       const std::unordered_map<Vertex, std::size_t>& wall_layer,
                                       std::size_t num_walks, std::size_t max_len,
                                       double red_share, Rng& rng) {
  ColorEstimate est;
  std::map<long long, std::size_t> implied;
  std::size_t terminated = 0;
  for (std::size_t w = 0; w < num_walks; ++w) {
    ++est.walks_used;
    Vertex cur = v;
    for (std::size_t steps = 0;; ++steps) {
      if (auto it = wall_layer.find(cur); it != wall_layer.end()) {
        ++implied[static_cast<long long>(it->second) - static_cast<long long>(steps)];
        ++terminated;
        break;
      }
      auto answer = pr.probe(cur);
      if (!answer) return ColorEstimate{ColorVerdict::Unknown, 0, est.walks_used};
      if (answer->empty()) {
        ++implied[static_cast<long long>(layers) - static_cast<long long>(steps)];
        ++terminated;
        break;
      }
      if (steps == max_len) break;
      cur = rng.pick(*answer);
    }
  }
  if (terminated == 0) return est;
  auto mode = std::max_element(implied.begin(), implied.end(),
                               [](auto& a, auto& b) { return a.second < b.second; });
  const bool in_range = mode->first >= 1 && mode->first <= static_cast<long long>(layers);
  const bool out_of_range = implied.begin()->first < 1 ||
                            implied.rbegin()->first > static_cast<long long>(layers);
  if (terminated >= 2 && in_range &&
      static_cast<double>(mode->second) >= red_share * static_cast<double>(terminated)) {
    est.verdict = ColorVerdict::Red;
    est.layer = static_cast<std::uint16_t>(mode->first);
  } else if (implied.size() >= 2 || out_of_range) {
    est.verdict = ColorVerdict::Blue;
  }
  return est;
}

}  // namespace detail

inline FinderOutcome run_algorithm2(Oracle& oracle, const BRParams& p, const Alg2Options& opt,
                                    Rng& rng) {
  FinderOutcome out;
  const std::size_t m = opt.walls ? opt.walls : default_wall_count(p);
  const std::size_t wall_p = opt.wall_p ? opt.wall_p : default_wall_p(p);
  const std::size_t depth = wall_depth(wall_p, p.outdeg);
  const std::size_t len1 = opt.stage1_walk_len ? opt.stage1_walk_len : 2 * p.layers;
  const std::size_t len2 = opt.stage2_walk_len ? opt.stage2_walk_len : p.layers;
  const std::size_t attempts_cap = opt.max_wall_attempts ? opt.max_wall_attempts : 10 * m;
  const std::uint64_t budget = opt.budget ? opt.budget : default_path_budget(p);
  Prober pr(oracle, budget, opt.deadline);

  // Stage 1: find red vertices, build a wall below each.
  std::unordered_map<Vertex, std::size_t> wall_layer;
  std::vector<std::size_t> layers_built;
  std::uint64_t built = 0, failed = 0, ids = 0, walks = 0;
  for (std::size_t attempts = 0; built < m && attempts < attempts_cap && !pr.done();) {
    const Vertex v = random_vertex(pr.vertex_count(), rng);
    auto est = detail::identify_by_sinks(pr, v, p.layers, opt.num_walks, len1, rng);
    ++ids;
    walks += est.walks_used;
    if (est.verdict != ColorVerdict::Red) continue;
    ++attempts;
    auto wall = detail::build_wall(pr, v, depth, est.layer);
    if (!wall) {
      ++failed;
      continue;
    }
    ++built;
    layers_built.push_back(wall->layer_estimate);
    for (Vertex w : wall->members) wall_layer[w] = wall->layer_estimate;
  }
  out.aux["walls_built"] = built;
  out.aux["wall_failures"] = failed;
  out.aux["wall_depth"] = depth;
  out.aux["color_ids"] = ids;
  out.aux["walks"] = walks;
  std::sort(layers_built.begin(), layers_built.end());
  std::size_t gap = 0, prev = 0;
  for (std::size_t l : layers_built) {
    gap = std::max(gap, l - prev);
    prev = l;
  }
  if (!layers_built.empty()) gap = std::max(gap, p.layers - prev);
  out.aux["wall_gap_max"] = gap;
  const std::uint64_t stage1 = pr.used();
  out.aux["stage1_queries"] = stage1;

  // Stage 2: path growth with wall-calibrated identification.
  auto identify = [&](Vertex v) {
    return detail::identify_by_walls(pr, v, p.layers, wall_layer, opt.num_walks, len2,
                                     opt.red_share, rng);
  };
  detail::grow_blue_path(pr, p, opt.seed_candidates, opt.path_target_mult, identify,
                         opt.on_identify, rng, out);
  pr.finish(out);
  out.aux["stage2_queries"] = out.queries_used - stage1;
  return out;
}

// ---------------------------------------------------------------------------
// BFS heuristic

struct BfsOptions {
  std::size_t repetitions = 4;
  std::uint64_t explore_budget = 0;  // per run; 0: ceil(C V / log2 V)
  bool restart_on_exhaustion = true;
  std::uint64_t budget = UINT64_MAX;  // total fresh queries
  Deadline deadline;
};

inline std::uint64_t default_explore_budget(std::size_t repetitions, std::size_t vertex_count) {
  const double v = static_cast<double>(vertex_count);
  return static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(repetitions) * v / std::max(1.0, std::log2(v))));
}

namespace detail {

// BFS from start exploring up to explore_budget vertices. When the reachable
// set runs out and restart is set, continues from a random unexplored vertex.
inline void bfs_run(Prober& pr, Vertex start, std::uint64_t explore_budget, bool restart,
                    Rng& rng, std::uint64_t& restarts) {
  const std::size_t nv = pr.vertex_count();
  std::unordered_set<Vertex> visited{start};
  std::deque<Vertex> queue{start};
  std::uint64_t explored = 0;
  while (explored < explore_budget && !pr.done()) {
    if (queue.empty()) {
      if (!restart || visited.size() >= nv) return;
      Vertex v = random_vertex(nv, rng);
      for (std::size_t tries = 0; visited.count(v) && tries < 64; ++tries)
        v = random_vertex(nv, rng);
      if (visited.count(v)) {
        v = 0;
        while (visited.count(v)) ++v;
      }
      ++restarts;
      visited.insert(v);
      queue.push_back(v);
    }
    const Vertex x = queue.front();
    queue.pop_front();
    auto answer = pr.probe(x);
    if (!answer) return;
    ++explored;
    for (Vertex w : *answer)
      if (visited.insert(w).second) queue.push_back(w);
  }
}

}  // namespace detail

// One BFS from a fixed start, without restarts.
inline FinderOutcome bfs_from(Oracle& oracle, Vertex start, std::uint64_t explore_budget) {
  FinderOutcome out;
  Prober pr(oracle, UINT64_MAX);
  Rng unused(0);
  std::uint64_t restarts = 0;
  detail::bfs_run(pr, start, explore_budget, false, unused, restarts);
  pr.finish(out);
  return out;
}

inline FinderOutcome run_bfs_heuristic(Oracle& oracle, const BfsOptions& opt, Rng& rng) {
  FinderOutcome out;
  const std::uint64_t per_run = opt.explore_budget
                                    ? opt.explore_budget
                                    : default_explore_budget(opt.repetitions, oracle.vertex_count());
  Prober pr(oracle, opt.budget, opt.deadline);
  std::uint64_t runs = 0, restarts = 0;
  for (std::size_t r = 0; r < opt.repetitions && !pr.done(); ++r) {
    ++runs;
    detail::bfs_run(pr, random_vertex(oracle.vertex_count(), rng), per_run,
                    opt.restart_on_exhaustion, rng, restarts);
  }
  out.aux["bfs_runs"] = runs;
  out.aux["bfs_restarts"] = restarts;
  out.aux["explore_budget"] = per_run;
  pr.finish(out);
  return out;
}

}  // namespace brcycle
