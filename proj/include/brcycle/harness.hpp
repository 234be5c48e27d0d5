#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "brcycle/analysis.hpp"
#include "brcycle/error.hpp"
#include "brcycle/finders.hpp"
#include "brcycle/graph_core.hpp"
#include "brcycle/knowledge.hpp"
#include "brcycle/oracle.hpp"
#include "brcycle/rng.hpp"

namespace brcycle {

enum class Distribution { BR, BRSimple };
enum class Algorithm { Walk, Birthday, Alg1, Alg2, Bfs };

inline const char* to_string(Distribution d) { return d == Distribution::BR ? "br" : "brsimple"; }

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Walk: return "walk";
    case Algorithm::Birthday: return "birthday";
    case Algorithm::Alg1: return "alg1";
    case Algorithm::Alg2: return "alg2";
    case Algorithm::Bfs: return "bfs";
  }
  return "?";
}

inline Distribution parse_distribution(const std::string& s) {
  if (s == "br") return Distribution::BR;
  if (s == "brsimple") return Distribution::BRSimple;
  throw Error(Errc::Config, "unknown distribution '" + s + "'");
}

inline Algorithm parse_algorithm(const std::string& s) {
  static const std::map<std::string, Algorithm> names{{"walk", Algorithm::Walk},
                                                      {"birthday", Algorithm::Birthday},
                                                      {"alg1", Algorithm::Alg1},
                                                      {"alg2", Algorithm::Alg2},
                                                      {"bfs", Algorithm::Bfs}};
  auto it = names.find(s);
  if (it == names.end()) throw Error(Errc::Config, "unknown algorithm '" + s + "'");
  return it->second;
}

struct ExperimentConfig {
  Distribution dist = Distribution::BR;
  Algorithm algo = Algorithm::Alg1;
  // Blue count N for "br", total vertex count for "brsimple".
  std::vector<std::size_t> sizes;
  std::size_t layers = 0;  // 0: derive from N
  std::size_t outdeg = 2;
  std::size_t trials = 1;
  std::uint64_t base_seed = 1;
  std::uint64_t budget = 0;  // 0: algorithm default
  std::size_t num_walks = 6;
  std::size_t walls = 0;
  std::size_t wall_p = 0;
  double path_target_mult = 2.0;
  std::size_t bfs_repetitions = 4;
  double time_limit_s = 60.0;
  bool timing = false;
  std::size_t threads = 1;
};

struct TrialRecord {
  Distribution dist = Distribution::BR;
  Algorithm algo = Algorithm::Alg1;
  std::size_t n = 0, layers = 0, width = 0, d = 0;
  std::uint64_t seed = 0;
  std::uint64_t queries = 0;
  bool success = false;
  std::optional<std::size_t> cycle_len;
  std::size_t epochs = 0, surprises = 0, blue_surprises = 0, max_blue_path = 0, max_anc_blue = 0;
  std::uint64_t ms = 0;
  bool timed_out = false;
  bool claim_rejected = false;
  std::string error;
};

// Every claimed cycle is checked against the hidden graph; these count the
// checks and the rejections across the process.
struct SoundnessCounters {
  std::atomic<std::uint64_t> checked{0};
  std::atomic<std::uint64_t> rejected{0};
};

inline SoundnessCounters& soundness() {
  static SoundnessCounters counters;
  return counters;
}

inline void validate_config(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) { throw Error(Errc::Config, msg); };
  if (c.sizes.empty()) fail("at least one size is required");
  if (c.dist == Distribution::BRSimple) {
    if (c.algo == Algorithm::Alg1 || c.algo == Algorithm::Alg2)
      fail(std::string(to_string(c.algo)) + " needs the layered distribution");
    if (c.layers != 0) fail("--layers only applies to the layered distribution");
    for (std::size_t n : c.sizes)
      if (n == 0 || n % 2 != 0) fail("brsimple sizes must be positive and even");
    if (c.outdeg < 1) fail("d must be at least 1");
  } else {
    for (std::size_t n : c.sizes) {
      try {
        if (c.layers == 0) {
          paper_params(n, c.outdeg);
        } else {
          if ((2 * n) % c.layers != 0) fail("L must divide 2N for N = " + std::to_string(n));
          make_params(n, c.layers, 2 * n / c.layers, c.outdeg);
        }
      } catch (const Error& e) {
        if (e.code() == Errc::Config) throw;
        fail(e.what());
      }
    }
  }
  if (c.num_walks == 0) fail("--num-walks must be positive");
  if (c.path_target_mult <= 0) fail("--path-target-mult must be positive");
  if (c.time_limit_s <= 0) fail("time limit must be positive");
  if (c.threads == 0) fail("--threads must be positive");
}

inline BRParams params_for(const ExperimentConfig& c, std::size_t n) {
  return c.layers == 0 ? paper_params(n, c.outdeg) : make_params(n, c.layers, 2 * n / c.layers, c.outdeg);
}

inline std::uint64_t default_baseline_budget(std::size_t vertex_count) {
  return static_cast<std::uint64_t>(std::ceil(10.0 * std::sqrt(static_cast<double>(vertex_count))));
}

namespace detail {

inline FinderOutcome run_finder(const ExperimentConfig& c, Oracle& oracle, const std::optional<BRParams>& params,
                                Rng& rng, Deadline deadline) {
  const std::uint64_t baseline = c.budget ? c.budget : default_baseline_budget(oracle.vertex_count());
  switch (c.algo) {
    case Algorithm::Walk:
      return run_random_walk_finder(oracle, baseline, rng, deadline);
    case Algorithm::Birthday:
      return run_birthday_sampler(oracle, baseline, rng);
    case Algorithm::Alg1: {
      Alg1Options o;
      o.num_walks = c.num_walks;
      o.path_target_mult = c.path_target_mult;
      o.budget = c.budget;
      o.deadline = deadline;
      return run_algorithm1(oracle, *params, o, rng);
    }
    case Algorithm::Alg2: {
      Alg2Options o;
      o.walls = c.walls;
      o.wall_p = c.wall_p;
      o.num_walks = c.num_walks;
      o.path_target_mult = c.path_target_mult;
      o.budget = c.budget;
      o.deadline = deadline;
      return run_algorithm2(oracle, *params, o, rng);
    }
    case Algorithm::Bfs: {
      BfsOptions o;
      o.repetitions = c.bfs_repetitions;
      if (c.budget) o.budget = c.budget;
      o.deadline = deadline;
      return run_bfs_heuristic(oracle, o, rng);
    }
  }
  throw Error(Errc::Config, "unhandled algorithm");
}

}  // namespace detail

inline TrialRecord run_trial(const ExperimentConfig& c, std::size_t n, std::uint64_t seed) {
  TrialRecord rec;
  rec.dist = c.dist;
  rec.algo = c.algo;
  rec.n = n;
  rec.d = c.outdeg;
  rec.seed = seed;
  const auto start = std::chrono::steady_clock::now();
  const Deadline deadline =
      start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                  std::chrono::duration<double>(c.time_limit_s));
  const Rng root(seed);
  Rng gen = root.fork(0);
  Rng alg = root.fork(1);
  const QueryModel model = c.algo == Algorithm::Birthday ? QueryModel::AdjList : QueryModel::Vertex;
  try {
    std::optional<BRPair> pair;
    std::optional<Digraph> simple;
    std::optional<BRParams> params;
    if (c.dist == Distribution::BR) {
      params = params_for(c, n);
      rec.layers = params->layers;
      rec.width = params->width;
      pair = gen_br_pair(*params, gen);
    } else {
      simple = gen_br_simple(n, c.outdeg, gen);
    }
    const Digraph& graph = pair ? pair->graph : *simple;
    Oracle oracle = pair ? Oracle(*pair, model, RepeatPolicy::Lenient) : Oracle(*simple, model, RepeatPolicy::Lenient);

    const FinderOutcome out = detail::run_finder(c, oracle, params, alg, deadline);
    if (out.queries_used != oracle.query_count())
      throw Error(Errc::InvalidKnowledge, "finder reported " + std::to_string(out.queries_used) +
                                              " queries, oracle counted " + std::to_string(oracle.query_count()));
    rec.queries = out.queries_used;
    rec.timed_out = out.timed_out;
    if (out.cycle) {
      ++soundness().checked;
      if (verify_cycle(graph, *out.cycle)) {
        rec.success = true;
        rec.cycle_len = out.cycle->size();
      } else {
        rec.claim_rejected = true;
        ++soundness().rejected;
      }
    }
    if (pair && !oracle.history().empty()) {
      const auto st = epoch_stats(oracle.history(), pair->coloring, params->epoch_cap());
      rec.epochs = st.num_epochs;
      rec.surprises = st.num_surprise;
      rec.blue_surprises = st.num_blue_surprise;
      rec.max_blue_path = st.max_blue_path();
      rec.max_anc_blue = st.max_ancestors_blue;
    }
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  if (c.timing)
    rec.ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
  return rec;
}

// Records are ordered by size, then trial index; trial t uses seed base_seed + t.
inline std::vector<TrialRecord> run_experiment(const ExperimentConfig& c) {
  validate_config(c);
  const std::size_t total = c.sizes.size() * c.trials;
  std::vector<TrialRecord> records(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++)
      records[i] = run_trial(c, c.sizes[i / c.trials], c.base_seed + i % c.trials);
  };
  const std::size_t threads = std::min(c.threads, std::max<std::size_t>(total, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

inline constexpr const char* kCsvHeader =
    "schema,dist,algo,n,layers,width,d,seed,queries,success,cycle_len,epochs,surprises,blue_surprises,"
    "max_blue_path,max_anc_blue,ms";

inline void write_csv(std::ostream& os, const std::vector<TrialRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << "v1," << to_string(r.dist) << ',' << to_string(r.algo) << ',' << r.n << ',' << r.layers << ','
       << r.width << ',' << r.d << ',' << r.seed << ',' << r.queries << ',' << (r.success ? 1 : 0) << ',';
    if (r.cycle_len) os << *r.cycle_len;
    os << ',' << r.epochs << ',' << r.surprises << ',' << r.blue_surprises << ',' << r.max_blue_path << ','
       << r.max_anc_blue << ',' << r.ms << '\n';
  }
}

struct ScalingFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (log size, log median queries)
};

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw Error(Errc::InsufficientData, "median of an empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

// Least squares line through the points.
inline ScalingFit fit_line(std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(Errc::InsufficientData, "a line fit needs two points");
  const double k = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0) throw Error(Errc::InsufficientData, "all sizes are equal");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss_res = 0;
  for (const auto& [x, y] : points) {
    const double e = y - (fit.intercept + fit.exponent * x);
    ss_res += e * e;
  }
  fit.r_squared = syy == 0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  fit.points = std::move(points);
  return fit;
}

inline constexpr std::size_t kMinFitSizes = 3;
inline constexpr std::size_t kMinFitSuccesses = 10;

// Fits log(median queries) against log(size) over successful trials. Sizes
// with fewer than kMinFitSuccesses successes are left out.
inline ScalingFit fit_scaling(const std::vector<TrialRecord>& records) {
  std::map<std::size_t, std::vector<double>> by_size;
  for (const auto& r : records)
    if (r.success) by_size[r.n].push_back(static_cast<double>(r.queries));
  std::vector<std::pair<double, double>> points;
  for (const auto& [n, qs] : by_size)
    if (qs.size() >= kMinFitSuccesses)
      points.emplace_back(std::log(static_cast<double>(n)), std::log(std::max(median(qs), 1.0)));
  if (points.size() < kMinFitSizes)
    throw Error(Errc::InsufficientData, "scaling fit needs " + std::to_string(kMinFitSizes) + " sizes with " +
                                            std::to_string(kMinFitSuccesses) + " successes each");
  return fit_line(std::move(points));
}

}  // namespace brcycle
