#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brcycle/brcycle.hpp"

namespace {

constexpr int kConfigError = 2;

int cmd_run(const brcycle::ExperimentConfig& cfg, const std::string& out_path, bool fit) {
  const auto records = brcycle::run_experiment(cfg);
  if (out_path.empty() || out_path == "-") {
    brcycle::write_csv(std::cout, records);
  } else {
    std::ofstream os(out_path);
    if (!os) throw brcycle::Error(brcycle::Errc::Config, "cannot open " + out_path);
    brcycle::write_csv(os, records);
  }
  std::size_t ok = 0, errors = 0;
  for (const auto& r : records) {
    ok += r.success;
    if (!r.error.empty()) {
      ++errors;
      std::cerr << "trial n=" << r.n << " seed=" << r.seed << " failed: " << r.error << '\n';
    }
  }
  std::cerr << ok << "/" << records.size() << " trials found a verified cycle\n";
  if (brcycle::soundness().rejected > 0)
    std::cerr << "warning: " << brcycle::soundness().rejected << " claimed cycles failed verification\n";
  if (fit) {
    try {
      const auto f = brcycle::fit_scaling(records);
      std::cerr << "scaling exponent " << f.exponent << " (intercept " << f.intercept << ", r^2 " << f.r_squared
                << ")\n";
    } catch (const brcycle::Error& e) {
      std::cerr << "no fit: " << e.what() << '\n';
    }
  }
  return 0;
}

int cmd_gen(const std::string& dist, std::size_t n, std::size_t layers, std::size_t d, std::uint64_t seed,
            const std::string& out_path) {
  brcycle::Rng rng(seed);
  brcycle::GraphFile file;
  if (brcycle::parse_distribution(dist) == brcycle::Distribution::BR) {
    const auto p = layers == 0 ? brcycle::paper_params(n, d) : brcycle::make_params(n, layers, 2 * n / layers, d);
    file.pair = brcycle::gen_br_pair(p, rng);
    file.graph = file.pair->graph;
    file.outdeg = d;
  } else {
    file.graph = brcycle::gen_br_simple(n, d, rng);
    file.outdeg = d;
  }
  if (out_path.empty() || out_path == "-") {
    if (file.pair) brcycle::save_graph(std::cout, *file.pair);
    else brcycle::save_graph(std::cout, file.graph, file.outdeg);
  } else {
    brcycle::save_graph_file(out_path, file);
  }
  return 0;
}

int cmd_validate(const std::string& path) {
  const auto file = brcycle::load_graph_file(path);
  if (!file.pair) {
    std::cout << "ok: " << file.graph.vertex_count() << " vertices, outdegree " << file.outdeg << '\n';
    return 0;
  }
  const auto violations = brcycle::validate_br(*file.pair);
  for (const auto& v : violations) std::cout << v.message << '\n';
  if (violations.empty()) std::cout << "ok: " << file.graph.vertex_count() << " vertices\n";
  return violations.empty() ? 0 : 1;
}

int cmd_fas(const std::string& path) {
  const auto file = brcycle::load_graph_file(path);
  const auto& g = file.graph;
  if (g.vertex_count() <= brcycle::kFasExactMaxVertices) {
    const auto r = brcycle::min_fas_exact(g);
    std::cout << "min_fas " << r.min_fas << " epsilon " << r.epsilon << "\nordering";
    for (auto v : r.witness_ordering) std::cout << ' ' << v;
    std::cout << '\n';
  } else {
    const auto order = brcycle::greedy_fas_ordering(g);
    std::cout << "greedy_upper_bound " << brcycle::backedge_count(g, order) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle finding experiments on layered random digraphs"};
  app.require_subcommand(1);

  brcycle::ExperimentConfig cfg;
  std::string dist = "br", algo = "alg1", out_path;
  bool fit = false;
  auto* run = app.add_subcommand("run", "Run trials and write CSV rows");
  run->add_option("--dist", dist, "br or brsimple")->check(CLI::IsMember({"br", "brsimple"}));
  run->add_option("--algo", algo, "walk, birthday, alg1, alg2 or bfs")
      ->check(CLI::IsMember({"walk", "birthday", "alg1", "alg2", "bfs"}));
  run->add_option("--n", cfg.sizes, "Sizes: blue count for br, vertex count for brsimple")->required();
  run->add_option("--layers", cfg.layers, "Layer count L (0 derives it from N)");
  run->add_option("--d", cfg.outdeg, "Out-degree");
  run->add_option("--trials", cfg.trials, "Trials per size");
  run->add_option("--seed", cfg.base_seed, "Base seed; trial t uses seed + t");
  run->add_option("--budget", cfg.budget, "Query budget (0 uses the algorithm default)");
  run->add_option("--out", out_path, "CSV output path (default stdout)");
  run->add_option("--num-walks", cfg.num_walks, "Walks per color identification");
  run->add_option("--walls", cfg.walls, "Wall count M (0 uses the default)");
  run->add_option("--wall-p", cfg.wall_p, "Queries per wall (0 uses the default)");
  run->add_option("--path-target-mult", cfg.path_target_mult, "Blue path target as a multiple of sqrt(N)");
  run->add_option("--bfs-reps", cfg.bfs_repetitions, "BFS repetitions");
  run->add_option("--time-limit", cfg.time_limit_s, "Per-trial wall-clock limit in seconds");
  run->add_option("--threads", cfg.threads, "Worker threads");
  run->add_flag("--timing", cfg.timing, "Fill the ms column with wall-clock time");
  run->add_flag("--fit", fit, "Print a log-log scaling fit of median queries");

  std::string gen_dist = "br", gen_out;
  std::size_t gen_n = 4, gen_layers = 0, gen_d = 2;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Generate one graph in the text format");
  gen->add_option("--dist", gen_dist, "br or brsimple")->check(CLI::IsMember({"br", "brsimple"}));
  gen->add_option("--n", gen_n, "Blue count for br, vertex count for brsimple");
  gen->add_option("--layers", gen_layers, "Layer count L (0 derives it from N)");
  gen->add_option("--d", gen_d, "Out-degree");
  gen->add_option("--seed", gen_seed, "Seed");
  gen->add_option("--out", gen_out, "Output path (default stdout)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a graph file against the layered edge rules");
  validate->add_option("file", validate_path)->required();

  std::string fas_path;
  auto* fas = app.add_subcommand("fas", "Minimum feedback arc set of a small graph file");
  fas->add_option("file", fas_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*run) {
      cfg.dist = brcycle::parse_distribution(dist);
      cfg.algo = brcycle::parse_algorithm(algo);
      return cmd_run(cfg, out_path, fit);
    }
    if (*gen) return cmd_gen(gen_dist, gen_n, gen_layers, gen_d, gen_seed, gen_out);
    if (*validate) return cmd_validate(validate_path);
    if (*fas) return cmd_fas(fas_path);
  } catch (const brcycle::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 1;
  } catch (const brcycle::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
