// Command-line front end: generate, solve, check, render, emit-lp, bench, family.
//
// Exit codes: 0 success, 2 infeasible (or a support failing `check`), 1 error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hsupport/hsupport.hpp"

namespace {

using namespace hsupport;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

Hypergraph load_hypergraph(const std::string& path) {
  try {
    return parse_hypergraph(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

SupportGraph load_support(const std::string& path) {
  try {
    return parse_support(read_file(path));
  } catch (const ParseError& e) {
    throw Error(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

template <class T>
std::vector<T> parse_list(const std::string& text, T (*parse_one)(std::string_view)) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw InvalidArgument("empty item in list '" + text + "'");
    out.push_back(parse_one(item));
  }
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InvalidArgument("not a count: '" + std::string(s) + "'");
  }
  return v;
}

ConstraintSet parse_regime(std::string_view s) { return ConstraintSet::parse(s); }

struct Options {
  std::string in, out, support, seed_support;
  std::size_t n = 20, k = 2, node_cap = 0, parallel = 1;
  std::string scheme = "even", algo = "local-search", constraints = "u";
  std::string n_list = "20", k_list = "2", scheme_list = "even", algo_list = "local-search",
              constraints_list = "u";
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  double time_cap = 0.0;
  bool report = false;
  bool summary = false;
};

int cmd_generate(const Options& o) {
  Rng rng(o.seed);
  write_file(o.out, serialize_hypergraph(generate(o.n, o.k, parse_scheme(o.scheme), rng)));
  return kExitOk;
}

int cmd_family(const Options& o) {
  write_file(o.out, serialize_hypergraph(adversarial_family(o.n)));
  return kExitOk;
}

int cmd_solve(const Options& o) {
  const Hypergraph h = load_hypergraph(o.in);
  const ConstraintSet c = ConstraintSet::parse(o.constraints);
  const Algorithm algo = parse_algorithm(o.algo);
  if (!supports_constraints(algo, c)) {
    throw InvalidArgument(o.algo + " only computes unrestricted supports (use --constraints u)");
  }
  if (!o.seed_support.empty() && algo != Algorithm::LocalSearch) {
    throw InvalidArgument("--seed-support only applies to local-search");
  }

  SupportGraph g;
  std::size_t rounds = 0;
  std::optional<bool> optimal;
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (algo) {
      case Algorithm::MstApprox: {
        auto r = mst_approximation(h);
        g = std::move(r.support);
        rounds = r.rounds_or_passes;
        break;
      }
      case Algorithm::MstIter: {
        auto r = mst_iteration(h);
        g = std::move(r.support);
        rounds = r.rounds_or_passes;
        break;
      }
      case Algorithm::LocalSearch: {
        auto r = o.seed_support.empty() ? local_search(h, c)
                                        : local_search_seeded(h, load_support(o.seed_support), c);
        g = std::move(r.support);
        rounds = r.rounds_or_passes;
        break;
      }
      case Algorithm::Exact: {
        auto r = solve_exact(h, c, {o.node_cap, o.time_cap});
        g = std::move(r.support);
        rounds = r.nodes_explored;
        optimal = r.proven_optimal;
        break;
      }
    }
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const EmptyCore& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
  const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;

  if (!satisfies(g, h, c)) {
    throw std::logic_error("solver returned a support violating " + c.label());
  }
  write_file(o.out, serialize_support(g));
  if (o.report) {
    std::printf("algorithm   %s\nconstraints %s\nlength      %.6f\nedges       %zu\n",
                o.algo.c_str(), c.label().c_str(), total_length(g, h), g.size());
    std::printf("%s %zu\ntime_ms     %.3f\n",
                algo == Algorithm::Exact ? "nodes      " : "rounds     ", rounds, ms.count());
    if (optimal) std::printf("optimal     %s\n", *optimal ? "proven" : "not proven (limits)");
  }
  return kExitOk;
}

int cmd_check(const Options& o) {
  const Hypergraph h = load_hypergraph(o.in);
  const SupportGraph g = load_support(o.support);
  g.check_vertices(h);
  const ConstraintSet c = ConstraintSet::parse(o.constraints);
  std::printf("length    %.6f\nedges     %zu\ncrossings %zu\nacyclic   %s\n", total_length(g, h),
              g.size(), crossing_count(g, h), is_acyclic(g) ? "yes" : "no");
  for (HyperedgeId s = 0; s < h.num_hyperedges(); ++s) {
    std::printf("hyperedge %zu connected %s\n", s,
                hyperedge_induced_connected(g, h, s) ? "yes" : "no");
  }
  const bool ok = satisfies(g, h, c);
  std::printf("valid %s %s\n", c.label().c_str(), ok ? "yes" : "no");
  return ok ? kExitOk : kExitInfeasible;
}

int cmd_render(const Options& o) {
  const Hypergraph h = load_hypergraph(o.in);
  std::optional<SupportGraph> g;
  if (!o.support.empty()) g = load_support(o.support);
  write_file(o.out, render_svg(h, g ? &*g : nullptr));
  return kExitOk;
}

int cmd_emit_lp(const Options& o) {
  const Hypergraph h = load_hypergraph(o.in);
  write_file(o.out, emit_lp(build_model(h, ConstraintSet::parse(o.constraints))));
  return kExitOk;
}

int cmd_bench(const Options& o) {
  std::vector<TrialConfig> templates;
  const auto ns = parse_list<std::size_t>(o.n_list, parse_size);
  const auto ks = parse_list<std::size_t>(o.k_list, parse_size);
  const auto schemes = parse_list<DegreeScheme>(o.scheme_list, parse_scheme);
  const auto algos = parse_list<Algorithm>(o.algo_list, parse_algorithm);
  const auto regimes = parse_list<ConstraintSet>(o.constraints_list, parse_regime);
  for (auto n : ns)
    for (auto k : ks)
      for (auto scheme : schemes)
        for (auto algo : algos)
          for (const auto& c : regimes) {
            // MST heuristics have no constrained variant; skip those cells.
            if (!supports_constraints(algo, c)) continue;
            TrialConfig t;
            t.n = n;
            t.k = k;
            t.scheme = scheme;
            t.algorithm = algo;
            t.constraints = c;
            t.limits = {o.node_cap, o.time_cap};
            templates.push_back(t);
          }
  if (templates.empty()) throw InvalidArgument("no valid (algorithm, constraints) combination");
  const auto records = run_grid(templates, o.trials, o.seed, o.parallel);
  write_file(o.out, to_csv(records));
  if (o.summary) std::cout << format_summary(summarize(records));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Short supports of spatial hypergraphs"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  gen->add_option("--n", o.n, "Number of vertices")->required();
  gen->add_option("--k", o.k, "Number of hyperedges")->required();
  gen->add_option("--scheme", o.scheme, "Degree scheme: even|mid|low|high");
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("--out", o.out, "Output .hg file ('-' for stdout)")->required();

  auto* solve = app.add_subcommand("solve", "Compute a support");
  solve->add_option("--in", o.in, "Input .hg file")->required()->check(CLI::ExistingFile);
  solve->add_option("--algo", o.algo, "mst-approx|mst-iter|local-search|exact");
  solve->add_option("--constraints", o.constraints, "u|t|p|pt");
  solve->add_option("--seed-support", o.seed_support, "Initial support for local-search")
      ->check(CLI::ExistingFile);
  solve->add_option("--node-cap", o.node_cap, "Exact solver node limit (0: none)");
  solve->add_option("--time-cap", o.time_cap, "Exact solver time limit in seconds (0: none)");
  solve->add_option("--out", o.out, "Output support file ('-' for stdout)")->required();
  solve->add_flag("--report", o.report, "Print length and solver statistics");

  auto* check = app.add_subcommand("check", "Validate a support");
  check->add_option("--in", o.in, "Input .hg file")->required()->check(CLI::ExistingFile);
  check->add_option("--support", o.support, "Support file")->required()->check(CLI::ExistingFile);
  check->add_option("--constraints", o.constraints, "u|t|p|pt");

  auto* render = app.add_subcommand("render", "Draw an instance and optional support as SVG");
  render->add_option("--in", o.in, "Input .hg file")->required()->check(CLI::ExistingFile);
  render->add_option("--support", o.support, "Support file")->check(CLI::ExistingFile);
  render->add_option("--out", o.out, "Output .svg file ('-' for stdout)")->required();

  auto* lp = app.add_subcommand("emit-lp", "Write the integer program in LP format");
  lp->add_option("--in", o.in, "Input .hg file")->required()->check(CLI::ExistingFile);
  lp->add_option("--constraints", o.constraints, "u|t|p|pt");
  lp->add_option("--out", o.out, "Output .lp file ('-' for stdout)")->required();

  auto* bench = app.add_subcommand("bench", "Run a grid of seeded trials and write CSV");
  bench->add_option("--n", o.n_list, "Comma-separated vertex counts");
  bench->add_option("--k", o.k_list, "Comma-separated hyperedge counts");
  bench->add_option("--scheme", o.scheme_list, "Comma-separated degree schemes");
  bench->add_option("--algo", o.algo_list, "Comma-separated algorithms");
  bench->add_option("--constraints", o.constraints_list, "Comma-separated regimes");
  bench->add_option("--trials", o.trials, "Trials per grid cell");
  bench->add_option("--seed", o.seed, "Seed of the first trial");
  bench->add_option("--node-cap", o.node_cap, "Exact solver node limit (0: none)");
  bench->add_option("--time-cap", o.time_cap, "Exact solver time limit in seconds (0: none)");
  bench->add_option("--parallel", o.parallel, "Worker threads");
  bench->add_option("--out", o.out, "Output CSV file ('-' for stdout)")->required();
  bench->add_flag("--summary", o.summary, "Print summary statistics");

  auto* family = app.add_subcommand("family", "Write the adversarial family instance");
  family->add_option("--n", o.n, "Number of vertices (>= 7)")->required();
  family->add_option("--out", o.out, "Output .hg file ('-' for stdout)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*solve) return cmd_solve(o);
    if (*check) return cmd_check(o);
    if (*render) return cmd_render(o);
    if (*lp) return cmd_emit_lp(o);
    if (*bench) return cmd_bench(o);
    if (*family) return cmd_family(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
