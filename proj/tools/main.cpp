// Command-line front end: clustering, flipping, robustness sweeps and the
// expected-matrix demo of the unstable family.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flipclust/errors.hpp"
#include "flipclust/generators.hpp"
#include "flipclust/graph.hpp"
#include "flipclust/ingest.hpp"
#include "flipclust/privacy.hpp"
#include "flipclust/rng.hpp"
#include "flipclust/spectral.hpp"
#include "flipclust/sweep.hpp"

namespace {

using namespace flipclust;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw CLI::ValidationError(what + ": cannot parse '" + text + "'");
  }
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::uint64_t value = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw CLI::ValidationError(what + ": cannot parse '" + text + "'");
  }
}

/// Generator specs: "er:n,p", "sbm:s1,s2,pin,pout", "neg:n,beta".
Graph generate_graph(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("--gen: expected '<kind>:<args>', got '" + spec +
                               "'");
  }
  const std::string kind = spec.substr(0, colon);
  const auto args = split(spec.substr(colon + 1), ',');
  if (kind == "er") {
    if (args.size() != 2) {
      throw CLI::ValidationError("--gen er: expected er:n,p");
    }
    return erdos_renyi(static_cast<Vertex>(parse_u64(args[0], "er n")),
                       parse_double(args[1], "er p"), seed);
  }
  if (kind == "sbm") {
    if (args.size() != 4) {
      throw CLI::ValidationError("--gen sbm: expected sbm:size1,size2,pin,pout");
    }
    BlockModelSpec bm;
    bm.block_sizes = {static_cast<Vertex>(parse_u64(args[0], "sbm size1")),
                      static_cast<Vertex>(parse_u64(args[1], "sbm size2"))};
    const double pin = parse_double(args[2], "sbm pin");
    const double pout = parse_double(args[3], "sbm pout");
    bm.probabilities = {{pin, pout}, {pout, pin}};
    return sbm(bm, seed);
  }
  if (kind == "neg") {
    if (args.size() != 2) {
      throw CLI::ValidationError("--gen neg: expected neg:n,beta");
    }
    const auto family = NegativeFamilySpec::create(
        static_cast<Vertex>(parse_u64(args[0], "neg n")),
        parse_double(args[1], "neg beta"));
    return negative_family(family, seed);
  }
  throw CLI::ValidationError("--gen: unknown generator '" + kind + "'");
}

/// Source descriptors recorded in manifests: "file:<path>" or
/// "gen:<spec>;seed=<k>".
Graph load_from_source(const std::string& source) {
  if (source.rfind("file:", 0) == 0) {
    return read_graph(source.substr(5));
  }
  if (source.rfind("gen:", 0) == 0) {
    const std::string rest = source.substr(4);
    const auto marker = rest.rfind(";seed=");
    if (marker == std::string::npos) {
      throw DataError("graph source '" + source + "' lacks ';seed='");
    }
    return generate_graph(rest.substr(0, marker),
                          parse_u64(rest.substr(marker + 6), "gen seed"));
  }
  throw DataError("unknown graph source '" + source + "'");
}

struct GraphArgs {
  std::string file;
  std::string gen;
  std::uint64_t gen_seed = 1;

  void attach(CLI::App* cmd, bool file_positional = true) {
    if (file_positional) {
      cmd->add_option("graph", file, "Graph file in the canonical format");
    }
    cmd->add_option("--gen", gen,
                    "Generator spec: er:n,p | sbm:s1,s2,pin,pout | neg:n,beta");
    cmd->add_option("--gen-seed", gen_seed, "Seed for --gen (default 1)");
  }

  std::string source() const {
    if (!gen.empty()) {
      return "gen:" + gen + ";seed=" + std::to_string(gen_seed);
    }
    return "file:" + file;
  }

  Graph load() const {
    if (!gen.empty() && !file.empty()) {
      throw CLI::ValidationError("give either a graph file or --gen, not both");
    }
    if (gen.empty() && file.empty()) {
      throw CLI::ValidationError("need a graph file or --gen");
    }
    return load_from_source(source());
  }
};

/// Grids: "a,b,c" or "grid:<step>:<count>" for {step*q : 1 <= q <= count}.
std::vector<double> parse_p_grid(const std::string& text) {
  std::vector<double> grid;
  if (text.rfind("grid:", 0) == 0) {
    const auto parts = split(text.substr(5), ':');
    if (parts.size() != 2) {
      throw CLI::ValidationError("--p-grid grid: expected grid:<step>:<count>");
    }
    const double step = parse_double(parts[0], "grid step");
    const std::uint64_t count = parse_u64(parts[1], "grid count");
    for (std::uint64_t q = 1; q <= count; ++q) {
      grid.push_back(step * static_cast<double>(q));
    }
    return grid;
  }
  for (const std::string& part : split(text, ',')) {
    grid.push_back(parse_double(part, "--p-grid"));
  }
  return grid;
}

std::string fmt(double x, int precision = 6) {
  std::ostringstream out;
  out << std::setprecision(precision) << x;
  return out.str();
}

void print_clause(const std::string& name, const AssumptionClause& clause,
                  const std::string& relation) {
  std::cout << "  " << (clause.pass ? "PASS " : "FAIL ") << name << ": "
            << fmt(clause.measured) << ' ' << relation << ' '
            << fmt(clause.threshold) << '\n';
}

int cmd_cluster(const GraphArgs& source) {
  const Graph g = source.load();
  const SweepCut sc = sweep_cut_sc2(g, DisconnectedPolicy::kLargestComponent);
  std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count() << '\n';
  if (sc.used_largest_component) {
    std::cout << "note: graph disconnected; swept the largest component ("
              << sc.swept_vertices << " vertices)\n";
  }
  std::cout << "alpha=" << fmt(sc.alpha, 10) << " crossing=" << sc.crossing
            << " sides=" << sc.cut.size() << '/'
            << g.vertex_count() - sc.cut.size() << '\n';
  std::cout << "members:";
  for (Vertex v : sc.cut.members()) std::cout << ' ' << v;
  std::cout << '\n';
  return kExitOk;
}

int cmd_flip(const GraphArgs& source, double p, std::uint64_t seed,
             const std::string& out) {
  const Graph g = source.load();
  const auto [flipped, sample] = apply_randomized_response(g, p, seed);
  std::cout << "flipped " << sample.pairs.size() << " pairs at p=" << fmt(p)
            << " seed=" << seed << '\n';
  std::cout << "edges: " << g.edge_count() << " -> " << flipped.edge_count()
            << '\n';
  if (p > 0.0) {
    std::cout << "privacy budget epsilon=" << fmt(privacy_budget(p).epsilon)
              << " nats\n";
  } else {
    std::cout << "privacy budget epsilon=inf (p=0 publishes the graph)\n";
  }
  if (!out.empty()) {
    write_graph(flipped, out);
    std::cout << "wrote " << out << '\n';
  }
  return kExitOk;
}

int cmd_spectrum(const GraphArgs& source, int k) {
  const Graph g = source.load();
  if (k < 1 || static_cast<Vertex>(k) > g.vertex_count()) {
    throw CLI::ValidationError("--k out of range");
  }
  const Spectrum spec = smallest_eigenpairs(laplacian(g), k);
  std::cout << "n=" << g.vertex_count() << " m=" << g.edge_count()
            << " max_degree=" << g.max_degree() << '\n';
  for (int i = 0; i < k; ++i) {
    std::cout << "lambda" << i + 1 << " = " << fmt(spec.eigenvalues(i), 12)
              << '\n';
  }
  return kExitOk;
}

int cmd_check(const GraphArgs& source, double p) {
  const Graph g = source.load();
  const AssumptionReport rep = check_assumptions(g, p);
  std::cout << "n=" << rep.n << " p=" << fmt(p) << " lambda2=" << fmt(rep.lambda2)
            << " lambda3=" << fmt(rep.lambda3) << " max_degree=" << rep.max_deg
            << " eta=" << fmt(rep.eta) << '\n';
  print_clause("flip probability p < ln(n)/(10n)", rep.flip_probability, "<");
  print_clause("degree gap     max_deg >= 10 ln(n) lambda3", rep.degree_gap,
               ">=");
  print_clause("connectivity   lambda2 >= 1/10", rep.connectivity, ">=");
  print_clause("robustness     eta < 1 (want small)", rep.robustness, "<");
  print_clause("eigenvalue gap lambda3 >= 10 ln(n)", rep.eigenvalue_gap, ">=");
  print_clause(std::string("cut balance    min side >= n/10 (") +
                   (rep.cut_balance_exact ? "exact" : "heuristic") + ")",
               rep.cut_balance, ">=");
  return kExitOk;
}

int cmd_prune(const std::string& edges_file, PruneConfig cfg,
              const std::string& out) {
  const ParsedEdgeList parsed = parse_edge_list(edges_file);
  std::cout << "parsed n=" << parsed.graph.vertex_count()
            << " m=" << parsed.graph.edge_count()
            << " (dropped " << parsed.self_loops_dropped << " self-loops, "
            << parsed.duplicates_collapsed << " duplicates)\n";
  const PruneResult res = prune(parsed.graph, cfg);
  for (const PruneRemoval& rem : res.removals) {
    std::cout << "round " << rem.round << ": removed " << rem.reason
              << " of size " << rem.size << " boundary " << rem.boundary
              << '\n';
  }
  std::cout << "pruned n=" << res.graph.vertex_count()
            << " m=" << res.graph.edge_count() << " after " << res.rounds
            << " rounds\n";
  if (!out.empty()) {
    write_graph(res.graph, out);
    std::cout << "wrote " << out << '\n';
  }
  return kExitOk;
}

int cmd_negative_demo(Vertex n, double beta, const std::string& grid_text,
                      const std::string& out) {
  const NegativeFamilySpec spec = NegativeFamilySpec::create(n, beta);
  const std::vector<double> grid = parse_p_grid(grid_text);
  std::cout << "family n=" << n << " beta=" << fmt(beta) << " blocks="
            << spec.size_a << '/' << spec.size_b << '/' << spec.size_c << '\n';

  const Eigen::MatrixXd lap = expected_laplacian_negative(spec);
  const Eigen::VectorXd base = symmetric_eigenvalues(lap);
  std::cout << "expected-Laplacian lambda2=" << fmt(base(1), 10)
            << " lambda3=" << fmt(base(2), 10) << '\n';

  const auto curve = eigenvalue_ratio_curve(spec, grid);
  std::cout << "p,lambda2_over_lambda3\n";
  for (const auto& [p, ratio] : curve) {
    std::cout << fmt(p, 10) << ',' << fmt(ratio, 10) << '\n';
  }

  // Eigenvalue-shift residuals at up to four grid points (dense solves).
  std::vector<double> probes;
  if (!grid.empty()) {
    probes.push_back(grid.front());
    if (grid.size() > 2) probes.push_back(grid[grid.size() / 3]);
    if (grid.size() > 1) probes.push_back(grid[2 * grid.size() / 3]);
    probes.push_back(grid.back());
  }
  std::cout << "shift residuals (i = 2..5):\n";
  for (double p : probes) {
    const Eigen::VectorXd flipped =
        symmetric_eigenvalues(expected_flipped_laplacian(lap, p));
    double worst = 0.0;
    for (int i = 1; i < 5 && i < base.size(); ++i) {
      const double predicted = p * n + (1 - 2 * p) * base(i);
      worst = std::max(worst, std::abs(flipped(i) - predicted));
    }
    std::cout << "  p=" << fmt(p, 10) << " max|residual|=" << fmt(worst, 3)
              << '\n';
  }

  if (!out.empty()) {
    std::ofstream file(out);
    if (!file) throw DataError("cannot open " + out);
    file << "p,lambda2_over_lambda3\n";
    for (const auto& [p, ratio] : curve) {
      file << std::setprecision(17) << p << ',' << ratio << '\n';
    }
    std::cout << "wrote " << out << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const GraphArgs& source, const std::string& grid_text, int trials,
              std::uint64_t seed, int workers, const std::string& out,
              const std::string& svg, const std::string& manifest_out,
              const std::string& manifest_in) {
  Graph g;
  SweepConfig cfg;
  if (!manifest_in.empty()) {
    std::ifstream in(manifest_in);
    if (!in) throw DataError("cannot open manifest " + manifest_in);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    const ManifestData manifest = parse_manifest(text);
    g = load_from_source(manifest.config.graph_source);
    cfg = manifest.config;
    cfg.workers = workers;
    if (graph_content_hash(g) != manifest.graph_hash) {
      throw DataError("manifest graph hash mismatch; source changed?");
    }
    std::cout << "replaying " << manifest_in << '\n';
  } else {
    g = source.load();
    cfg.p_grid = parse_p_grid(grid_text);
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.workers = workers;
    cfg.graph_source = source.source();
  }

  const SweepResult res = robustness_sweep(g, cfg);
  std::cout << "n=" << res.base.n << " m=" << res.base.m
            << " lambda2=" << fmt(res.base.lambda2)
            << " lambda3=" << fmt(res.base.lambda3)
            << " max_degree=" << res.base.max_degree
            << " eta=" << fmt(res.base.eta) << '\n';
  std::cout << "p,worst,mean,std\n";
  for (const auto& rec : res.per_p) {
    std::cout << fmt(rec.p, 10) << ',' << rec.worst_d_size() << ','
              << fmt(rec.mean_d_size()) << ',' << fmt(rec.stddev_d_size())
              << '\n';
  }
  if (res.instability_onset_p) {
    std::cout << "instability onset (worst d_size > 0.2 n) at p="
              << fmt(*res.instability_onset_p, 10) << '\n';
  }

  if (!out.empty()) {
    const auto summary = emit_csv(res, out);
    std::cout << "wrote " << out << " and " << summary.string() << '\n';
  }
  if (!svg.empty()) {
    emit_svg(res, svg);
    std::cout << "wrote " << svg << '\n';
  }
  if (!manifest_out.empty()) {
    std::ofstream file(manifest_out);
    if (!file) throw DataError("cannot open " + manifest_out);
    file << run_manifest(cfg, g) << '\n';
    std::cout << "wrote " << manifest_out << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flipclust: two-way spectral clustering under randomized-response edge flipping"};
  app.require_subcommand(1);

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Sweep-cut a graph into two sides");
  GraphArgs cluster_src;
  cluster_src.attach(cluster);

  // flip
  auto* flip = app.add_subcommand("flip", "Apply randomized response once");
  GraphArgs flip_src;
  flip_src.attach(flip);
  double flip_p = 0.0;
  std::uint64_t flip_seed = 1;
  std::string flip_out;
  flip->add_option("--p", flip_p, "Flip probability in [0, 0.5]")->required();
  flip->add_option("--seed", flip_seed, "Sample seed");
  flip->add_option("--out", flip_out, "Write the flipped graph here");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Robustness sweep over a probability grid");
  GraphArgs sweep_src;
  sweep_src.attach(sweep);
  std::string sweep_grid = "grid:0.0001:50";
  int sweep_trials = 100;
  std::uint64_t sweep_seed = 1;
  int sweep_workers = 0;
  std::string sweep_out, sweep_svg, sweep_manifest_out, sweep_manifest_in;
  sweep->add_option("--p-grid", sweep_grid,
                    "Comma list or grid:<step>:<count> (default grid:0.0001:50)");
  sweep->add_option("--trials", sweep_trials, "Flip samples per grid entry");
  sweep->add_option("--seed", sweep_seed, "Base seed for the trial streams");
  sweep->add_option("--workers", sweep_workers,
                    "Worker threads (0 = hardware, result is identical)");
  sweep->add_option("--out", sweep_out, "Per-trial CSV path");
  sweep->add_option("--svg", sweep_svg, "Chart output path");
  sweep->add_option("--manifest-out", sweep_manifest_out,
                    "Write a replayable manifest here");
  sweep->add_option("--manifest", sweep_manifest_in,
                    "Replay a sweep from a manifest (overrides other inputs)");

  // check
  auto* check = app.add_subcommand("check", "Assumption report for (graph, p)");
  GraphArgs check_src;
  check_src.attach(check);
  double check_p = 0.0;
  check->add_option("--p", check_p, "Flip probability to evaluate")->required();

  // negative-demo
  auto* neg = app.add_subcommand(
      "negative-demo", "Expected-matrix spectral-gap decay of the unstable family");
  Vertex neg_n = 2000;
  double neg_beta = 0.3;
  std::string neg_grid = "grid:0.001:20";
  std::string neg_out;
  neg->add_option("--n", neg_n, "Vertices (dense path, <= 4000)")->required();
  neg->add_option("--beta", neg_beta, "Block-A fraction in (0.1, 0.5)")->required();
  neg->add_option("--p-grid", neg_grid, "Grid for the ratio curve");
  neg->add_option("--out", neg_out, "Curve CSV path");

  // prune
  auto* prune_cmd = app.add_subcommand("prune", "Parse a SNAP edge list and peel it");
  std::string prune_file, prune_out;
  PruneConfig prune_cfg;
  prune_cmd->add_option("edges-file", prune_file, "SNAP-style edge list")
      ->required();
  prune_cmd->add_option("--threshold", prune_cfg.boundary_threshold,
                        "Boundary threshold (default 10)");
  prune_cmd->add_option("--min-keep", prune_cfg.min_keep_fraction,
                        "Keep-fraction guard (default 0.5)");
  prune_cmd->add_option("--max-rounds", prune_cfg.max_rounds,
                        "Peeling round cap (default 50)");
  prune_cmd->add_option("--out", prune_out, "Write the pruned graph here");

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Smallest Laplacian eigenvalues");
  GraphArgs spectrum_src;
  spectrum_src.attach(spectrum);
  int spectrum_k = 3;
  spectrum->add_option("--k", spectrum_k, "How many eigenvalues (default 3)");

  try {
    app.parse(argc, argv);
    if (cluster->parsed()) return cmd_cluster(cluster_src);
    if (flip->parsed()) return cmd_flip(flip_src, flip_p, flip_seed, flip_out);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_src, sweep_grid, sweep_trials, sweep_seed,
                       sweep_workers, sweep_out, sweep_svg, sweep_manifest_out,
                       sweep_manifest_in);
    }
    if (check->parsed()) return cmd_check(check_src, check_p);
    if (neg->parsed()) {
      return cmd_negative_demo(neg_n, neg_beta, neg_grid, neg_out);
    }
    if (prune_cmd->parsed()) return cmd_prune(prune_file, prune_cfg, prune_out);
    if (spectrum->parsed()) return cmd_spectrum(spectrum_src, spectrum_k);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
