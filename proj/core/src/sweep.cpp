#include "flipclust/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "flipclust/errors.hpp"
#include "flipclust/ingest.hpp"
#include "flipclust/privacy.hpp"
#include "flipclust/rng.hpp"
#include "flipclust/spectral.hpp"

namespace flipclust {

int ProbabilityRecord::worst_d_size() const {
  int worst = 0;
  for (const TrialOutcome& t : trials) {
    if (t.solver_ok) worst = std::max(worst, t.d_size);
  }
  return worst;
}

double ProbabilityRecord::mean_d_size() const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const TrialOutcome& t : trials) {
    if (t.solver_ok) {
      sum += t.d_size;
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 0.0;
}

double ProbabilityRecord::stddev_d_size() const {
  const double mean = mean_d_size();
  double sq = 0.0;
  std::size_t count = 0;
  for (const TrialOutcome& t : trials) {
    if (t.solver_ok) {
      sq += (t.d_size - mean) * (t.d_size - mean);
      ++count;
    }
  }
  return count > 0 ? std::sqrt(sq / static_cast<double>(count)) : 0.0;
}

namespace {

void validate_config(const SweepConfig& cfg) {
  if (cfg.p_grid.empty()) {
    throw std::invalid_argument("sweep: empty probability grid");
  }
  for (double p : cfg.p_grid) {
    if (!(p >= 0.0 && p <= 0.5)) {
      throw std::invalid_argument("sweep: grid entry outside [0, 0.5]");
    }
  }
  if (cfg.trials < 1) {
    throw std::invalid_argument("sweep: need at least one trial");
  }
}

}  // namespace

SweepResult robustness_sweep(const Graph& g, const SweepConfig& cfg) {
  validate_config(cfg);
  if (connected_components(g).size() != 1) {
    throw std::invalid_argument("sweep: input graph must be connected");
  }
  const Vertex n = g.vertex_count();

  SweepResult result;
  result.base.n = n;
  result.base.m = g.edge_count();
  result.base.max_degree = g.max_degree();
  {
    const int k = n >= 3 ? 3 : 2;
    const Spectrum spec = smallest_eigenpairs(laplacian(g), k);
    result.base.lambda2 = spec.eigenvalues(1);
    result.base.lambda3 = k == 3 ? spec.eigenvalues(2) : 0.0;
    result.base.eta = result.base.lambda3 > 1e-12
                          ? static_cast<double>(result.base.max_degree) *
                                result.base.lambda2 /
                                (result.base.lambda3 * result.base.lambda3)
                          : 0.0;
  }

  const SweepCut base_cut = sweep_cut_sc2(g);

  result.per_p.resize(cfg.p_grid.size());
  for (std::size_t i = 0; i < cfg.p_grid.size(); ++i) {
    result.per_p[i].p = cfg.p_grid[i];
    result.per_p[i].trials.resize(cfg.trials);
  }

  const std::size_t total_tasks = cfg.p_grid.size() * cfg.trials;
  const auto run_task = [&](std::size_t task) {
    const std::size_t p_index = task / cfg.trials;
    const std::size_t trial = task % cfg.trials;
    const double p = cfg.p_grid[p_index];
    const std::uint64_t seed = mix_seed(cfg.base_seed, p_index, trial);
    TrialOutcome& out = result.per_p[p_index].trials[trial];
    out.seed = seed;
    try {
      const auto [flipped, sample] = apply_randomized_response(g, p, seed);
      const SweepCut cut =
          sweep_cut_sc2(flipped, DisconnectedPolicy::kLargestComponent);
      out.flipped_disconnected = cut.used_largest_component;
      out.d_size = static_cast<int>(d_size(base_cut.cut, cut.cut));
      out.solver_ok = true;
    } catch (const NumericalError&) {
      out.solver_ok = false;
      out.d_size = -1;
    }
  };

  int workers = cfg.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  if (workers == 1 || total_tasks < 2) {
    for (std::size_t t = 0; t < total_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int count = std::min<int>(workers, static_cast<int>(total_tasks));
    pool.reserve(count);
    for (int w = 0; w < count; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t t = next.fetch_add(1);
          if (t >= total_tasks) return;
          run_task(t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const ProbabilityRecord& rec : result.per_p) {
    if (!result.instability_onset_p &&
        rec.worst_d_size() > 0.2 * static_cast<double>(n)) {
      result.instability_onset_p = rec.p;
    }
  }
  return result;
}

namespace {

std::string format_double(double x) {
  std::ostringstream out;
  out << std::setprecision(17) << x;
  return out.str();
}

}  // namespace

std::filesystem::path emit_csv(const SweepResult& result,
                               const std::filesystem::path& path) {
  if (result.per_p.empty()) {
    throw std::invalid_argument("emit_csv: empty sweep result");
  }
  std::ofstream out(path);
  if (!out) {
    throw DataError("emit_csv: cannot open " + path.string());
  }
  out << "p,trial,d_size,lambda2,lambda3,delta,eta,seed\n";
  for (const ProbabilityRecord& rec : result.per_p) {
    for (std::size_t t = 0; t < rec.trials.size(); ++t) {
      const TrialOutcome& trial = rec.trials[t];
      out << format_double(rec.p) << ',' << t << ',' << trial.d_size << ','
          << format_double(result.base.lambda2) << ','
          << format_double(result.base.lambda3) << ',' << result.base.max_degree
          << ',' << format_double(result.base.eta) << ',' << trial.seed << '\n';
    }
  }
  if (!out) {
    throw DataError("emit_csv: write failed for " + path.string());
  }

  std::filesystem::path summary = path;
  summary.replace_extension(".summary.csv");
  std::ofstream sum(summary);
  if (!sum) {
    throw DataError("emit_csv: cannot open " + summary.string());
  }
  sum << "p,worst,mean,std\n";
  for (const ProbabilityRecord& rec : result.per_p) {
    sum << format_double(rec.p) << ',' << rec.worst_d_size() << ','
        << format_double(rec.mean_d_size()) << ','
        << format_double(rec.stddev_d_size()) << '\n';
  }
  if (!sum) {
    throw DataError("emit_csv: write failed for " + summary.string());
  }
  return summary;
}

void emit_svg(const SweepResult& result, const std::filesystem::path& path) {
  if (result.per_p.empty()) {
    throw std::invalid_argument("emit_svg: empty sweep result");
  }
  const double width = 800, height = 500;
  const double left = 70, right = 30, top = 30, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double p_max = 0.0, y_max = 1.0;
  for (const ProbabilityRecord& rec : result.per_p) {
    p_max = std::max(p_max, rec.p);
    y_max = std::max(y_max, static_cast<double>(rec.worst_d_size()));
  }
  if (p_max <= 0.0) p_max = 1.0;

  const auto sx = [&](double p) { return left + p / p_max * plot_w; };
  const auto sy = [&](double y) { return top + plot_h - y / y_max * plot_h; };

  const auto polyline = [&](auto&& value_of) {
    std::ostringstream pts;
    for (const ProbabilityRecord& rec : result.per_p) {
      pts << sx(rec.p) << ',' << sy(value_of(rec)) << ' ';
    }
    return pts.str();
  };

  std::ofstream out(path);
  if (!out) {
    throw DataError("emit_svg: cannot open " + path.string());
  }
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n"
      << "  <line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
      << left + plot_w << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n"
      << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n"
      << "  <text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
      << "\" text-anchor=\"middle\">flip probability p</text>\n"
      << "  <text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">d_size</text>\n"
      << "  <text x=\"" << left << "\" y=\"" << height - 38
      << "\" text-anchor=\"middle\">0</text>\n"
      << "  <text x=\"" << left + plot_w << "\" y=\"" << height - 38
      << "\" text-anchor=\"middle\">" << format_double(p_max) << "</text>\n"
      << "  <text x=\"" << left - 8 << "\" y=\"" << top + 4
      << "\" text-anchor=\"end\">" << y_max << "</text>\n"
      << "  <polyline fill=\"none\" stroke=\"crimson\" stroke-width=\"2\" "
         "points=\""
      << polyline([](const ProbabilityRecord& r) {
           return static_cast<double>(r.worst_d_size());
         })
      << "\"/>\n"
      << "  <polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" "
         "points=\""
      << polyline([](const ProbabilityRecord& r) { return r.mean_d_size(); })
      << "\"/>\n"
      << "  <text x=\"" << left + plot_w - 10 << "\" y=\"" << top + 16
      << "\" text-anchor=\"end\" fill=\"crimson\">worst</text>\n"
      << "  <text x=\"" << left + plot_w - 10 << "\" y=\"" << top + 34
      << "\" text-anchor=\"end\" fill=\"steelblue\">mean</text>\n"
      << "</svg>\n";
  if (!out) {
    throw DataError("emit_svg: write failed for " + path.string());
  }
}

std::string run_manifest(const SweepConfig& cfg, const Graph& g) {
  validate_config(cfg);
  nlohmann::json manifest;
  manifest["artifact"] = "flipclust";
  manifest["version"] = "0.1.0";
  manifest["rng"] = kGeneratorId;
  manifest["seed_schedule"] =
      "trial seed = splitmix64 avalanche mix of (base_seed, p_index, trial)";
  manifest["base_seed"] = cfg.base_seed;
  manifest["trials"] = cfg.trials;
  manifest["p_grid"] = cfg.p_grid;
  manifest["graph_source"] = cfg.graph_source;
  manifest["graph_hash"] = graph_content_hash(g);
  manifest["graph_n"] = g.vertex_count();
  manifest["graph_m"] = g.edge_count();
  return manifest.dump(2);
}

ManifestData parse_manifest(const std::string& manifest_json) {
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_json);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("parse_manifest: invalid JSON: ") + e.what());
  }
  try {
    ManifestData data;
    data.config.p_grid = manifest.at("p_grid").get<std::vector<double>>();
    data.config.trials = manifest.at("trials").get<int>();
    data.config.base_seed = manifest.at("base_seed").get<std::uint64_t>();
    data.config.graph_source = manifest.at("graph_source").get<std::string>();
    data.graph_hash = manifest.at("graph_hash").get<std::uint64_t>();
    data.rng_id = manifest.at("rng").get<std::string>();
    return data;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("parse_manifest: missing field: ") + e.what());
  }
}

SweepResult replay_sweep(const ManifestData& manifest, const Graph& g) {
  if (manifest.rng_id != kGeneratorId) {
    throw DataError("replay_sweep: manifest was produced with generator '" +
                    manifest.rng_id + "', this build uses '" + kGeneratorId +
                    "'");
  }
  if (graph_content_hash(g) != manifest.graph_hash) {
    throw DataError("replay_sweep: graph content hash mismatch");
  }
  return robustness_sweep(g, manifest.config);
}

}  // namespace flipclust
