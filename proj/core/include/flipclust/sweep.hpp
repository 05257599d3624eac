#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flipclust/graph.hpp"

namespace flipclust {

/// Configuration of a robustness sweep over a grid of flip probabilities.
struct SweepConfig {
  std::vector<double> p_grid;   // entries in [0, 0.5]
  int trials = 100;             // flip samples per grid entry
  std::uint64_t base_seed = 1;  // trial seed = mix_seed(base, p_index, trial)
  int workers = 1;              // 0 = hardware concurrency
  std::string graph_source;     // descriptor recorded in the manifest
};

struct TrialOutcome {
  int d_size = -1;  // -1 when the solver failed on this trial
  std::uint64_t seed = 0;
  bool solver_ok = true;
  bool flipped_disconnected = false;
};

struct ProbabilityRecord {
  double p = 0.0;
  std::vector<TrialOutcome> trials;

  int worst_d_size() const;
  double mean_d_size() const;
  double stddev_d_size() const;  // population standard deviation
};

struct BaseDiagnostics {
  Vertex n = 0;
  std::size_t m = 0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  std::size_t max_degree = 0;
  double eta = 0.0;
};

struct SweepResult {
  BaseDiagnostics base;
  std::vector<ProbabilityRecord> per_p;
  /// First grid entry whose worst d_size exceeds 0.2 n; informational only.
  std::optional<double> instability_onset_p;
};

/// For each grid entry and trial, flips the graph with the derived seed,
/// reruns the sweep cut and records the partition distance to the unflipped
/// clustering. Trials are independent; the result does not depend on worker
/// count or execution order. The input graph must be connected.
SweepResult robustness_sweep(const Graph& g, const SweepConfig& cfg);

/// Writes one row per trial (header "p,trial,d_size,lambda2,lambda3,delta,
/// eta,seed") to `path`, and a per-probability summary ("p,worst,mean,std")
/// next to it (extension ".summary.csv"). Returns the summary path.
std::filesystem::path emit_csv(const SweepResult& result,
                               const std::filesystem::path& path);

/// Two-polyline SVG chart (worst and mean d_size against p). Self-contained.
void emit_svg(const SweepResult& result, const std::filesystem::path& path);

/// JSON manifest from which the sweep can be replayed bit-identically:
/// generator id, seed schedule, grid, trial count and the graph source with
/// its content hash.
std::string run_manifest(const SweepConfig& cfg, const Graph& g);

struct ManifestData {
  SweepConfig config;
  std::uint64_t graph_hash = 0;
  std::string rng_id;
};

ManifestData parse_manifest(const std::string& manifest_json);

/// Replays a sweep from a manifest: verifies the graph hash, then reruns.
SweepResult replay_sweep(const ManifestData& manifest, const Graph& g);

}  // namespace flipclust
