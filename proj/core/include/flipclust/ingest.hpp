#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "flipclust/graph.hpp"

namespace flipclust {

/// Result of parsing a whitespace-separated edge list ("u v" per line,
/// '#' comment lines skipped, arbitrary nonnegative node ids).
struct ParsedEdgeList {
  Graph graph;
  /// Dense id -> original file id, ascending (the remap is deterministic).
  std::vector<std::uint64_t> original_ids;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_collapsed = 0;
};

ParsedEdgeList parse_edge_list(const std::filesystem::path& path);

struct PruneConfig {
  std::size_t boundary_threshold = 10;
  double min_keep_fraction = 0.5;
  std::size_t max_rounds = 50;
};

struct PruneRemoval {
  std::size_t round = 0;         // 0 = initial component cleanup
  std::size_t size = 0;          // vertices removed
  std::size_t boundary = 0;      // outgoing edges of the removed set
  std::string reason;            // "component" or "sweep"
  std::vector<Vertex> vertices;  // ids in the *input* graph
};

struct PruneResult {
  Graph graph;
  std::vector<Vertex> kept_ids;  // final dense id -> input graph id
  std::vector<PruneRemoval> removals;
  std::size_t rounds = 0;
};

/// Peels low-boundary peripheral sets: keeps the largest connected component,
/// then repeatedly runs the sweep cut and removes the strictly smaller side
/// while its boundary is at most `boundary_threshold` and the larger side
/// retains at least `min_keep_fraction` of the current vertices. Deterministic
/// because the sweep cut is.
PruneResult prune(const Graph& g, const PruneConfig& cfg = {});

/// Canonical on-disk format: header "n m", then m lines "u v" with u < v,
/// sorted lexicographically.
void write_graph(const Graph& g, const std::filesystem::path& path);
Graph read_graph(const std::filesystem::path& path);

/// FNV-1a (64-bit) over the canonical serialization; flips with any edge.
std::uint64_t graph_content_hash(const Graph& g);

}  // namespace flipclust
