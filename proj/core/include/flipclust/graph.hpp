#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace flipclust {

using Vertex = std::uint32_t;

/// Unordered vertex pair stored canonically with u < v.
struct VertexPair {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const VertexPair&, const VertexPair&) = default;
};

/// Canonicalizes (a, b); rejects self-pairs and out-of-range endpoints.
VertexPair make_vertex_pair(Vertex a, Vertex b, Vertex n);

/// Immutable undirected simple graph on vertices 0..n-1.
/// Adjacency lists are sorted ascending; construction deduplicates edges.
class Graph {
 public:
  Graph() = default;

  Vertex vertex_count() const { return n_; }
  std::size_t edge_count() const { return m_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::size_t max_degree() const;
  bool has_edge(Vertex a, Vertex b) const;

  /// Edges in canonical order: u < v, sorted lexicographically.
  std::vector<VertexPair> edge_list() const;

  /// Builds directly from canonical pairs (u < v, sorted, unique, in range).
  /// Callers that cannot guarantee this must go through build_graph().
  static Graph from_canonical_pairs(Vertex n, std::span<const VertexPair> pairs);

 private:
  Vertex n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<Vertex>> adj_;
};

/// Set of unordered vertex pairs over 0..n-1, canonical and duplicate-free.
class EdgeSet {
 public:
  EdgeSet() = default;
  /// Validates, canonicalizes and deduplicates the given pairs.
  EdgeSet(Vertex n, std::vector<VertexPair> pairs);

  Vertex vertex_count() const { return n_; }
  std::size_t size() const { return pairs_.size(); }
  const std::vector<VertexPair>& pairs() const { return pairs_; }

 private:
  Vertex n_ = 0;
  std::vector<VertexPair> pairs_;
};

/// One side of a bipartition of 0..n-1, stored as a bitset so that the
/// partition distance reduces to popcounts of XORed words.
class Cut {
 public:
  Cut(Vertex n, std::span<const Vertex> members);

  Vertex ambient_size() const { return n_; }
  std::size_t size() const { return members_; }
  bool contains(Vertex v) const {
    return (words_[v >> 6] >> (v & 63)) & 1u;
  }
  Cut complement() const;
  std::vector<Vertex> members() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  Cut() = default;
  Vertex n_ = 0;
  std::size_t members_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Builds a simple graph from arbitrary (possibly duplicated) pairs.
/// Rejects self-loops and out-of-range endpoints.
Graph build_graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> pairs);

/// Graph whose edge set is E(g) xor f. f must live on the same vertex count.
Graph symmetric_difference(const Graph& g, const EdgeSet& f);

/// Number of edges with exactly one endpoint in s. s must be nontrivial.
std::size_t cut_edges(const Graph& g, const Cut& s);

/// e(S, S-bar) / (|S| * |S-bar|).
double cut_ratio_alpha(const Graph& g, const Cut& s);

/// e(S, S-bar) / min(|S|, |S-bar|).
double cut_ratio_alpha_prime(const Graph& g, const Cut& s);

/// Partition distance min(2|S xor S'|, 2|S xor comp(S')|); even, complement-
/// invariant in both arguments, at most n.
std::size_t d_size(const Cut& a, const Cut& b);

struct MinCutResult {
  Cut cut;
  double alpha = 0.0;
  std::size_t crossing_edges = 0;
};

/// Exhaustive minimum of the alpha cut-ratio over all nontrivial bipartitions.
/// Ties resolve to the lexicographically smallest member set containing
/// vertex 0. Refuses graphs larger than `limit` vertices.
MinCutResult brute_force_min_cut(const Graph& g, Vertex limit = 16);

/// Connected components, each sorted ascending; components ordered by size
/// descending, then by smallest contained vertex.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

/// Induced subgraph on `keep` (sorted ascending); vertex i of the result is
/// keep[i].
Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep);

}  // namespace flipclust
