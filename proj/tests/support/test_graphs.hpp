#pragma once

// Shared fixtures and generators for the test suites.

#include <numeric>
#include <utility>
#include <vector>

#include "flipclust/generators.hpp"
#include "flipclust/graph.hpp"
#include "flipclust/rng.hpp"

namespace flipclust::testing {

inline Graph from_pairs(Vertex n,
                        std::vector<std::pair<Vertex, Vertex>> pairs) {
  return build_graph(n, pairs);
}

inline Graph triangle() { return from_pairs(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Graph path(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 0; v + 1 < n; ++v) pairs.emplace_back(v, v + 1);
  return from_pairs(n, pairs);
}

inline Graph complete(Vertex n) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  return from_pairs(n, pairs);
}

/// Two k-cliques {0..k-1} and {k..2k-1} joined by the edge (k-1, k).
inline Graph barbell(Vertex k = 3) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex u = 0; u < k; ++u) {
    for (Vertex v = u + 1; v < k; ++v) {
      pairs.emplace_back(u, v);
      pairs.emplace_back(k + u, k + v);
    }
  }
  pairs.emplace_back(k - 1, k);
  return from_pairs(2 * k, pairs);
}

/// Random spanning tree plus `extra` random chords: always connected.
inline Graph random_connected_graph(Vertex n, std::size_t extra,
                                    SplitMix64& rng) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 1; v < n; ++v) {
    const Vertex parent = static_cast<Vertex>(rng.next() % v);
    pairs.emplace_back(parent, v);
  }
  for (std::size_t e = 0; e < extra && n >= 2; ++e) {
    const Vertex a = static_cast<Vertex>(rng.next() % n);
    Vertex b = static_cast<Vertex>(rng.next() % n);
    if (a == b) b = (b + 1) % n;
    pairs.emplace_back(a, b);
  }
  return from_pairs(n, pairs);
}

/// Uniformly random member set that is neither empty nor everything.
inline Cut random_nontrivial_cut(Vertex n, SplitMix64& rng) {
  std::vector<Vertex> members;
  while (true) {
    members.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (rng.next() & 1) members.push_back(v);
    }
    if (!members.empty() && members.size() < n) break;
  }
  return Cut(n, members);
}

inline Cut prefix_cut(Vertex n, Vertex k) {
  std::vector<Vertex> members(k);
  std::iota(members.begin(), members.end(), Vertex{0});
  return Cut(n, members);
}

/// Two-block planted-partition instance via the block model.
inline Graph planted_blocks(Vertex half, double p_in, double p_out,
                            std::uint64_t seed) {
  BlockModelSpec spec;
  spec.block_sizes = {half, half};
  spec.probabilities = {{p_in, p_out}, {p_out, p_in}};
  return sbm(spec, seed);
}

}  // namespace flipclust::testing
