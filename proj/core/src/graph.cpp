#include "flipclust/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "flipclust/errors.hpp"

namespace flipclust {

namespace {

std::string pair_str(Vertex a, Vertex b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

void check_vertex(Vertex v, Vertex n) {
  if (v >= n) {
    throw std::invalid_argument("vertex id " + std::to_string(v) +
                                " out of range for n=" + std::to_string(n));
  }
}

}  // namespace

VertexPair make_vertex_pair(Vertex a, Vertex b, Vertex n) {
  check_vertex(a, n);
  check_vertex(b, n);
  if (a == b) {
    throw std::invalid_argument("self-loop pair " + pair_str(a, b));
  }
  return a < b ? VertexPair{a, b} : VertexPair{b, a};
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nbrs : adj_) best = std::max(best, nbrs.size());
  return best;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_ || a == b) return false;
  const auto& nbrs = adj_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<VertexPair> Graph::edge_list() const {
  std::vector<VertexPair> edges;
  edges.reserve(m_);
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : adj_[u]) {
      if (v > u) edges.push_back({u, v});
    }
  }
  return edges;
}

Graph Graph::from_canonical_pairs(Vertex n, std::span<const VertexPair> pairs) {
  Graph g;
  g.n_ = n;
  g.m_ = pairs.size();
  g.adj_.assign(n, {});
  std::vector<std::size_t> deg(n, 0);
  for (const auto& e : pairs) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (Vertex v = 0; v < n; ++v) g.adj_[v].reserve(deg[v]);
  for (const auto& e : pairs) {
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

EdgeSet::EdgeSet(Vertex n, std::vector<VertexPair> pairs) : n_(n) {
  for (auto& e : pairs) e = make_vertex_pair(e.u, e.v, n);
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  pairs_ = std::move(pairs);
}

Cut::Cut(Vertex n, std::span<const Vertex> members) : n_(n) {
  words_.assign((static_cast<std::size_t>(n) + 63) / 64, 0);
  for (Vertex v : members) {
    check_vertex(v, n);
    std::uint64_t& w = words_[v >> 6];
    const std::uint64_t bit = 1ULL << (v & 63);
    if (w & bit) continue;
    w |= bit;
    ++members_;
  }
}

Cut Cut::complement() const {
  Cut out;
  out.n_ = n_;
  out.members_ = n_ - members_;
  out.words_.resize(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  if (!out.words_.empty() && (n_ & 63) != 0) {
    out.words_.back() &= (1ULL << (n_ & 63)) - 1;
  }
  return out;
}

std::vector<Vertex> Cut::members() const {
  std::vector<Vertex> out;
  out.reserve(members_);
  for (Vertex v = 0; v < n_; ++v) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

Graph build_graph(Vertex n, std::span<const std::pair<Vertex, Vertex>> pairs) {
  std::vector<VertexPair> canonical;
  canonical.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    canonical.push_back(make_vertex_pair(a, b, n));
  }
  std::sort(canonical.begin(), canonical.end());
  canonical.erase(std::unique(canonical.begin(), canonical.end()),
                  canonical.end());
  return Graph::from_canonical_pairs(n, canonical);
}

Graph symmetric_difference(const Graph& g, const EdgeSet& f) {
  if (f.vertex_count() != g.vertex_count()) {
    throw std::invalid_argument(
        "symmetric_difference: vertex count mismatch (" +
        std::to_string(g.vertex_count()) + " vs " +
        std::to_string(f.vertex_count()) + ")");
  }
  const std::vector<VertexPair> ge = g.edge_list();
  std::vector<VertexPair> out;
  out.reserve(ge.size() + f.size());
  std::set_symmetric_difference(ge.begin(), ge.end(), f.pairs().begin(),
                                f.pairs().end(), std::back_inserter(out));
  return Graph::from_canonical_pairs(g.vertex_count(), out);
}

namespace {

void check_nontrivial(const Graph& g, const Cut& s, const char* op) {
  if (s.ambient_size() != g.vertex_count()) {
    throw std::invalid_argument(std::string(op) +
                                ": cut ambient size mismatch");
  }
  if (s.size() == 0 || s.size() == g.vertex_count()) {
    throw std::invalid_argument(std::string(op) + ": cut side is empty");
  }
}

}  // namespace

std::size_t cut_edges(const Graph& g, const Cut& s) {
  check_nontrivial(g, s, "cut_edges");
  std::size_t crossing = 0;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (!s.contains(u)) continue;
    for (Vertex v : g.neighbors(u)) {
      if (!s.contains(v)) ++crossing;
    }
  }
  return crossing;
}

double cut_ratio_alpha(const Graph& g, const Cut& s) {
  check_nontrivial(g, s, "cut_ratio_alpha");
  const double a = static_cast<double>(s.size());
  const double b = static_cast<double>(g.vertex_count() - s.size());
  return static_cast<double>(cut_edges(g, s)) / (a * b);
}

double cut_ratio_alpha_prime(const Graph& g, const Cut& s) {
  check_nontrivial(g, s, "cut_ratio_alpha_prime");
  const std::size_t small = std::min<std::size_t>(
      s.size(), g.vertex_count() - s.size());
  return static_cast<double>(cut_edges(g, s)) / static_cast<double>(small);
}

std::size_t d_size(const Cut& a, const Cut& b) {
  if (a.ambient_size() != b.ambient_size()) {
    throw std::invalid_argument("d_size: ambient size mismatch");
  }
  std::size_t hamming = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i) {
    hamming += std::popcount(a.words()[i] ^ b.words()[i]);
  }
  const std::size_t n = a.ambient_size();
  return 2 * std::min(hamming, n - hamming);
}

MinCutResult brute_force_min_cut(const Graph& g, Vertex limit) {
  const Vertex n = g.vertex_count();
  if (n > limit) {
    throw std::invalid_argument("brute_force_min_cut: n=" + std::to_string(n) +
                                " exceeds limit " + std::to_string(limit));
  }
  if (n < 2) {
    throw std::invalid_argument("brute_force_min_cut: no nontrivial cut");
  }
  if (n > 32) {
    throw std::invalid_argument("brute_force_min_cut: hard cap is 32 vertices");
  }

  // Adjacency as bitmasks; crossing count per subset via popcounts.
  std::vector<std::uint32_t> adj_mask(n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.neighbors(u)) adj_mask[u] |= 1u << v;
  }
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  // Enumerate member sets containing vertex 0; every bipartition appears
  // exactly once in this orientation.
  const auto members_of = [n](std::uint32_t mask) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v) {
      if (mask & (1u << v)) out.push_back(v);
    }
    return out;
  };

  std::uint64_t best_cross = 0;
  std::uint64_t best_weight = 0;  // |S| * |S-bar|
  std::uint32_t best_mask = 0;
  bool have_best = false;
  for (std::uint32_t bits = 0; bits + 1 < (1u << (n - 1)); ++bits) {
    const std::uint32_t mask = (bits << 1) | 1u;
    std::uint64_t cross = 0;
    for (Vertex u = 0; u < n; ++u) {
      if (mask & (1u << u)) cross += std::popcount(adj_mask[u] & (full & ~mask));
    }
    const std::uint64_t size = std::popcount(mask);
    const std::uint64_t weight = size * (n - size);
    // cross/weight vs best_cross/best_weight, compared exactly.
    const bool better =
        !have_best || cross * best_weight < best_cross * weight;
    const bool tie = have_best && cross * best_weight == best_cross * weight;
    if (better ||
        (tie && members_of(mask) < members_of(best_mask))) {
      have_best = true;
      best_cross = cross;
      best_weight = weight;
      best_mask = mask;
    }
  }

  std::vector<Vertex> members = members_of(best_mask);
  MinCutResult out{Cut(n, members), 0.0, static_cast<std::size_t>(best_cross)};
  out.alpha = static_cast<double>(best_cross) / static_cast<double>(best_weight);
  return out;
}

namespace {

// Iterative DFS to keep small-stack callers safe.
void collect_component(const Graph& g, Vertex start, std::vector<char>& seen,
                       std::vector<Vertex>& out) {
  std::vector<Vertex> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    out.push_back(u);
    for (Vertex v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
}

}  // namespace

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (seen[v]) continue;
    std::vector<Vertex> comp;
    collect_component(g, v, seen, comp);
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::stable_sort(comps.begin(), comps.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.front() < b.front();
                   });
  return comps;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> keep) {
  std::vector<Vertex> dense(g.vertex_count(), static_cast<Vertex>(-1));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    check_vertex(keep[i], g.vertex_count());
    dense[keep[i]] = static_cast<Vertex>(i);
  }
  std::vector<VertexPair> edges;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Vertex u = keep[i];
    for (Vertex v : g.neighbors(u)) {
      if (v > u && dense[v] != static_cast<Vertex>(-1)) {
        Vertex a = static_cast<Vertex>(i);
        Vertex b = dense[v];
        edges.push_back(a < b ? VertexPair{a, b} : VertexPair{b, a});
      }
    }
  }
  std::sort(edges.begin(), edges.end());
  return Graph::from_canonical_pairs(static_cast<Vertex>(keep.size()), edges);
}

}  // namespace flipclust
