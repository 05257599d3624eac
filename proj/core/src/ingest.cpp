#include "flipclust/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "flipclust/errors.hpp"
#include "flipclust/spectral.hpp"

namespace flipclust {

ParsedEdgeList parse_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("parse_edge_list: cannot open " + path.string());
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::size_t self_loops = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream row(line);
    std::uint64_t a = 0, b = 0;
    if (!(row >> a >> b)) {
      throw DataError("parse_edge_list: malformed line " +
                      std::to_string(line_no) + " in " + path.string());
    }
    std::string extra;
    if (row >> extra) {
      throw DataError("parse_edge_list: trailing tokens on line " +
                      std::to_string(line_no) + " in " + path.string());
    }
    if (a == b) {
      ++self_loops;
      continue;
    }
    raw.emplace_back(a, b);
  }
  if (raw.empty()) {
    throw DataError("parse_edge_list: no edges in " + path.string());
  }

  // Dense remap by ascending original id.
  std::map<std::uint64_t, Vertex> remap;
  for (const auto& [a, b] : raw) {
    remap.emplace(a, 0);
    remap.emplace(b, 0);
  }
  ParsedEdgeList out;
  out.original_ids.reserve(remap.size());
  for (auto& [orig, dense] : remap) {
    dense = static_cast<Vertex>(out.original_ids.size());
    out.original_ids.push_back(orig);
  }

  std::vector<VertexPair> pairs;
  pairs.reserve(raw.size());
  const Vertex n = static_cast<Vertex>(remap.size());
  for (const auto& [a, b] : raw) {
    pairs.push_back(make_vertex_pair(remap[a], remap[b], n));
  }
  std::sort(pairs.begin(), pairs.end());
  const auto dup_begin = std::unique(pairs.begin(), pairs.end());
  out.duplicates_collapsed = static_cast<std::size_t>(pairs.end() - dup_begin);
  pairs.erase(dup_begin, pairs.end());

  out.self_loops_dropped = self_loops;
  out.graph = Graph::from_canonical_pairs(n, pairs);
  return out;
}

namespace {

// Keeps `keep` (current-graph ids); logs every other component as removed.
// `ids` maps current ids to input-graph ids and is rewritten for the kept set.
Graph keep_largest_component(const Graph& g, std::vector<Vertex>& ids,
                             std::size_t round,
                             std::vector<PruneRemoval>& removals) {
  const auto comps = connected_components(g);
  if (comps.size() <= 1) return g;
  for (std::size_t c = 1; c < comps.size(); ++c) {
    PruneRemoval rem;
    rem.round = round;
    rem.size = comps[c].size();
    rem.boundary = 0;
    rem.reason = "component";
    for (Vertex v : comps[c]) rem.vertices.push_back(ids[v]);
    removals.push_back(std::move(rem));
  }
  const std::vector<Vertex>& keep = comps.front();
  Graph sub = induced_subgraph(g, keep);
  std::vector<Vertex> new_ids(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) new_ids[i] = ids[keep[i]];
  ids = std::move(new_ids);
  return sub;
}

}  // namespace

PruneResult prune(const Graph& g, const PruneConfig& cfg) {
  PruneResult result;
  std::vector<Vertex> ids(g.vertex_count());
  for (Vertex v = 0; v < g.vertex_count(); ++v) ids[v] = v;

  Graph current = keep_largest_component(g, ids, 0, result.removals);

  for (std::size_t round = 1; round <= cfg.max_rounds; ++round) {
    const Vertex n = current.vertex_count();
    if (n < 3) break;
    const SweepCut sc = sweep_cut_sc2(current);
    const std::size_t side = sc.cut.size();
    const std::size_t other = n - side;
    if (side == other) break;  // no strictly smaller side to peel

    const bool small_is_cut = side < other;
    const std::size_t small_size = small_is_cut ? side : other;
    const std::size_t large_size = n - small_size;
    if (sc.crossing > cfg.boundary_threshold) break;
    if (static_cast<double>(large_size) <
        cfg.min_keep_fraction * static_cast<double>(n)) {
      break;
    }

    const Cut small_side = small_is_cut ? sc.cut : sc.cut.complement();
    PruneRemoval rem;
    rem.round = round;
    rem.size = small_size;
    rem.boundary = sc.crossing;
    rem.reason = "sweep";
    for (Vertex v : small_side.members()) rem.vertices.push_back(ids[v]);
    result.removals.push_back(std::move(rem));

    const Cut keep_side = small_side.complement();
    const std::vector<Vertex> keep = keep_side.members();
    current = induced_subgraph(current, keep);
    std::vector<Vertex> new_ids(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) new_ids[i] = ids[keep[i]];
    ids = std::move(new_ids);

    // Peeling can split the remainder; stay on the largest component.
    current = keep_largest_component(current, ids, round, result.removals);
    result.rounds = round;
  }

  result.graph = std::move(current);
  result.kept_ids = std::move(ids);
  return result;
}

void write_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("write_graph: cannot open " + path.string());
  }
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const VertexPair& e : g.edge_list()) {
    out << e.u << ' ' << e.v << '\n';
  }
  if (!out) {
    throw DataError("write_graph: write failed for " + path.string());
  }
}

Graph read_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("read_graph: cannot open " + path.string());
  }
  std::string header;
  if (!std::getline(in, header)) {
    throw DataError("read_graph: empty file " + path.string());
  }
  std::istringstream head(header);
  std::uint64_t n = 0, m = 0;
  std::string extra;
  if (!(head >> n >> m) || (head >> extra)) {
    throw DataError("read_graph: corrupted header (line 1) in " + path.string());
  }
  if (n > 0xFFFFFFFFULL) {
    throw DataError("read_graph: vertex count too large in " + path.string());
  }
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(m);
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    Vertex a = 0, b = 0;
    if (!(row >> a >> b) || (row >> extra)) {
      throw DataError("read_graph: malformed edge (line " +
                      std::to_string(line_no) + ") in " + path.string());
    }
    pairs.emplace_back(a, b);
  }
  if (pairs.size() != m) {
    throw DataError("read_graph: header promises " + std::to_string(m) +
                    " edges, found " + std::to_string(pairs.size()) + " in " +
                    path.string());
  }
  return build_graph(static_cast<Vertex>(n), pairs);
}

std::uint64_t graph_content_hash(const Graph& g) {
  std::ostringstream canon;
  canon << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const VertexPair& e : g.edge_list()) {
    canon << e.u << ' ' << e.v << '\n';
  }
  const std::string text = canon.str();
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

}  // namespace flipclust
