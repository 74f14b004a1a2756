#include "hypertess/graph.hpp"

#include <bit>
#include <deque>
#include <sstream>

#include "hypertess/error.hpp"

namespace hypertess {

std::optional<std::size_t> TessellationGraph::find(const BitCode& code) const {
  const auto it = index.find(code);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

TessellationGraph build_tessellation_graph(std::span<const BitCode> codes) {
  TessellationGraph g;
  if (codes.empty()) return g;
  g.m = codes.front().size();
  for (std::size_t p = 0; p < codes.size(); ++p) {
    if (codes[p].size() != g.m) {
      throw Error(ErrorKind::LengthMismatch, "graph: code " + std::to_string(p) + " has a different length");
    }
    const auto [it, inserted] = g.index.emplace(codes[p], g.nodes.size());
    if (inserted) g.nodes.push_back(GraphNode{codes[p], {}});
    g.nodes[it->second].points.push_back(p);
  }

  g.adjacency.resize(g.nodes.size());
  for (std::size_t a = 0; a < g.nodes.size(); ++a) {
    const auto wa = g.nodes[a].code.words();
    for (std::size_t b = a + 1; b < g.nodes.size(); ++b) {
      const auto wb = g.nodes[b].code.words();
      std::size_t diff = 0;
      for (std::size_t w = 0; w < wa.size() && diff <= 1; ++w) diff += std::popcount(wa[w] ^ wb[w]);
      if (diff == 1) {
        g.edges.emplace_back(a, b);
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
      }
    }
  }
  return g;
}

TessellationGraph build_tessellation_graph(std::span<const BitCode> codes,
                                           std::span<const UnitVector> points) {
  if (codes.size() != points.size()) {
    throw Error(ErrorKind::LengthMismatch, "graph: codes and points differ in count");
  }
  return build_tessellation_graph(codes);
}

namespace {

std::vector<std::size_t> bfs_from(const TessellationGraph& g, std::size_t from,
                                  std::optional<std::size_t> stop_at) {
  std::vector<std::size_t> dist(g.nodes.size(), kUnreachable);
  std::deque<std::size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (stop_at && u == *stop_at) break;
    for (std::size_t v : g.adjacency[u]) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

void check_node(const TessellationGraph& g, std::size_t node) {
  if (node >= g.nodes.size()) throw Error(ErrorKind::InvalidArgument, "graph node out of range");
}

}  // namespace

std::optional<std::size_t> bfs_distance(const TessellationGraph& g, std::size_t from,
                                        std::size_t to) {
  check_node(g, from);
  check_node(g, to);
  const auto dist = bfs_from(g, from, to);
  if (dist[to] == kUnreachable) return std::nullopt;
  return dist[to];
}

DistanceComparison compare_distances(const TessellationGraph& g, std::size_t from, std::size_t to) {
  DistanceComparison out;
  out.graph = bfs_distance(g, from, to);
  out.cube = hamming_count(g.nodes[from].code, g.nodes[to].code);
  out.unobserved_intermediate = !out.graph || *out.graph > out.cube;
  return out;
}

std::vector<std::vector<std::size_t>> all_pairs_bfs(const TessellationGraph& g) {
  std::vector<std::vector<std::size_t>> dist;
  dist.reserve(g.nodes.size());
  for (std::size_t u = 0; u < g.nodes.size(); ++u) dist.push_back(bfs_from(g, u, std::nullopt));
  return dist;
}

std::string to_dot(const TessellationGraph& g, std::size_t label_digits) {
  std::ostringstream out;
  out << "graph tessellation {\n";
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    out << "  n" << u << " [label=\"" << g.nodes[u].code.to_hex().substr(0, label_digits)
        << "\", points=" << g.nodes[u].points.size() << "];\n";
  }
  for (const auto& [a, b] : g.edges) out << "  n" << a << " -- n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace hypertess
