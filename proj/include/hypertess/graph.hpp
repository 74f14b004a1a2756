#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypertess/embedding.hpp"
#include "hypertess/geometry.hpp"

namespace hypertess {

struct GraphNode {
  BitCode code;
  /// Input indices of the points in this cell.
  std::vector<std::size_t> points;
};

/// One vertex per observed cell; an edge joins cells whose codes differ in
/// exactly one bit, i.e. cells separated by a single hyperplane.
struct TessellationGraph {
  std::size_t m = 0;
  std::vector<GraphNode> nodes;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::vector<std::size_t>> adjacency;
  std::unordered_map<BitCode, std::size_t, BitCodeHash> index;

  std::optional<std::size_t> find(const BitCode& code) const;
};

/// Nodes are numbered in order of first appearance.
TessellationGraph build_tessellation_graph(std::span<const BitCode> codes);
TessellationGraph build_tessellation_graph(std::span<const BitCode> codes,
                                           std::span<const UnitVector> points);

/// Hop count between two nodes; nullopt when they are disconnected.
std::optional<std::size_t> bfs_distance(const TessellationGraph& g, std::size_t from,
                                        std::size_t to);

struct DistanceComparison {
  std::size_t cube = 0;
  std::optional<std::size_t> graph;
  /// The path in the graph is longer than the Hamming distance (or missing):
  /// some intermediate cell was never observed.
  bool unobserved_intermediate = false;
};

DistanceComparison compare_distances(const TessellationGraph& g, std::size_t from, std::size_t to);

/// Every node's BFS distances; kUnreachable marks disconnected pairs.
inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);
std::vector<std::vector<std::size_t>> all_pairs_bfs(const TessellationGraph& g);

/// Graphviz export; labels are the first `label_digits` hex digits of each code.
std::string to_dot(const TessellationGraph& g, std::size_t label_digits = 16);

}  // namespace hypertess
