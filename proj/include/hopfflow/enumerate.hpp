#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hopfflow/graph.hpp"

namespace hopfflow {

struct GraphClass {
  std::string key;
  DecoratedGraph graph;  // decoded representative
};

/// Cap on the number of classes any enumeration may produce; reads
/// HOPFFLOW_MAX_CLASSES, default 10^6.
std::size_t default_class_cap();

/// One representative per isomorphism class of tail-free, undecorated graphs
/// with at most `max_edges` edges.  The empty graph is always first. With
/// `valences`, every vertex valence must lie in the set.  Ordered by
/// (edges, vertices, key).
std::vector<GraphClass> enumerate_graphs(int max_edges, const std::optional<std::set<int>>& valences = std::nullopt,
                                         std::size_t cap = default_class_cap());

/// Connected non-empty classes only, same ordering.
std::vector<GraphClass> enumerate_connected_graphs(int max_edges,
                                                   const std::optional<std::set<int>>& valences = std::nullopt,
                                                   std::size_t cap = default_class_cap());

/// All fully oriented graphs (tails allowed, no auxiliary labels) with at most
/// `max_flags` flags, one per isomorphism class, empty graph first. Ordered by
/// (flags, vertices, key).
std::vector<GraphClass> enumerate_oriented_graphs(int max_flags, std::size_t cap = default_class_cap());

std::vector<GraphClass> enumerate_connected_oriented_graphs(int max_flags, std::size_t cap = default_class_cap());

}  // namespace hopfflow
