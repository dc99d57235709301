#pragma once

// Orientation analysis and cuts of oriented graphs.
//
// An edge whose halves are labelled (out at u, in at v) runs from u to v.  A
// cut splits the vertices into an upper and a lower part such that every
// oriented wheel stays on one side and every crossing edge runs upper -> lower.

#include <utility>
#include <vector>

#include "hopfflow/graph.hpp"

namespace hopfflow {

struct DirectedResult {
  bool directed = false;
  /// Strictly decreasing along every oriented edge when directed (sinks at 0).
  std::vector<int> height;
};

DirectedResult is_directed(const DecoratedGraph& g);

/// Strongly connected component id per vertex of the orientation relation.
std::vector<int> oriented_scc(const DecoratedGraph& g);

struct Cut {
  std::vector<int> upper;  // vertex indices, ascending
  std::vector<int> lower;
  bool proper = false;
};

/// Improper upper cut (nothing above) first, proper cuts in bitmask order, then
/// the improper lower cut. The empty graph has the single cut (empty, empty).
std::vector<Cut> enumerate_cuts(const DecoratedGraph& g);

bool is_cut(const DecoratedGraph& g, const Cut& c);

/// Edges crossing from the upper to the lower part.
std::size_t crossing_edges(const DecoratedGraph& g, const Cut& c);

/// (upper part, lower part); severed halves become tails keeping their labels.
std::pair<DecoratedGraph, DecoratedGraph> apply_cut(const DecoratedGraph& g, const Cut& c);

}  // namespace hopfflow
