#pragma once

// Canonical labelling of small decorated graphs.
//
// A graph's canonical key is the sorted concatenation of the canonical keys of
// its connected components, so disjoint union is key merging.  A component key
// is the lexicographically least encoding over all vertex orderings reachable
// by individualization/refinement; the encoding records vertex labels, tails,
// loops and edges together with their flag labels and is decodable.

#include <string>
#include <string_view>
#include <vector>

#include "hopfflow/graph.hpp"
#include "hopfflow/rational.hpp"

namespace hopfflow {

struct CanonicalInfo {
  std::string key;
  std::vector<std::string> component_keys;  // sorted, with repetition
  Integer automorphisms;                    // |Aut| of the decorated graph
};

CanonicalInfo canonicalize(const DecoratedGraph& g);

std::string canonical_form(const DecoratedGraph& g);
Integer automorphism_count(const DecoratedGraph& g);

/// Rebuilds a representative graph (ids "v0", "f0", ...) from a key.
DecoratedGraph graph_from_key(std::string_view key);

std::vector<std::string> split_key(std::string_view key);
std::string join_keys(std::vector<std::string> component_keys);
/// Key of the disjoint union.
std::string merge_keys(std::string_view a, std::string_view b);

}  // namespace hopfflow
