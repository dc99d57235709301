#pragma once

// Combinatorial graphs in the flag ("half-edge") formalism: a set of flags, a
// set of vertices, a boundary map flags -> vertices and an involution on
// flags.  Edges are the two-element orbits of the involution, tails are its
// fixed points.  Identifiers are opaque strings; algorithms work on the
// positional indices.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hopfflow {

enum class Orientation : std::uint8_t { In, Out };

inline Orientation opposite(Orientation o) { return o == Orientation::In ? Orientation::Out : Orientation::In; }

struct FlagLabel {
  std::optional<Orientation> orient;
  std::optional<std::string> label;

  auto operator<=>(const FlagLabel&) const = default;
  bool operator==(const FlagLabel&) const = default;
};

struct CombinatorialGraph {
  std::vector<std::string> flag_ids;
  std::vector<std::string> vertex_ids;
  std::vector<int> boundary;    // flag -> vertex, -1 when unset
  std::vector<int> involution;  // flag -> flag, -1 when unset

  std::size_t flag_count() const { return flag_ids.size(); }
  std::size_t vertex_count() const { return vertex_ids.size(); }
  bool empty() const { return flag_ids.empty() && vertex_ids.empty(); }

  bool is_tail(int f) const { return involution[f] == f; }
  std::vector<std::vector<int>> flags_by_vertex() const;
  /// (f, involution(f)) with f < involution(f).
  std::vector<std::pair<int, int>> edges() const;
  std::vector<int> tails() const;
  std::size_t edge_count() const;
};

struct Decoration {
  std::vector<FlagLabel> flag_labels;
  std::vector<std::optional<std::string>> vertex_labels;
};

struct DecoratedGraph {
  CombinatorialGraph graph;
  Decoration deco;

  /// Sizes the decoration vectors to the graph, keeping existing entries.
  void fit_decoration();
  /// True when every flag carries an orientation.
  bool fully_oriented() const;
};

class GraphBuilder {
 public:
  int vertex(std::string id, std::optional<std::string> label = std::nullopt);
  int flag(std::string id, int vertex, FlagLabel label = {});
  void join(int f1, int f2);

  /// New edge with generated flag ids. Oriented edges run out of u into v.
  std::pair<int, int> edge(int u, int v, bool oriented = false);
  int tail(int v, std::optional<Orientation> orient = std::nullopt, std::optional<std::string> label = std::nullopt);

  DecoratedGraph build() const { return g_; }

 private:
  DecoratedGraph g_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_graph(const CombinatorialGraph& g);
/// Graph invariants plus decoration sizing and edge-orientation consistency.
ValidationReport validate_decorated(const DecoratedGraph& g);

/// |V| - |E|.
long euler_characteristic(const CombinatorialGraph& g);

struct Classification {
  std::vector<std::vector<int>> components;  // vertex indices, ascending
  bool connected = false;                    // the empty graph counts as not connected
  bool is_tree = false;
  bool is_forest = false;
  std::vector<bool> component_is_corolla;
};

Classification classify(const CombinatorialGraph& g);

/// Component index per vertex (components numbered by smallest vertex).
std::vector<int> component_of_vertices(const CombinatorialGraph& g);

/// The decorated subgraph spanned by `vertices` together with all their flags.
/// Edges leaving the vertex set become tails.
DecoratedGraph induced_subgraph(const DecoratedGraph& g, const std::vector<int>& vertices);

std::vector<DecoratedGraph> connected_components(const DecoratedGraph& g);

DecoratedGraph disjoint_union(const DecoratedGraph& a, const DecoratedGraph& b);

}  // namespace hopfflow
