#include "hopfflow/cuts.hpp"

#include <algorithm>
#include <functional>

#include "hopfflow/error.hpp"

namespace hopfflow {

namespace {

void require_oriented(const DecoratedGraph& g) {
  if (!g.fully_oriented()) fail(ErrorCode::Argument, "graph is not oriented on every flag");
}

// Oriented adjacency u -> v, with self loops kept.
std::vector<std::vector<int>> successors(const DecoratedGraph& g) {
  std::vector<std::vector<int>> out(g.graph.vertex_count());
  for (auto [a, b] : g.graph.edges()) {
    int u = g.graph.boundary[a], v = g.graph.boundary[b];
    if (*g.deco.flag_labels[a].orient == Orientation::Out)
      out[u].push_back(v);
    else
      out[v].push_back(u);
  }
  return out;
}

}  // namespace

std::vector<int> oriented_scc(const DecoratedGraph& g) {
  require_oriented(g);
  auto succ = successors(g);
  const int n = static_cast<int>(succ.size());
  // Tarjan
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<bool> on_stack(n, false);
  int counter = 0, ncomp = 0;
  std::function<void(int)> visit = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : succ[v]) {
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      while (true) {
        int w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
        if (w == v) break;
      }
      ++ncomp;
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[v] < 0) visit(v);
  return comp;
}

DirectedResult is_directed(const DecoratedGraph& g) {
  require_oriented(g);
  auto succ = successors(g);
  const int n = static_cast<int>(succ.size());
  DirectedResult r;
  std::vector<int> outdeg(n, 0);
  std::vector<std::vector<int>> pred(n);
  for (int u = 0; u < n; ++u)
    for (int v : succ[u]) {
      if (u == v) return r;  // oriented loop
      ++outdeg[u];
      pred[v].push_back(u);
    }
  // peel sinks; height = longest path to a sink
  std::vector<int> height(n, 0), queue;
  for (int v = 0; v < n; ++v)
    if (outdeg[v] == 0) queue.push_back(v);
  std::size_t done = 0;
  while (done < queue.size()) {
    int v = queue[done++];
    for (int u : pred[v]) {
      height[u] = std::max(height[u], height[v] + 1);
      if (--outdeg[u] == 0) queue.push_back(u);
    }
  }
  if (static_cast<int>(queue.size()) != n) return r;
  r.directed = true;
  r.height = std::move(height);
  return r;
}

bool is_cut(const DecoratedGraph& g, const Cut& c) {
  require_oriented(g);
  const std::size_t n = g.graph.vertex_count();
  if (c.upper.size() + c.lower.size() != n) return false;
  std::vector<int> side(n, -1);
  for (int v : c.upper) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || side[v] != -1) return false;
    side[v] = 0;
  }
  for (int v : c.lower) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || side[v] != -1) return false;
    side[v] = 1;
  }
  if (c.upper.empty() || c.lower.empty()) return true;
  auto scc = oriented_scc(g);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (scc[u] == scc[v] && side[u] != side[v]) return false;
  for (auto [a, b] : g.graph.edges()) {
    int u = g.graph.boundary[a], v = g.graph.boundary[b];
    if (side[u] == side[v]) continue;
    int out_flag = *g.deco.flag_labels[a].orient == Orientation::Out ? a : b;
    if (side[g.graph.boundary[out_flag]] != 0) return false;
  }
  return true;
}

std::vector<Cut> enumerate_cuts(const DecoratedGraph& g) {
  require_oriented(g);
  const int n = static_cast<int>(g.graph.vertex_count());
  if (n > 30) fail(ErrorCode::Capacity, "cut enumeration limited to 30 vertices");
  std::vector<Cut> out;
  Cut all_lower;
  for (int v = 0; v < n; ++v) all_lower.lower.push_back(v);
  out.push_back(all_lower);
  if (n == 0) return out;

  auto scc = oriented_scc(g);
  std::vector<std::pair<int, int>> arcs;  // u -> v across distinct vertices
  for (auto [a, b] : g.graph.edges()) {
    int u = g.graph.boundary[a], v = g.graph.boundary[b];
    if (u == v) continue;
    if (*g.deco.flag_labels[a].orient == Orientation::Out)
      arcs.emplace_back(u, v);
    else
      arcs.emplace_back(v, u);
  }
  const unsigned long full = (1UL << n) - 1;
  for (unsigned long mask = 1; mask < full; ++mask) {
    // bit set = upper
    bool ok = true;
    for (auto [u, v] : arcs) {
      bool uu = mask >> u & 1UL, vu = mask >> v & 1UL;
      if (uu == vu) continue;
      if (!uu || scc[u] == scc[v]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n; ++v)
        if (scc[u] == scc[v] && ((mask >> u & 1UL) != (mask >> v & 1UL))) {
          ok = false;
          break;
        }
    if (!ok) continue;
    Cut c;
    c.proper = true;
    for (int v = 0; v < n; ++v) (mask >> v & 1UL ? c.upper : c.lower).push_back(v);
    out.push_back(std::move(c));
  }
  Cut all_upper;
  all_upper.upper = all_lower.lower;
  out.push_back(std::move(all_upper));
  return out;
}

std::size_t crossing_edges(const DecoratedGraph& g, const Cut& c) {
  std::vector<int> side(g.graph.vertex_count(), 1);
  for (int v : c.upper) side[v] = 0;
  std::size_t k = 0;
  for (auto [a, b] : g.graph.edges())
    if (side[g.graph.boundary[a]] != side[g.graph.boundary[b]]) ++k;
  return k;
}

std::pair<DecoratedGraph, DecoratedGraph> apply_cut(const DecoratedGraph& g, const Cut& c) {
  if (!is_cut(g, c)) fail(ErrorCode::Invalid, "vertex partition is not a cut of the graph");
  return {induced_subgraph(g, c.upper), induced_subgraph(g, c.lower)};
}

}  // namespace hopfflow
