#pragma once

// Brute-force reference implementations used only by the tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include "hopfflow/graph.hpp"

namespace oracle {

using hopfflow::DecoratedGraph;

// Number of flag bijections p: g -> h (with the induced vertex map) that commute
// with boundary, involution and all labels.
inline long isomorphisms(const DecoratedGraph& g, const DecoratedGraph& h) {
  const auto& a = g.graph;
  const auto& b = h.graph;
  if (a.flag_count() != b.flag_count() || a.vertex_count() != b.vertex_count()) return 0;
  std::vector<int> p(a.flag_count());
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    std::vector<int> vmap(a.vertex_count(), -1);
    bool ok = true;
    for (std::size_t f = 0; f < p.size() && ok; ++f) {
      int u = a.boundary[f], v = b.boundary[p[f]];
      if (vmap[u] == -1)
        vmap[u] = v;
      else if (vmap[u] != v)
        ok = false;
      if (b.involution[p[f]] != p[a.involution[f]]) ok = false;
      if (g.deco.flag_labels[f] != h.deco.flag_labels[p[f]]) ok = false;
    }
    if (!ok) continue;
    std::vector<int> seen(vmap);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) continue;
    for (std::size_t v = 0; v < vmap.size() && ok; ++v)
      if (g.deco.vertex_labels[v] != h.deco.vertex_labels[vmap[v]]) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

inline long automorphisms(const DecoratedGraph& g) { return isomorphisms(g, g); }

// A random relabelling of flag and vertex positions and identifiers.
template <class Rng>
DecoratedGraph shuffle(const DecoratedGraph& g, Rng& rng) {
  const auto& a = g.graph;
  std::vector<int> pf(a.flag_count()), pv(a.vertex_count());
  std::iota(pf.begin(), pf.end(), 0);
  std::iota(pv.begin(), pv.end(), 0);
  std::shuffle(pf.begin(), pf.end(), rng);
  std::shuffle(pv.begin(), pv.end(), rng);
  DecoratedGraph out;
  auto& b = out.graph;
  b.flag_ids.resize(pf.size());
  b.vertex_ids.resize(pv.size());
  b.boundary.resize(pf.size());
  b.involution.resize(pf.size());
  out.deco.flag_labels.resize(pf.size());
  out.deco.vertex_labels.resize(pv.size());
  for (std::size_t v = 0; v < pv.size(); ++v) {
    b.vertex_ids[pv[v]] = "w" + std::to_string(rng() % 1000) + "_" + std::to_string(v);
    out.deco.vertex_labels[pv[v]] = g.deco.vertex_labels[v];
  }
  for (std::size_t f = 0; f < pf.size(); ++f) {
    b.flag_ids[pf[f]] = "h" + std::to_string(rng() % 1000) + "_" + std::to_string(f);
    b.boundary[pf[f]] = pv[a.boundary[f]];
    b.involution[pf[f]] = pf[a.involution[f]];
    out.deco.flag_labels[pf[f]] = g.deco.flag_labels[f];
  }
  return out;
}

}  // namespace oracle
