#include "hopfflow/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hopfflow/error.hpp"

namespace hopfflow {

std::vector<std::vector<int>> CombinatorialGraph::flags_by_vertex() const {
  std::vector<std::vector<int>> out(vertex_count());
  for (std::size_t f = 0; f < flag_count(); ++f)
    if (boundary[f] >= 0 && static_cast<std::size_t>(boundary[f]) < vertex_count())
      out[boundary[f]].push_back(static_cast<int>(f));
  return out;
}

std::vector<std::pair<int, int>> CombinatorialGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t f = 0; f < flag_count(); ++f) {
    int p = involution[f];
    if (p > static_cast<int>(f)) out.emplace_back(static_cast<int>(f), p);
  }
  return out;
}

std::vector<int> CombinatorialGraph::tails() const {
  std::vector<int> out;
  for (std::size_t f = 0; f < flag_count(); ++f)
    if (involution[f] == static_cast<int>(f)) out.push_back(static_cast<int>(f));
  return out;
}

std::size_t CombinatorialGraph::edge_count() const {
  std::size_t n = 0;
  for (std::size_t f = 0; f < flag_count(); ++f)
    if (involution[f] > static_cast<int>(f)) ++n;
  return n;
}

void DecoratedGraph::fit_decoration() {
  deco.flag_labels.resize(graph.flag_count());
  deco.vertex_labels.resize(graph.vertex_count());
}

bool DecoratedGraph::fully_oriented() const {
  if (deco.flag_labels.size() != graph.flag_count()) return graph.flag_count() == 0;
  return std::all_of(deco.flag_labels.begin(), deco.flag_labels.end(),
                     [](const FlagLabel& l) { return l.orient.has_value(); });
}

int GraphBuilder::vertex(std::string id, std::optional<std::string> label) {
  g_.graph.vertex_ids.push_back(std::move(id));
  g_.deco.vertex_labels.push_back(std::move(label));
  return static_cast<int>(g_.graph.vertex_ids.size()) - 1;
}

int GraphBuilder::flag(std::string id, int vertex, FlagLabel label) {
  int f = static_cast<int>(g_.graph.flag_ids.size());
  g_.graph.flag_ids.push_back(std::move(id));
  g_.graph.boundary.push_back(vertex);
  g_.graph.involution.push_back(f);
  g_.deco.flag_labels.push_back(std::move(label));
  return f;
}

void GraphBuilder::join(int f1, int f2) {
  g_.graph.involution[f1] = f2;
  g_.graph.involution[f2] = f1;
}

std::pair<int, int> GraphBuilder::edge(int u, int v, bool oriented) {
  std::string base = "e" + std::to_string(g_.graph.flag_ids.size());
  FlagLabel lu, lv;
  if (oriented) {
    lu.orient = Orientation::Out;
    lv.orient = Orientation::In;
  }
  int a = flag(base + "a", u, lu);
  int b = flag(base + "b", v, lv);
  join(a, b);
  return {a, b};
}

int GraphBuilder::tail(int v, std::optional<Orientation> orient, std::optional<std::string> label) {
  return flag("t" + std::to_string(g_.graph.flag_ids.size()), v, FlagLabel{orient, std::move(label)});
}

ValidationReport validate_graph(const CombinatorialGraph& g) {
  ValidationReport r;
  const int nf = static_cast<int>(g.flag_count());
  const int nv = static_cast<int>(g.vertex_count());
  if (g.boundary.size() != g.flag_ids.size() || g.involution.size() != g.flag_ids.size()) {
    r.violations.push_back("boundary/involution tables do not cover every flag");
    return r;
  }
  std::set<std::string> seen;
  for (const auto& id : g.flag_ids)
    if (!seen.insert(id).second) r.violations.push_back("duplicate flag id '" + id + "'");
  seen.clear();
  for (const auto& id : g.vertex_ids)
    if (!seen.insert(id).second) r.violations.push_back("duplicate vertex id '" + id + "'");

  std::vector<int> incident(nv, 0);
  for (int f = 0; f < nf; ++f) {
    int v = g.boundary[f];
    if (v < 0 || v >= nv)
      r.violations.push_back("flag '" + g.flag_ids[f] + "' has no boundary vertex");
    else
      ++incident[v];
    int p = g.involution[f];
    if (p < 0 || p >= nf) {
      r.violations.push_back("involution undefined on flag '" + g.flag_ids[f] + "'");
      continue;
    }
    int pp = g.involution[p];
    if (pp != f)
      r.violations.push_back("involution not self-inverse at flag '" + g.flag_ids[f] + "' (maps to '" +
                             g.flag_ids[p] + "', which maps to " +
                             (pp >= 0 && pp < nf ? "'" + g.flag_ids[pp] + "'" : std::string("nothing")) + ")");
  }
  for (int v = 0; v < nv; ++v)
    if (incident[v] == 0) r.violations.push_back("vertex '" + g.vertex_ids[v] + "' has no flags");
  return r;
}

ValidationReport validate_decorated(const DecoratedGraph& g) {
  ValidationReport r = validate_graph(g.graph);
  if (g.deco.flag_labels.size() != g.graph.flag_count())
    r.violations.push_back("flag label table size does not match flag count");
  if (g.deco.vertex_labels.size() != g.graph.vertex_count())
    r.violations.push_back("vertex label table size does not match vertex count");
  if (!r.ok()) return r;
  for (auto [a, b] : g.graph.edges()) {
    const auto& la = g.deco.flag_labels[a].orient;
    const auto& lb = g.deco.flag_labels[b].orient;
    if (la.has_value() != lb.has_value())
      r.violations.push_back("edge {" + g.graph.flag_ids[a] + "," + g.graph.flag_ids[b] +
                             "} is oriented on one half only");
    else if (la && *la == *lb)
      r.violations.push_back("edge {" + g.graph.flag_ids[a] + "," + g.graph.flag_ids[b] +
                             "} has equal orientation on both halves");
  }
  return r;
}

long euler_characteristic(const CombinatorialGraph& g) {
  return static_cast<long>(g.vertex_count()) - static_cast<long>(g.edge_count());
}

std::vector<int> component_of_vertices(const CombinatorialGraph& g) {
  const int nv = static_cast<int>(g.vertex_count());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges()) {
    int ra = find(g.boundary[a]), rb = find(g.boundary[b]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> comp(nv);
  std::map<int, int> number;
  for (int v = 0; v < nv; ++v) {
    int root = find(v);
    auto [it, inserted] = number.try_emplace(root, static_cast<int>(number.size()));
    comp[v] = it->second;
  }
  return comp;
}

Classification classify(const CombinatorialGraph& g) {
  Classification c;
  auto comp = component_of_vertices(g);
  int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  c.components.assign(ncomp, {});
  for (int v = 0; v < static_cast<int>(comp.size()); ++v) c.components[comp[v]].push_back(v);
  std::vector<long> comp_edges(ncomp, 0);
  for (auto [a, b] : g.edges()) ++comp_edges[comp[g.boundary[a]]];
  c.connected = ncomp == 1;
  c.is_forest = true;
  for (int i = 0; i < ncomp; ++i) {
    long nv = static_cast<long>(c.components[i].size());
    if (comp_edges[i] != nv - 1) c.is_forest = false;
    c.component_is_corolla.push_back(nv == 1 && comp_edges[i] == 0);
  }
  c.is_tree = c.connected && c.is_forest;
  return c;
}

DecoratedGraph induced_subgraph(const DecoratedGraph& g, const std::vector<int>& vertices) {
  DecoratedGraph out;
  std::vector<int> vmap(g.graph.vertex_count(), -1);
  for (int v : vertices) {
    vmap[v] = static_cast<int>(out.graph.vertex_ids.size());
    out.graph.vertex_ids.push_back(g.graph.vertex_ids[v]);
    out.deco.vertex_labels.push_back(g.deco.vertex_labels.empty() ? std::nullopt : g.deco.vertex_labels[v]);
  }
  std::vector<int> fmap(g.graph.flag_count(), -1);
  for (std::size_t f = 0; f < g.graph.flag_count(); ++f) {
    int v = g.graph.boundary[f];
    if (vmap[v] < 0) continue;
    fmap[f] = static_cast<int>(out.graph.flag_ids.size());
    out.graph.flag_ids.push_back(g.graph.flag_ids[f]);
    out.graph.boundary.push_back(vmap[v]);
    out.deco.flag_labels.push_back(g.deco.flag_labels.empty() ? FlagLabel{} : g.deco.flag_labels[f]);
  }
  out.graph.involution.resize(out.graph.flag_ids.size());
  for (std::size_t f = 0; f < g.graph.flag_count(); ++f) {
    if (fmap[f] < 0) continue;
    int p = fmap[g.graph.involution[f]];
    out.graph.involution[fmap[f]] = p >= 0 ? p : fmap[f];
  }
  return out;
}

std::vector<DecoratedGraph> connected_components(const DecoratedGraph& g) {
  auto cls = classify(g.graph);
  std::vector<DecoratedGraph> out;
  out.reserve(cls.components.size());
  for (const auto& vs : cls.components) out.push_back(induced_subgraph(g, vs));
  return out;
}

namespace {

std::string fresh_id(const std::string& id, const std::set<std::string>& taken) {
  std::string candidate = id;
  while (taken.count(candidate)) candidate = "u." + candidate;
  return candidate;
}

}  // namespace

DecoratedGraph disjoint_union(const DecoratedGraph& a, const DecoratedGraph& b) {
  DecoratedGraph out = a;
  out.fit_decoration();
  std::set<std::string> fl(a.graph.flag_ids.begin(), a.graph.flag_ids.end());
  std::set<std::string> vl(a.graph.vertex_ids.begin(), a.graph.vertex_ids.end());
  const int f0 = static_cast<int>(a.graph.flag_count());
  const int v0 = static_cast<int>(a.graph.vertex_count());
  for (std::size_t v = 0; v < b.graph.vertex_count(); ++v) {
    auto id = fresh_id(b.graph.vertex_ids[v], vl);
    vl.insert(id);
    out.graph.vertex_ids.push_back(id);
    out.deco.vertex_labels.push_back(b.deco.vertex_labels.empty() ? std::nullopt : b.deco.vertex_labels[v]);
  }
  for (std::size_t f = 0; f < b.graph.flag_count(); ++f) {
    auto id = fresh_id(b.graph.flag_ids[f], fl);
    fl.insert(id);
    out.graph.flag_ids.push_back(id);
    out.graph.boundary.push_back(b.graph.boundary[f] + v0);
    out.graph.involution.push_back(b.graph.involution[f] + f0);
    out.deco.flag_labels.push_back(b.deco.flag_labels.empty() ? FlagLabel{} : b.deco.flag_labels[f]);
  }
  return out;
}

}  // namespace hopfflow
