#include "hopfflow/enumerate.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <tuple>

#include "hopfflow/canonical.hpp"
#include "hopfflow/error.hpp"

namespace hopfflow {

std::size_t default_class_cap() {
  if (const char* env = std::getenv("HOPFFLOW_MAX_CLASSES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

namespace {

enum class SlotKind { Edge, TailIn, TailOut };

struct Slot {
  SlotKind kind;
  int u, v;
  int cost;
};

using Metric = std::function<int(const DecoratedGraph&)>;

void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) fail(ErrorCode::Capacity, "graph class count exceeds cap of " + std::to_string(cap));
}

// Distributes multiplicities over the slots within the budget and keeps each
// connected labelled graph whose vertex degrees are non-increasing (every
// class has such a labelling).
void connected_from_slots(int nv, const std::vector<Slot>& slots, int budget, bool oriented,
                          const std::function<bool(const DecoratedGraph&)>& accept,
                          std::map<std::string, GraphClass>& found, std::size_t cap) {
  std::vector<int> count(slots.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == slots.size()) {
      std::vector<int> deg(nv, 0);
      bool any = false;
      for (std::size_t s = 0; s < slots.size(); ++s) {
        if (!count[s]) continue;
        any = true;
        deg[slots[s].u] += count[s];
        if (slots[s].kind == SlotKind::Edge) deg[slots[s].v] += count[s];
      }
      if (!any) return;
      int links = 0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (slots[s].kind == SlotKind::Edge && slots[s].u != slots[s].v) links += count[s];
      if (links < nv - 1) return;
      for (int v = 0; v < nv; ++v)
        if (deg[v] == 0 || (v > 0 && deg[v] > deg[v - 1])) return;
      GraphBuilder b;
      for (int v = 0; v < nv; ++v) b.vertex("v" + std::to_string(v));
      for (std::size_t s = 0; s < slots.size(); ++s)
        for (int k = 0; k < count[s]; ++k) {
          const auto& sl = slots[s];
          if (sl.kind == SlotKind::Edge)
            b.edge(sl.u, sl.v, oriented);
          else
            b.tail(sl.u, sl.kind == SlotKind::TailIn ? Orientation::In : Orientation::Out);
        }
      DecoratedGraph g = b.build();
      if (!classify(g.graph).connected || !accept(g)) return;
      auto key = canonical_form(g);
      if (!found.count(key)) {
        found.emplace(key, GraphClass{key, graph_from_key(key)});
        check_cap(found.size(), cap);
      }
      return;
    }
    for (int m = 0; m * slots[i].cost <= left; ++m) {
      count[i] = m;
      rec(i + 1, left - m * slots[i].cost);
    }
    count[i] = 0;
  };
  rec(0, budget);
}

std::vector<GraphClass> sorted_classes(std::map<std::string, GraphClass>& found, const Metric& metric) {
  std::vector<GraphClass> out;
  out.reserve(found.size());
  for (auto& [k, c] : found) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [&](const GraphClass& a, const GraphClass& b) {
    return std::make_tuple(metric(a.graph), a.graph.graph.vertex_count(), a.key) <
           std::make_tuple(metric(b.graph), b.graph.graph.vertex_count(), b.key);
  });
  return out;
}

// All multisets of connected classes with total metric <= bound, plus the empty graph.
std::vector<GraphClass> all_unions(const std::vector<GraphClass>& connected, const Metric& metric, int bound,
                                   std::size_t cap) {
  std::map<std::string, GraphClass> found;
  found.emplace("", GraphClass{"", DecoratedGraph{}});
  std::vector<int> size;
  for (const auto& c : connected) size.push_back(metric(c.graph));
  std::vector<std::string> current;
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int left) {
    for (std::size_t i = start; i < connected.size(); ++i) {
      if (size[i] > left) continue;
      current.push_back(connected[i].key);
      auto key = join_keys(current);
      found.emplace(key, GraphClass{key, graph_from_key(key)});
      check_cap(found.size(), cap);
      rec(i, left - size[i]);
      current.pop_back();
    }
  };
  rec(0, bound);
  return sorted_classes(found, metric);
}

int edge_metric(const DecoratedGraph& g) { return static_cast<int>(g.graph.edge_count()); }
int flag_metric(const DecoratedGraph& g) { return static_cast<int>(g.graph.flag_count()); }

}  // namespace

std::vector<GraphClass> enumerate_connected_graphs(int max_edges, const std::optional<std::set<int>>& valences,
                                                   std::size_t cap) {
  if (max_edges < 0) fail(ErrorCode::Argument, "max_edges must be non-negative");
  std::map<std::string, GraphClass> found;
  auto accept = [&](const DecoratedGraph& g) {
    if (!valences) return true;
    for (const auto& fl : g.graph.flags_by_vertex())
      if (!valences->count(static_cast<int>(fl.size()))) return false;
    return true;
  };
  for (int nv = 1; nv <= max_edges + 1; ++nv) {
    std::vector<Slot> slots;
    for (int u = 0; u < nv; ++u)
      for (int v = u; v < nv; ++v) slots.push_back({SlotKind::Edge, u, v, 1});
    connected_from_slots(nv, slots, max_edges, false, accept, found, cap);
  }
  return sorted_classes(found, edge_metric);
}

std::vector<GraphClass> enumerate_graphs(int max_edges, const std::optional<std::set<int>>& valences,
                                         std::size_t cap) {
  auto connected = enumerate_connected_graphs(max_edges, valences, cap);
  return all_unions(connected, edge_metric, max_edges, cap);
}

std::vector<GraphClass> enumerate_connected_oriented_graphs(int max_flags, std::size_t cap) {
  if (max_flags < 0) fail(ErrorCode::Argument, "max_flags must be non-negative");
  std::map<std::string, GraphClass> found;
  auto accept = [](const DecoratedGraph&) { return true; };
  // a connected graph with F flags has at most F/2 + 1 vertices when F >= 2
  for (int nv = 1; nv <= std::max(1, max_flags / 2 + 1); ++nv) {
    std::vector<Slot> slots;
    // u == v is an oriented loop; ordered pairs u != v carry the direction
    for (int u = 0; u < nv; ++u)
      for (int v = 0; v < nv; ++v) slots.push_back({SlotKind::Edge, u, v, 2});
    for (int u = 0; u < nv; ++u) {
      slots.push_back({SlotKind::TailIn, u, u, 1});
      slots.push_back({SlotKind::TailOut, u, u, 1});
    }
    connected_from_slots(nv, slots, max_flags, true, accept, found, cap);
  }
  return sorted_classes(found, flag_metric);
}

std::vector<GraphClass> enumerate_oriented_graphs(int max_flags, std::size_t cap) {
  auto connected = enumerate_connected_oriented_graphs(max_flags, cap);
  return all_unions(connected, flag_metric, max_flags, cap);
}

}  // namespace hopfflow
