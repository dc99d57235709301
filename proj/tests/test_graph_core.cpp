#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "graph_oracle.hpp"
#include "hopfflow/canonical.hpp"
#include "hopfflow/cuts.hpp"
#include "hopfflow/enumerate.hpp"
#include "hopfflow/error.hpp"
#include "hopfflow/graph_json.hpp"
#include "oracles.hpp"

using namespace hopfflow;

namespace {

DecoratedGraph loop_graph() {
  GraphBuilder b;
  int v = b.vertex("v");
  b.edge(v, v);
  return b.build();
}

DecoratedGraph single_edge() {
  GraphBuilder b;
  int u = b.vertex("u"), v = b.vertex("v");
  b.edge(u, v);
  return b.build();
}

DecoratedGraph theta() {
  GraphBuilder b;
  int u = b.vertex("u"), v = b.vertex("v");
  for (int i = 0; i < 3; ++i) b.edge(u, v);
  return b.build();
}

DecoratedGraph dumbbell() {
  GraphBuilder b;
  int u = b.vertex("u"), v = b.vertex("v");
  b.edge(u, u);
  b.edge(u, v);
  b.edge(v, v);
  return b.build();
}

DecoratedGraph corolla(int in, int out) {
  GraphBuilder b;
  int v = b.vertex("c");
  for (int i = 0; i < in; ++i) b.tail(v, Orientation::In);
  for (int i = 0; i < out; ++i) b.tail(v, Orientation::Out);
  return b.build();
}

// u -> v -> w ... oriented path on n vertices
DecoratedGraph path(int n) {
  GraphBuilder b;
  for (int i = 0; i < n; ++i) b.vertex("p" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) b.edge(i, i + 1, true);
  return b.build();
}

DecoratedGraph two_cycle() {
  GraphBuilder b;
  int u = b.vertex("u"), v = b.vertex("v");
  b.edge(u, v, true);
  b.edge(v, u, true);
  return b.build();
}

}  // namespace

TEST_CASE("validate_graph") {
  CHECK(validate_graph(DecoratedGraph{}.graph).ok());
  CHECK(validate_graph(loop_graph().graph).ok());

  DecoratedGraph bad;
  bad.graph.flag_ids = {"f1", "f2", "f3"};
  bad.graph.vertex_ids = {"v"};
  bad.graph.boundary = {0, 0, 0};
  bad.graph.involution = {1, 2, 0};
  auto r = validate_graph(bad.graph);
  REQUIRE_FALSE(r.ok());
  bool mentions = false;
  for (const auto& m : r.violations) mentions |= m.find("f1") != std::string::npos;
  CHECK(mentions);

  DecoratedGraph isolated = loop_graph();
  isolated.graph.vertex_ids.push_back("lonely");
  isolated.fit_decoration();
  CHECK_FALSE(validate_graph(isolated.graph).ok());

  DecoratedGraph badorient = path(2);
  badorient.deco.flag_labels[1].orient = Orientation::Out;
  CHECK_FALSE(validate_decorated(badorient).ok());
}

TEST_CASE("euler characteristic and classification") {
  CHECK(euler_characteristic(loop_graph().graph) == 0);
  CHECK(euler_characteristic(single_edge().graph) == 1);
  CHECK(euler_characteristic(theta().graph) == -1);

  auto c3 = classify(corolla(3, 0).graph);
  CHECK(c3.connected);
  CHECK(c3.is_tree);
  CHECK(c3.component_is_corolla == std::vector<bool>{true});

  auto cl = classify(loop_graph().graph);
  CHECK(cl.connected);
  CHECK_FALSE(cl.is_tree);

  auto two = disjoint_union(single_edge(), single_edge());
  auto ct = classify(two.graph);
  CHECK(ct.components.size() == 2);
  CHECK(ct.is_forest);
  CHECK_FALSE(ct.connected);

  auto a = theta(), b = dumbbell();
  CHECK(euler_characteristic(disjoint_union(a, b).graph) ==
        euler_characteristic(a.graph) + euler_characteristic(b.graph));
}

TEST_CASE("automorphism counts against brute force") {
  CHECK(automorphism_count(loop_graph()) == 2);
  CHECK(automorphism_count(single_edge()) == 2);
  CHECK(automorphism_count(theta()) == 12);
  CHECK(automorphism_count(dumbbell()) == 8);
  CHECK(automorphism_count(disjoint_union(loop_graph(), loop_graph())) == 8);
  CHECK(oracle::automorphisms(theta()) == 12);
  CHECK(oracle::automorphisms(dumbbell()) == 8);

  for (int e = 0; e <= 3; ++e)
    for (const auto& g : oracle::tail_free_classes(e))
      CHECK(automorphism_count(g) == oracle::automorphisms(g));
  for (int f = 0; f <= 5; ++f)
    for (const auto& g : oracle::oriented_classes(f))
      CHECK(automorphism_count(g) == oracle::automorphisms(g));
}

TEST_CASE("canonical form is a complete invariant on small graphs") {
  CHECK(canonical_form(loop_graph()) != canonical_form(single_edge()));
  CHECK(canonical_form(theta()) != canonical_form(dumbbell()));
  CHECK(oracle::isomorphisms(theta(), dumbbell()) == 0);

  std::mt19937 rng(7);
  std::vector<DecoratedGraph> all;
  for (int f = 0; f <= 4; ++f)
    for (auto& g : oracle::oriented_classes(f)) all.push_back(g);
  for (int e = 0; e <= 3; ++e)
    for (auto& g : oracle::tail_free_classes(e)) all.push_back(g);
  for (const auto& g : all)
    for (int k = 0; k < 3; ++k) CHECK(canonical_form(oracle::shuffle(g, rng)) == canonical_form(g));
  std::set<std::string> keys;
  for (const auto& g : all) keys.insert(canonical_form(g));
  // oriented and undecorated classes never coincide except for the empty graph
  CHECK(keys.size() == all.size() - 1);
}

TEST_CASE("labels participate in isomorphism") {
  auto a = path(2);
  auto b = path(2);
  b.deco.vertex_labels[0] = "x";
  CHECK(canonical_form(a) != canonical_form(b));
  auto c = path(2);
  c.deco.flag_labels[0].label = "q";
  CHECK(canonical_form(a) != canonical_form(c));
  b.deco.vertex_labels[1] = "tricky label %/|";
  auto back = graph_from_key(canonical_form(b));
  CHECK(canonical_form(back) == canonical_form(b));
  CHECK(oracle::isomorphisms(back, b) > 0);
}

TEST_CASE("keys decode to isomorphic graphs") {
  for (int f = 0; f <= 5; ++f)
    for (const auto& g : oracle::oriented_classes(f)) {
      auto back = graph_from_key(canonical_form(g));
      CHECK(oracle::isomorphisms(back, g) > 0);
    }
}

TEST_CASE("enumerate_graphs matches the brute-force class list") {
  auto e0 = enumerate_graphs(0);
  REQUIRE(e0.size() == 1);
  CHECK(e0[0].graph.graph.empty());

  auto e1 = enumerate_graphs(1);
  CHECK(e1.size() == 3);

  for (int m = 0; m <= 3; ++m) {
    std::size_t expected = 0;
    for (int e = 0; e <= m; ++e) expected += oracle::tail_free_classes(e).size();
    auto got = enumerate_graphs(m);
    CHECK(got.size() == expected);
    std::set<std::string> keys;
    for (const auto& c : got) {
      keys.insert(c.key);
      CHECK(c.graph.graph.tails().empty());
      CHECK(canonical_form(c.graph) == c.key);
    }
    CHECK(keys.size() == got.size());
  }

  auto cubic = enumerate_graphs(2, std::set<int>{3});
  REQUIRE(cubic.size() == 1);
  CHECK(cubic[0].graph.graph.empty());
  auto cubic3 = enumerate_graphs(3, std::set<int>{3});
  CHECK(cubic3.size() == 3);  // empty, theta, dumbbell

  CHECK_THROWS_AS(enumerate_graphs(4, std::nullopt, 5), Error);
}

TEST_CASE("enumerate_oriented_graphs matches the brute-force class list") {
  for (int m = 0; m <= 5; ++m) {
    std::size_t expected = 0;
    for (int f = 0; f <= m; ++f) expected += oracle::oriented_classes(f).size();
    CHECK(enumerate_oriented_graphs(m).size() == expected);
  }
}

TEST_CASE("is_directed") {
  CHECK(is_directed(path(4)).directed);
  CHECK(is_directed(corolla(2, 1)).directed);
  GraphBuilder b;
  int v = b.vertex("v");
  b.edge(v, v, true);
  CHECK_FALSE(is_directed(b.build()).directed);
  CHECK_FALSE(is_directed(two_cycle()).directed);

  auto d = is_directed(path(3));
  REQUIRE(d.directed);
  CHECK(d.height == std::vector<int>{2, 1, 0});
  CHECK_THROWS_AS(is_directed(theta()), Error);
}

TEST_CASE("enumerate_cuts") {
  auto cc = enumerate_cuts(corolla(1, 1));
  CHECK(cc.size() == 2);
  for (const auto& c : cc) CHECK_FALSE(c.proper);

  auto ch = enumerate_cuts(path(2));
  REQUIRE(ch.size() == 3);
  CHECK(ch[1].proper);
  CHECK(ch[1].upper == std::vector<int>{0});
  CHECK(ch[1].lower == std::vector<int>{1});

  CHECK(enumerate_cuts(two_cycle()).size() == 2);
  CHECK(enumerate_cuts(path(3)).size() == 4);
  CHECK(enumerate_cuts(DecoratedGraph{}).size() == 1);

  // brute-force over all bipartitions against the definition
  for (int f = 0; f <= 5; ++f)
    for (const auto& g : oracle::oriented_classes(f)) {
      const int n = static_cast<int>(g.graph.vertex_count());
      auto scc = oriented_scc(g);
      std::size_t proper = 0;
      for (unsigned mask = 1; n > 0 && mask + 1 < (1u << n); ++mask) {
        bool ok = true;
        for (auto [a, b] : g.graph.edges()) {
          int out = *g.deco.flag_labels[a].orient == Orientation::Out ? a : b;
          int in = g.graph.involution[out];
          bool up_out = mask >> g.graph.boundary[out] & 1u, up_in = mask >> g.graph.boundary[in] & 1u;
          if (!up_out && up_in) ok = false;
        }
        for (int u = 0; u < n; ++u)
          for (int v = 0; v < n; ++v)
            if (scc[u] == scc[v] && (mask >> u & 1u) != (mask >> v & 1u)) ok = false;
        if (ok) ++proper;
      }
      auto cuts = enumerate_cuts(g);
      std::size_t expected = g.graph.vertex_count() == 0 ? 1 : proper + 2;
      CHECK(cuts.size() == expected);
      if (is_directed(g).directed)
        for (const auto& c : cuts) {
          std::vector<int> side(n, 1);
          for (int v : c.upper) side[v] = 0;
          for (auto [a, b] : g.graph.edges()) {
            int out = *g.deco.flag_labels[a].orient == Orientation::Out ? a : b;
            CHECK_FALSE((side[g.graph.boundary[out]] == 1 && side[g.graph.boundary[g.graph.involution[out]]] == 0));
          }
        }
    }
}

TEST_CASE("apply_cut") {
  auto g = path(2);
  auto cuts = enumerate_cuts(g);
  auto [up0, low0] = apply_cut(g, cuts.front());
  CHECK(up0.graph.empty());
  CHECK(canonical_form(low0) == canonical_form(g));

  auto [u, l] = apply_cut(g, cuts[1]);
  CHECK(canonical_form(u) == canonical_form(corolla(0, 1)));
  CHECK(canonical_form(l) == canonical_form(corolla(1, 0)));

  auto p3 = path(3);
  Cut c{{0, 1}, {2}, true};
  auto [u3, l3] = apply_cut(p3, c);
  GraphBuilder b;
  int x = b.vertex("x"), y = b.vertex("y");
  b.edge(x, y, true);
  b.tail(y, Orientation::Out);
  CHECK(canonical_form(u3) == canonical_form(b.build()));
  CHECK(canonical_form(l3) == canonical_form(corolla(1, 0)));

  CHECK_THROWS_AS(apply_cut(p3, Cut{{2}, {0, 1}, true}), Error);

  for (int f = 0; f <= 5; ++f)
    for (const auto& h : oracle::oriented_classes(f))
      for (const auto& cut : enumerate_cuts(h)) {
        auto [a, bb] = apply_cut(h, cut);
        auto un = disjoint_union(a, bb);
        CHECK(un.graph.flag_count() == h.graph.flag_count());
        CHECK(un.graph.edge_count() == h.graph.edge_count() - crossing_edges(h, cut));
      }
}

TEST_CASE("disjoint_union") {
  auto g = theta();
  CHECK(canonical_form(disjoint_union(g, DecoratedGraph{})) == canonical_form(g));
  auto ll = disjoint_union(loop_graph(), loop_graph());
  CHECK(validate_graph(ll.graph).ok());
  CHECK(merge_keys(canonical_form(path(2)), canonical_form(corolla(1, 1))) ==
        canonical_form(disjoint_union(corolla(1, 1), path(2))));
  CHECK(classify(disjoint_union(path(2), corolla(2, 0)).graph).components.size() == 2);
}

TEST_CASE("graph JSON round trip") {
  auto g = path(3);
  g.deco.vertex_labels[1] = "mid";
  g.deco.flag_labels[0].label = "a";
  auto j = graph_to_json(g);
  auto back = graph_from_json(j);
  CHECK(graph_to_json(back) == j);
  CHECK(back.graph.flag_ids == g.graph.flag_ids);
  CHECK(canonical_form(back) == canonical_form(g));

  CHECK_THROWS_AS(parse_json_text("{\"flags\": [", "g"), Error);
  try {
    parse_json_text("{\"flags\": [1,,]}", "g");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  auto partial = graph_from_json(parse_json_text(R"({"flags":["a"],"vertices":["v"],"boundary":{},"involution":{}})"));
  CHECK_FALSE(validate_graph(partial.graph).ok());
  CHECK_THROWS_AS(graph_from_json(parse_json_text(R"({"flags":["a"],"vertices":["v"],"boundary":{"a":"w"},"involution":{}})")),
                  Error);
}
