#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfflow/canonical.hpp"
#include "hopfflow/enumerate.hpp"
#include "hopfflow/error.hpp"
#include "hopfflow/graph_json.hpp"
#include "hopfflow/hopf.hpp"

using namespace hopfflow;

namespace {

DecoratedGraph corolla(int in, int out) {
  GraphBuilder b;
  int v = b.vertex("v");
  for (int i = 0; i < in; ++i) b.tail(v, Orientation::In);
  for (int i = 0; i < out; ++i) b.tail(v, Orientation::Out);
  return b.build();
}

// in-tail -> u -> v -> out-tail
DecoratedGraph chain() {
  GraphBuilder b;
  int u = b.vertex("u"), v = b.vertex("v");
  b.tail(u, Orientation::In);
  b.edge(u, v, true);
  b.tail(v, Orientation::Out);
  return b.build();
}

DecoratedGraph two_cycle() {
  GraphBuilder b;
  int u = b.vertex("u"), v = b.vertex("v");
  b.edge(u, v, true);
  b.edge(v, u, true);
  return b.build();
}

// a -> b <- c
DecoratedGraph vee() {
  GraphBuilder b;
  int a = b.vertex("a"), m = b.vertex("b"), c = b.vertex("c");
  b.edge(a, m, true);
  b.edge(c, m, true);
  return b.build();
}

DecoratedGraph oriented_loop() {
  GraphBuilder b;
  int v = b.vertex("v");
  b.edge(v, v, true);
  return b.build();
}

std::string key(const DecoratedGraph& g) { return canonical_form(g); }

// Coproduct straight from the definition: every vertex subset whose crossing
// edges all run from it to its complement, parts as induced subgraphs.
TensorElement oracle_coproduct(const DecoratedGraph& g) {
  TensorElement t;
  const auto& c = g.graph;
  const int n = static_cast<int>(c.vertex_count());
  if (n == 0) return tensor_basis({"", ""});
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    auto up = [&](int v) { return (mask >> v) & 1u; };
    bool ok = true;
    for (std::size_t f = 0; f < c.flag_count(); ++f) {
      int q = c.involution[f];
      if (q == static_cast<int>(f)) continue;
      if (up(c.boundary[f]) && !up(c.boundary[q]) && g.deco.flag_labels[f].orient != Orientation::Out) ok = false;
    }
    if (!ok) continue;
    std::vector<int> u, l;
    for (int v = 0; v < n; ++v) (up(v) ? u : l).push_back(v);
    t.add({key(induced_subgraph(g, u)), key(induced_subgraph(g, l))}, 1);
  }
  return t;
}

const std::vector<GraphClass>& oriented(int flags) {
  static std::map<int, std::vector<GraphClass>> cache;
  auto it = cache.find(flags);
  if (it == cache.end()) it = cache.emplace(flags, enumerate_oriented_graphs(flags)).first;
  return it->second;
}

}  // namespace

TEST_CASE("product") {
  GraphHopf h;
  auto loop = basis_element(oriented_loop());
  auto unit = hopf_unit();
  CHECK(unit * loop == loop);
  auto sq = h.product(loop, loop);
  CHECK(sq.terms.size() == 1);
  CHECK(sq.terms.begin()->first == key(disjoint_union(oriented_loop(), oriented_loop())));
  CHECK(sq.terms.begin()->second == 1);

  std::mt19937 rng(7);
  const auto& all = oriented(4);
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (int i = 0; i < 30; ++i) {
    auto x = basis_key(all[pick(rng)].key) * Rational(2) + basis_key(all[pick(rng)].key);
    auto y = basis_key(all[pick(rng)].key) - basis_key(all[pick(rng)].key) * Rational(1, 3);
    CHECK(x * y == y * x);
  }
  CHECK_THROWS_AS(loop * basis_key("", "other"), Error);
}

TEST_CASE("coproduct examples") {
  GraphHopf h;
  auto c = key(corolla(1, 2));
  CHECK(h.coproduct_of(c) == tensor_basis({"", c}) + tensor_basis({c, ""}));

  auto ch = key(chain());
  auto upper = key(corolla(1, 1)), lower = upper;
  auto d = h.coproduct_of(ch);
  CHECK(d == tensor_basis({"", ch}) + tensor_basis({ch, ""}) + tensor_basis({upper, lower}));
  for (const auto& [k, coeff] : d.terms) CHECK(h.degree(k[0]) + h.degree(k[1]) == 4);

  auto cyc = key(two_cycle());
  CHECK(h.coproduct_of(cyc).terms.size() == 2);

  auto v = key(vee());
  auto red = h.reduced_coproduct(basis_key(v));
  // {a} and {c} give isomorphic cut parts, so three cuts collect into two classes
  CHECK(red.terms.size() == 2);
  Rational cuts = 0;
  for (const auto& [k, coeff] : red.terms) cuts += coeff;
  CHECK(cuts == 3);
  CHECK(h.reduced_coproduct(basis_key(c)).is_zero());
  CHECK(h.reduced_coproduct(basis_key(ch)) == tensor_basis({upper, lower}));
  CHECK_THROWS_AS(h.reduced_coproduct(hopf_unit()), Error);

  CHECK(h.coproduct_of("") == tensor_basis({"", ""}));
}

TEST_CASE("coproduct agrees with the definition") {
  GraphHopf h;
  for (const auto& g : oriented(6)) {
    CAPTURE(g.key);
    CHECK(h.coproduct_of(g.key) == oracle_coproduct(g.graph));
  }
  GraphBuilder b;
  int v = b.vertex("v");
  b.tail(v);
  CHECK_THROWS_AS(h.coproduct(basis_element(b.build())), Error);
}

TEST_CASE("counit and gradings") {
  GraphHopf h;
  CHECK(h.counit(hopf_unit()) == 1);
  CHECK(h.counit(basis_element(oriented_loop())) == 0);
  CHECK(h.degree("") == 0);
  CHECK(h.degree(key(oriented_loop())) == 2);
  for (const auto& g : oriented(6)) {
    auto d = h.coproduct_of(g.key);
    CHECK(h.counit_side(d, true) == basis_key(g.key));
    CHECK(h.counit_side(d, false) == basis_key(g.key));
    for (const auto& [k, c] : d.terms) CHECK(h.degree(k[0]) + h.degree(k[1]) == h.degree(g.key));
    CHECK((h.degree(g.key) == 0) == g.key.empty());
  }
  const auto& all = oriented(4);
  for (const auto& a : all)
    for (const auto& b : all) CHECK(h.degree(merge_keys(a.key, b.key)) == h.degree(a.key) + h.degree(b.key));

  Grading w;
  w.mode = Grading::Mode::Weighted;
  w.label_weights = {{"x", 2}, {"V", 3}};
  GraphBuilder gb;
  int v = gb.vertex("v", "V");
  gb.tail(v, Orientation::In, "x");
  gb.tail(v, Orientation::Out);
  CHECK(w.degree(gb.build()) == (2 + 1) + (0 + 1) + 3);
  GraphHopf hw({}, w);
  auto d = hw.coproduct_of(key(gb.build()));
  for (const auto& [k, c] : d.terms) CHECK(hw.degree(k[0]) + hw.degree(k[1]) == 7);
  GraphBuilder bad;
  bad.tail(bad.vertex("v", "unknown"), Orientation::In);
  CHECK_THROWS_AS(w.degree(bad.build()), Error);
}

TEST_CASE("coassociativity and compatibility") {
  GraphHopf h;
  for (const auto& g : oriented(6)) {
    CAPTURE(g.key);
    auto d = tensor_basis({g.key});
    auto dd = h.coproduct_at(d, 0);
    CHECK(h.coproduct_at(dd, 0) == h.coproduct_at(dd, 1));
  }
  const auto& small = oriented(3);
  for (const auto& a : small)
    for (const auto& b : small) {
      auto xy = basis_key(a.key) * basis_key(b.key);
      CHECK(h.coproduct(xy) == h.coproduct_of(a.key) * h.coproduct_of(b.key));
    }
}

TEST_CASE("antipode") {
  GraphHopf h;
  CHECK(h.antipode(hopf_unit(), 0) == hopf_unit());
  auto c = basis_element(corolla(2, 1));
  CHECK(h.antipode(c, 8) == c * Rational(-1));
  auto ch = basis_element(chain());
  auto up = basis_element(corolla(1, 1));
  CHECK(h.antipode(ch, 8) == ch * Rational(-1) + up * up);
  CHECK_THROWS_AS(h.antipode(ch, 3), Error);

  for (const auto& g : oriented(6)) {
    CAPTURE(g.key);
    auto d = h.coproduct_of(g.key);
    auto eps = g.key.empty() ? hopf_unit() : HopfElement{};
    CHECK(h.antipode_side(d, true, 6) == eps);
    CHECK(h.antipode_side(d, false, 6) == eps);
  }
  // antipode is multiplicative on a commutative algebra
  auto x = basis_element(vee()), y = basis_element(chain());
  CHECK(h.antipode(x * y, 8) == h.antipode(x, 8) * h.antipode(y, 8));
}

TEST_CASE("family restrictions") {
  GraphFamily f;
  f.tag = "labelled";
  f.alphabet = {"a"};
  GraphHopf h(f);
  GraphBuilder b;
  int v = b.vertex("v", "a");
  b.tail(v, Orientation::In, "a");
  CHECK(h.coproduct(basis_element(b.build(), "labelled")).terms.size() == 2);
  GraphBuilder b2;
  b2.tail(b2.vertex("v", "z"), Orientation::In);
  CHECK_THROWS_AS(h.coproduct(basis_element(b2.build(), "labelled")), Error);
  CHECK_THROWS_AS(h.coproduct(basis_element(b.build())), Error);

  // a family that is not closed under cuts is caught on the cut parts
  GraphFamily connected;
  connected.tag = "two-vertex";
  connected.member = [](const DecoratedGraph& g) { return g.graph.vertex_count() != 1; };
  GraphHopf hc(connected);
  CHECK_THROWS_AS(hc.coproduct(basis_element(chain(), "two-vertex")), Error);
}

TEST_CASE("finite categories") {
  auto cat = [](std::vector<std::string> k) { return tensor_basis(std::move(k), 1, "category"); };
  auto one = make_category({"X"}, {}, {});
  CHECK(category_coproduct(one, 0) == cat({"id_X", "id_X"}));

  auto p = poset_category(3, {{0, 1}, {1, 2}});
  CHECK(p.morphisms.size() == 6);
  auto f = p.find("0->2");
  CHECK(category_coproduct(p, f) == cat({"id_0", "0->2"}) + cat({"0->2", "id_2"}) + cat({"0->1", "1->2"}));

  // X with an idempotent e and m: X -> Y absorbing it
  auto c = make_category({"X", "Y"}, {{"e", 0, 0}, {"m", 0, 1}}, {{{"e", "e"}, "e"}, {{"m", "e"}, "m"}});
  CHECK(category_coproduct(c, c.find("m")) == cat({"id_X", "m"}) + cat({"e", "m"}) + cat({"m", "id_Y"}));
  CHECK(category_coproduct(c, c.find("e")) == cat({"id_X", "e"}) + cat({"e", "id_X"}) + cat({"e", "e"}));

  for (const auto* k : {&p, &c})
    for (std::size_t m = 0; m < k->morphisms.size(); ++m) {
      auto d = category_coproduct(*k, static_cast<int>(m));
      CHECK(category_coproduct_at(*k, d, 0) == category_coproduct_at(*k, d, 1));
    }

  CHECK_THROWS_AS(make_category({"X"}, {{"e", 0, 0}}, {}), Error);  // e o e missing
  CHECK_THROWS_AS(make_category({"X"}, {{"e", 0, 0}, {"f", 0, 0}},
                                {{{"e", "e"}, "f"}, {{"e", "f"}, "e"}, {{"f", "e"}, "e"}, {{"f", "f"}, "e"}}),
                  Error);  // (e e) f = f f = e but e (e f) = e e = f
  CHECK_THROWS_AS(poset_category(2, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("element json") {
  auto x = basis_element(chain()) * Rational(-2, 3) + basis_element(vee()) * basis_element(oriented_loop()) +
           hopf_unit();
  auto j = hopf_to_json(x);
  CHECK(hopf_from_json(j) == x);
  CHECK(hopf_from_json(nlohmann::json::parse(j.dump())) == x);
  CHECK_THROWS_AS(hopf_from_json(nlohmann::json::object()), Error);
  GraphHopf h;
  auto t = tensor_to_json(h.coproduct_of(key(chain())));
  CHECK(t.size() == 3);
}
