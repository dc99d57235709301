#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hopfflow/error.hpp"
#include "hopfflow/feynman.hpp"

using namespace hopfflow;

namespace {

ModelData one_color(const Rational& g, std::map<Coupling, Rational> c) { return make_model({"1"}, {{g}}, std::move(c)); }

SeriesTerm term(CouplingMonomial c, int lambda) {
  std::sort(c.begin(), c.end());
  return SeriesTerm{c, lambda};
}

long double_factorial(long n) { return n <= 1 ? 1 : n * double_factorial(n - 2); }

}  // namespace

TEST_CASE("wick moments") {
  auto two = wick_moment({0, 1});
  CHECK(two.lambda_power == 1);
  CHECK(two.monomials.size() == 1);
  CHECK(two.monomials.begin()->first == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(wick_moment({0, 1, 1}).vanishes());
  CHECK(wick_moment({0}).vanishes());

  auto four = wick_moment({0, 1, 2, 3});
  CHECK(four.lambda_power == 2);
  CHECK(four.monomials.size() == 3);
  CHECK(four.monomials.count({{0, 1}, {2, 3}}));
  CHECK(four.monomials.count({{0, 2}, {1, 3}}));
  CHECK(four.monomials.count({{0, 3}, {1, 2}}));

  for (long m = 1; m <= 5; ++m) CHECK(wick_moment(std::vector<int>(2 * m, 0)).pairings == double_factorial(2 * m - 1));

  auto a = wick_moment({0, 1, 1, 0, 1, 0});
  auto b = wick_moment({1, 1, 1, 0, 0, 0});
  CHECK(a.monomials == b.monomials);
}

TEST_CASE("numeric gaussian check") {
  auto m2 = one_color(2, {});
  auto r = numeric_gaussian_check({0, 0}, m2);
  CHECK(r.numeric == doctest::Approx(0.5).epsilon(1e-10));
  auto r4 = numeric_gaussian_check({0, 0, 0, 0}, one_color(1, {}));
  CHECK(r4.numeric == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(numeric_gaussian_check({0}, m2).numeric) < 1e-12);
  CHECK_THROWS_AS(numeric_gaussian_check({0, 0}, one_color(-1, {})), Error);

  auto mm = make_model({"x", "y"}, {{2, Rational(1, 2)}, {Rational(1, 2), 1}}, {});
  for (auto idx : std::vector<std::vector<int>>{{0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}, {0, 0, 0, 1, 1, 1}}) {
    auto c = numeric_gaussian_check(idx, mm);
    CHECK(c.rel_error < 1e-9);
  }
}

TEST_CASE("graph weights") {
  auto m = make_model({"x", "y"}, {{2, 1}, {1, 3}}, {{{0}, 1}, {{1}, 1}, {{0, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 1}});
  GraphBuilder loop;
  int v = loop.vertex("v");
  loop.edge(v, v);
  auto wl = graph_weight(loop.build(), m);
  // sum_{a,b} g^{ab} C_{ab}
  CHECK(wl.coefficient(term({{0, 0}}, 0)) == m.ginv[0][0]);
  CHECK(wl.coefficient(term({{0, 1}}, 0)) == 2 * m.ginv[0][1]);
  CHECK(wl.coefficient(term({{1, 1}}, 0)) == m.ginv[1][1]);

  GraphBuilder e;
  int a = e.vertex("a"), b = e.vertex("b");
  e.edge(a, b);
  auto we = graph_weight(e.build(), m);
  CHECK(we.coefficient(term({{0}, {0}}, 0)) == m.ginv[0][0]);
  CHECK(we.coefficient(term({{0}, {1}}, 0)) == 2 * m.ginv[0][1]);

  // banana: two vertices joined by two edges = sum g^{ab} g^{cd} C_{ac} C_{bd}
  GraphBuilder ban;
  a = ban.vertex("a");
  b = ban.vertex("b");
  ban.edge(a, b);
  ban.edge(a, b);
  auto wb = graph_weight(ban.build(), m);
  FormalSeries expect;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int z = 0; z < 2; ++z)
        for (int w = 0; w < 2; ++w) {
          Coupling c1{x, z}, c2{y, w};
          std::sort(c1.begin(), c1.end());
          std::sort(c2.begin(), c2.end());
          expect.add_term(term({c1, c2}, 0), m.ginv[x][y] * m.ginv[z][w]);
        }
  CHECK(wb == expect);

  GraphBuilder cubic;
  v = cubic.vertex("v");
  cubic.edge(v, v);
  cubic.tail(v);
  CHECK_THROWS_AS(graph_weight(cubic.build(), m), Error);
}

TEST_CASE("partition series") {
  auto c3 = one_color(1, {{{0, 0, 0}, 1}});
  CHECK(partition_series_graphs(c3, 0) == FormalSeries::constant(1, 0));
  CHECK(partition_series_wick(c3, 0) == FormalSeries::constant(1, 0));
  auto z = partition_series_graphs(c3, 6);
  CHECK(z.coefficient(term({{0, 0, 0}, {0, 0, 0}}, 1)) == Rational(5, 24));
  CHECK(partition_series_wick(c3, 6).coefficient(term({{0, 0, 0}, {0, 0, 0}}, 1)) == Rational(5, 24));
  CHECK(series_diff(z, partition_series_wick(c3, 6)).empty());

  auto c1 = one_color(3, {{{0}, 1}});
  auto z1 = partition_series_graphs(c1, 2);
  CHECK(z1.coefficient(term({{0}, {0}}, -1)) == Rational(1, 6));  // g^{11} / 2
  CHECK(series_diff(z1, partition_series_wick(c1, 2)).empty());

  auto mix = make_model({"x", "y"}, {{2, Rational(1, 3)}, {Rational(1, 3), Rational(5, 7)}},
                        {{{0}, 1}, {{1}, 1}, {{0, 1}, 1}, {{1, 1}, 1}, {{0, 0}, 1}});
  CHECK(series_diff(partition_series_graphs(mix, 4), partition_series_wick(mix, 4)).empty());

  auto q4 = one_color(Rational(3, 2), {{{0, 0, 0, 0}, 1}, {{0, 0}, 1}});
  CHECK(series_diff(partition_series_graphs(q4, 6), partition_series_wick(q4, 6)).empty());
}

TEST_CASE("connected series") {
  auto c3 = one_color(1, {{{0, 0, 0}, 1}});
  CHECK(connected_series(c3, 0).is_zero());
  CHECK(series_exp(connected_series(c3, 6)) == partition_series_graphs(c3, 6));
  CHECK(series_log(partition_series_graphs(c3, 6)) == connected_series(c3, 6));

  auto c1 = one_color(1, {{{0}, 1}});
  CHECK(connected_series(c1, 2).coefficient(term({{0}, {0}}, -1)) ==
        partition_series_graphs(c1, 2).coefficient(term({{0}, {0}}, -1)));
}

TEST_CASE("stationary point and trees") {
  auto zero = one_color(1, {});
  auto sp0 = stationary_point(zero, 4);
  for (const auto& p : sp0.phi) CHECK(p.is_zero());
  CHECK(tree_series(zero, 4).is_zero());

  auto c1 = make_model({"x", "y"}, {{2, 1}, {1, 1}}, {{{0}, 1}, {{1}, 1}});
  auto sp = stationary_point(c1, 5);
  for (int a = 0; a < 2; ++a) {
    FormalSeries ca;
    for (int b = 0; b < 2; ++b) ca.add_term(term({{b}}, 0), c1.ginv[a][b]);
    CHECK(sp.phi[a] == ca.truncated(5));
  }
  auto z = tree_series(c1, 2);
  CHECK(z.coefficient(term({{0}, {0}}, -1)) == c1.ginv[0][0] / 2);
  CHECK(z.coefficient(term({{0}, {1}}, -1)) == c1.ginv[0][1]);

  auto c13 = one_color(2, {{{0}, 1}, {{0, 0, 0}, 1}});
  auto sp3 = stationary_point(c13, 5);
  // C^1 + (1/2) g^{11} C_111 (C^1)^2 + ...
  CHECK(sp3.phi[0].coefficient(term({{0}}, 0)) == Rational(1, 2));
  CHECK(sp3.phi[0].coefficient(term({{0}, {0}, {0, 0, 0}}, 0)) == Rational(1, 16));
  for (const auto& r : action_gradient(c13, sp3.phi)) CHECK(r.is_zero());

  for (auto conv : {LambdaConvention::AtOne, LambdaConvention::Scaled}) {
    auto t = check_tree_identities(c13, 5, conv);
    CHECK(t.residual_vanishes);
    CHECK(t.gradient_matches);
    CHECK(t.critical_value_matches);
    CHECK(t.tree_lambda_powers == std::vector<int>{-1});
  }
}

TEST_CASE("series arithmetic and serialization") {
  auto m = make_model({"x", "y"}, {{1, 0}, {0, 1}}, {{{0}, 1}, {{0, 1}, 1}});
  auto s = FormalSeries::monomial(term({{0}}, -1), Rational(2, 3), 4) + FormalSeries::constant(1, 4);
  CHECK(series_log(series_exp(s - FormalSeries::constant(1, 4))) == s - FormalSeries::constant(1, 4));
  auto back = series_from_json(series_to_json(s, &m), &m);
  CHECK(back == s);
  CHECK(back.truncation() == 4);
  CHECK(s.derivative({0}).coefficient(term({}, -1)) == Rational(2, 3));

  auto j = model_to_json(m);
  auto m2 = model_from_json(j);
  CHECK(m2.couplings == m.couplings);
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"colors":["a"],"g":[["0"]]})")), Error);
  CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"colors":["a","b"],"g":[["1","2"],["3","1"]]})")), Error);
  CHECK_THROWS_AS(
      model_from_json(nlohmann::json::parse(R"({"colors":["a","b"],"g":[["1","0"],["0","1"]],"C":{"a,b":"1","b,a":"2"}})")),
      Error);
}
