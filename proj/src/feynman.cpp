#include "hopfflow/feynman.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <set>

#include "hopfflow/canonical.hpp"
#include "hopfflow/enumerate.hpp"
#include "hopfflow/error.hpp"

namespace hopfflow {

Rational WickMoment::evaluate(const ModelData& m) const {
  Rational total = 0;
  for (const auto& [mono, count] : monomials) {
    Rational v = count;
    for (auto [a, b] : mono) v *= m.ginv[a][b];
    total += v;
  }
  return total;
}

WickMoment wick_moment(const std::vector<int>& indices) {
  WickMoment w;
  if (indices.size() % 2) return w;
  w.lambda_power = static_cast<int>(indices.size() / 2);
  std::vector<bool> used(indices.size(), false);
  std::vector<std::pair<int, int>> current;
  std::function<void()> rec = [&]() {
    std::size_t i = 0;
    while (i < indices.size() && used[i]) ++i;
    if (i == indices.size()) {
      auto mono = current;
      std::sort(mono.begin(), mono.end());
      ++w.monomials[mono];
      ++w.pairings;
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.emplace_back(std::min(indices[i], indices[j]), std::max(indices[i], indices[j]));
      rec();
      current.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec();
  return w;
}

GaussianCheck numeric_gaussian_check(const std::vector<int>& indices, const ModelData& m) {
  using boost::math::quadrature::gauss_kronrod;
  const std::size_t n = m.size();
  if (n == 0 || n > 2) fail(ErrorCode::Argument, "numeric Gaussian check supports one or two colors");
  for (int a : indices)
    if (a < 0 || static_cast<std::size_t>(a) >= n) fail(ErrorCode::Argument, "moment index out of range");
  // Sylvester's criterion
  if (sgn(m.g[0][0]) <= 0 || (n == 2 && sgn(m.g[0][0] * m.g[1][1] - m.g[0][1] * m.g[1][0]) <= 0))
    fail(ErrorCode::Argument, "metric is not positive definite");

  std::vector<int> power(2, 0);
  for (int a : indices) ++power[a];
  GaussianCheck r;
  r.exact = wick_moment(indices).evaluate(m).get_d();
  const double tol = 1e-13;
  const unsigned depth = 20;
  if (n == 1) {
    double g = m.g[0][0].get_d();
    double L = 14.0 / std::sqrt(g);
    auto num = [&](double x) { return std::pow(x, power[0]) * std::exp(-0.5 * g * x * x); };
    auto den = [&](double x) { return std::exp(-0.5 * g * x * x); };
    r.numeric = gauss_kronrod<double, 61>::integrate(num, -L, L, depth, tol) /
                gauss_kronrod<double, 61>::integrate(den, -L, L, depth, tol);
  } else {
    double a = m.g[0][0].get_d(), b = m.g[0][1].get_d(), c = m.g[1][1].get_d();
    double lmin = 0.5 * (a + c - std::sqrt((a - c) * (a - c) + 4 * b * b));
    double L = 14.0 / std::sqrt(lmin);
    auto integral = [&](int px, int py) {
      auto outer = [&](double x) {
        auto inner = [&](double y) {
          return std::pow(x, px) * std::pow(y, py) * std::exp(-0.5 * (a * x * x + 2 * b * x * y + c * y * y));
        };
        return gauss_kronrod<double, 61>::integrate(inner, -L, L, depth, tol);
      };
      return gauss_kronrod<double, 61>::integrate(outer, -L, L, depth, tol);
    };
    r.numeric = integral(power[0], power[1]) / integral(0, 0);
  }
  r.abs_error = std::abs(r.numeric - r.exact);
  r.rel_error = r.exact != 0 ? r.abs_error / std::abs(r.exact) : r.abs_error;
  return r;
}

FormalSeries graph_weight(const DecoratedGraph& g, const ModelData& m, int truncation) {
  const auto& cg = g.graph;
  auto by_vertex = cg.flags_by_vertex();
  for (const auto& fl : by_vertex)
    if (!m.has_rank(static_cast<int>(fl.size())))
      fail(ErrorCode::Argument, "no coupling of rank " + std::to_string(fl.size()) + " in the model");
  FormalSeries out(truncation);
  const int nf = static_cast<int>(cg.flag_count());
  const int nc = static_cast<int>(m.size());
  std::vector<int> color(nf, 0);
  auto edges = cg.edges();
  std::function<void(int)> rec = [&](int f) {
    if (f == nf) {
      Rational coeff = 1;
      for (auto [a, b] : edges) {
        coeff *= m.ginv[color[a]][color[b]];
        if (is_zero(coeff)) return;
      }
      SeriesTerm t;
      for (const auto& fl : by_vertex) {
        Coupling c;
        for (int x : fl) c.push_back(color[x]);
        std::sort(c.begin(), c.end());
        if (!m.active(c)) return;
        t.couplings.push_back(std::move(c));
      }
      std::sort(t.couplings.begin(), t.couplings.end());
      out.add_term(t, coeff);
      return;
    }
    for (int a = 0; a < nc; ++a) {
      color[f] = a;
      rec(f + 1);
    }
  };
  rec(0);
  return out;
}

namespace {

std::set<int> active_ranks(const ModelData& m) {
  std::set<int> out;
  for (const auto& [c, v] : m.couplings) out.insert(static_cast<int>(c.size()));
  return out;
}

FormalSeries sum_over(const std::vector<GraphClass>& classes, const ModelData& m, int max_weight) {
  FormalSeries total(max_weight);
  for (const auto& c : classes) {
    auto w = graph_weight(c.graph, m, max_weight);
    if (w.is_zero()) continue;
    Rational coeff(1);
    coeff /= Rational(automorphism_count(c.graph));
    long chi = euler_characteristic(c.graph.graph);
    total += w.shift_lambda(static_cast<int>(-chi)) * coeff;
  }
  return total;
}

void require_weight(int max_weight) {
  if (max_weight < 0) fail(ErrorCode::Argument, "coupling weight bound must be non-negative");
}

FormalSeries coupling_symbol(const Coupling& c, int truncation) {
  SeriesTerm t;
  t.couplings.push_back(c);
  return FormalSeries::monomial(t, 1, truncation);
}

// Calls emit for every ordered tuple of `k` colors.
void tuples(int k, int colors, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> t(k, 0);
  while (true) {
    emit(t);
    int i = k - 1;
    while (i >= 0 && ++t[i] == colors) t[i--] = 0;
    if (i < 0) return;
  }
}

}  // namespace

FormalSeries partition_series_graphs(const ModelData& m, int max_weight) {
  require_weight(max_weight);
  auto ranks = active_ranks(m);
  if (ranks.empty()) return FormalSeries::constant(1, max_weight);
  return sum_over(enumerate_graphs(max_weight / 2, ranks), m, max_weight);
}

FormalSeries connected_series(const ModelData& m, int max_weight) {
  require_weight(max_weight);
  auto ranks = active_ranks(m);
  if (ranks.empty()) return FormalSeries(max_weight);
  return sum_over(enumerate_connected_graphs(max_weight / 2, ranks), m, max_weight);
}

FormalSeries tree_series(const ModelData& m, int max_weight) {
  require_weight(max_weight);
  auto ranks = active_ranks(m);
  if (ranks.empty()) return FormalSeries(max_weight);
  std::vector<GraphClass> trees;
  for (auto& c : enumerate_connected_graphs(max_weight / 2, ranks))
    if (c.graph.graph.edge_count() >= 1 && classify(c.graph.graph).is_tree) trees.push_back(std::move(c));
  return sum_over(trees, m, max_weight);
}

FieldPolynomial FieldPolynomial::operator*(const FieldPolynomial& o) const {
  FieldPolynomial out;
  out.truncation = std::min(truncation, o.truncation);
  for (const auto& [ea, ca] : terms)
    for (const auto& [eb, cb] : o.terms) {
      auto prod = (ca * cb).truncated(out.truncation);
      if (prod.is_zero()) continue;
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = out.terms.emplace(e, prod);
      if (!inserted) {
        it->second += prod;
        if (it->second.is_zero()) out.terms.erase(it);
      }
    }
  return out;
}

FieldPolynomial& FieldPolynomial::operator+=(const FieldPolynomial& o) {
  truncation = std::min(truncation, o.truncation);
  for (const auto& [e, c] : o.terms) {
    auto [it, inserted] = terms.emplace(e, c.truncated(truncation));
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  return *this;
}

FieldPolynomial interaction_polynomial(const ModelData& m, int max_weight) {
  FieldPolynomial p;
  p.truncation = max_weight;
  const int nc = static_cast<int>(m.size());
  for (int k = 1; k <= std::min(m.max_rank(), max_weight); ++k) {
    Rational inv_fact = 1 / factorial(k);
    tuples(k, nc, [&](const std::vector<int>& t) {
      Coupling c = t;
      std::sort(c.begin(), c.end());
      if (!m.active(c)) return;
      std::vector<int> e(nc, 0);
      for (int a : t) ++e[a];
      FieldPolynomial term;
      term.truncation = max_weight;
      term.terms.emplace(e, coupling_symbol(c, max_weight) * inv_fact);
      p += term;
    });
  }
  return p;
}

FormalSeries partition_series_wick(const ModelData& m, int max_weight) {
  require_weight(max_weight);
  FieldPolynomial s1 = interaction_polynomial(m, max_weight);
  FormalSeries total = FormalSeries::constant(1, max_weight);
  std::map<std::vector<int>, std::pair<int, Rational>> moments;
  auto moment = [&](const std::vector<int>& e) -> const std::pair<int, Rational>& {
    auto it = moments.find(e);
    if (it != moments.end()) return it->second;
    std::vector<int> idx;
    for (std::size_t a = 0; a < e.size(); ++a) idx.insert(idx.end(), e[a], static_cast<int>(a));
    auto w = wick_moment(idx);
    return moments.emplace(e, std::make_pair(w.lambda_power, w.evaluate(m))).first->second;
  };
  FieldPolynomial power;
  power.truncation = max_weight;
  power.terms.emplace(std::vector<int>(m.size(), 0), FormalSeries::constant(1, max_weight));
  // every S1 term has weight >= 1, so N <= max_weight
  for (int n = 1; n <= max_weight && !s1.terms.empty(); ++n) {
    power = power * s1;
    if (power.terms.empty()) break;
    Rational inv_fact = 1 / factorial(n);
    for (const auto& [e, coeff] : power.terms) {
      const auto& [lp, value] = moment(e);
      if (is_zero(value)) continue;
      total += (coeff * (value * inv_fact)).shift_lambda(lp - n);
    }
  }
  return total;
}

namespace {

// prod_i phi^{t_i}
FormalSeries field_product(const std::vector<FormalSeries>& phi, const std::vector<int>& t, int truncation) {
  FormalSeries r = FormalSeries::constant(1, truncation);
  for (int a : t) {
    r = r * phi[a];
    if (r.is_zero()) break;
  }
  return r;
}

int series_truncation(const std::vector<FormalSeries>& phi) {
  int t = FormalSeries::kExact;
  for (const auto& p : phi) t = std::min(t, p.truncation());
  return t;
}

// dS1/dphi^b
FormalSeries interaction_gradient(const ModelData& m, const std::vector<FormalSeries>& phi, int b) {
  const int tr = series_truncation(phi);
  const int nc = static_cast<int>(m.size());
  FormalSeries out(tr);
  for (int k = 1; k <= m.max_rank(); ++k) {
    if (k > tr) break;
    Rational inv_fact = 1 / factorial(k - 1);
    tuples(k - 1, nc, [&](const std::vector<int>& t) {
      Coupling c = t;
      c.push_back(b);
      std::sort(c.begin(), c.end());
      if (!m.active(c)) return;
      out += coupling_symbol(c, tr) * field_product(phi, t, tr) * inv_fact;
    });
  }
  return out;
}

}  // namespace

std::vector<FormalSeries> action_gradient(const ModelData& m, const std::vector<FormalSeries>& phi) {
  const int tr = series_truncation(phi);
  std::vector<FormalSeries> out;
  for (std::size_t a = 0; a < m.size(); ++a) {
    FormalSeries d = interaction_gradient(m, phi, static_cast<int>(a));
    for (std::size_t b = 0; b < m.size(); ++b) d = d - phi[b] * m.g[a][b];
    out.push_back(d.truncated(tr));
  }
  return out;
}

FormalSeries action_value(const ModelData& m, const std::vector<FormalSeries>& phi) {
  const int tr = series_truncation(phi);
  const int nc = static_cast<int>(m.size());
  FormalSeries s(tr);
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b) s = s - phi[a] * phi[b] * (m.g[a][b] / 2);
  for (int k = 1; k <= std::min(m.max_rank(), tr); ++k) {
    Rational inv_fact = 1 / factorial(k);
    tuples(k, nc, [&](const std::vector<int>& t) {
      Coupling c = t;
      std::sort(c.begin(), c.end());
      if (!m.active(c)) return;
      s += coupling_symbol(c, tr) * field_product(phi, t, tr) * inv_fact;
    });
  }
  return s;
}

StationaryPoint stationary_point(const ModelData& m, int max_weight) {
  require_weight(max_weight);
  const std::size_t n = m.size();
  StationaryPoint sp;
  auto step = [&](const std::vector<FormalSeries>& phi) {
    std::vector<FormalSeries> next(n, FormalSeries(max_weight));
    std::vector<FormalSeries> grads;
    for (std::size_t b = 0; b < n; ++b) grads.push_back(interaction_gradient(m, phi, static_cast<int>(b)));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) next[a] += grads[b] * m.ginv[a][b];
    return next;
  };
  // C^a = g^{ab} C_b is the first iterate from phi = 0
  sp.phi = step(std::vector<FormalSeries>(n, FormalSeries(max_weight)));
  sp.iterations = 1;
  for (int guard = 0; guard <= max_weight + 1; ++guard) {
    auto next = step(sp.phi);
    ++sp.iterations;
    if (next == sp.phi) return sp;
    sp.phi = std::move(next);
  }
  fail(ErrorCode::Resource, "stationary point iteration did not settle");
}

TreeCheck check_tree_identities(const ModelData& m, int max_weight, LambdaConvention conv) {
  TreeCheck r;
  r.convention = conv;
  // dZ/dC_a needs C_a to be a live variable, so every rank-1 symbol is switched on
  // for that comparison.
  std::map<Coupling, Rational> live = m.couplings;
  for (std::size_t a = 0; a < m.size(); ++a) live.emplace(Coupling{static_cast<int>(a)}, Rational(1));
  ModelData m1 = make_model(m.colors, m.g, live);

  auto sp = stationary_point(m, max_weight);
  auto res = action_gradient(m, sp.phi);
  r.residual_vanishes = std::all_of(res.begin(), res.end(), [](const FormalSeries& s) { return s.is_zero(); });

  auto lambda_fix = [&](const FormalSeries& z) { return conv == LambdaConvention::AtOne ? z.at_lambda_one() : z.shift_lambda(1); };

  FormalSeries z = tree_series(m, max_weight);
  std::set<int> powers;
  for (const auto& [t, c] : z.terms()) powers.insert(t.lambda);
  r.tree_lambda_powers.assign(powers.begin(), powers.end());
  r.critical_value_matches = lambda_fix(z) == action_value(m, sp.phi);

  FormalSeries z1 = lambda_fix(tree_series(m1, max_weight));
  auto sp1 = stationary_point(m1, max_weight);
  r.gradient_matches = true;
  for (std::size_t a = 0; a < m.size(); ++a) {
    auto d = z1.derivative(Coupling{static_cast<int>(a)});
    if (!(d == sp1.phi[a].truncated(d.truncation()))) r.gradient_matches = false;
  }
  return r;
}

}  // namespace hopfflow
