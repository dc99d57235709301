#include "hopfflow/renorm.hpp"

#include <algorithm>

#include "hopfflow/canonical.hpp"
#include "hopfflow/error.hpp"
#include "hopfflow/feynman.hpp"

namespace hopfflow {

using nlohmann::json;

// -- Laurent values --------------------------------------------------------

LaurentValue LaurentValue::constant(const Rational& r, int pole_cap, int regular_cap) {
  return monomial(0, r, pole_cap, regular_cap);
}

LaurentValue LaurentValue::monomial(int k, const Rational& r, int pole_cap, int regular_cap) {
  LaurentValue v;
  v.pole_cap = pole_cap;
  v.regular_cap = regular_cap;
  v.set(k, r);
  return v;
}

Rational LaurentValue::coefficient(int k) const {
  auto it = c.find(k);
  return it == c.end() ? Rational(0) : it->second;
}

void LaurentValue::set(int k, const Rational& r) {
  if (hopfflow::is_zero(r)) {
    c.erase(k);
    return;
  }
  if (k < -pole_cap || k > regular_cap)
    fail(ErrorCode::Truncation, "z^" + std::to_string(k) + " lies outside the caps [-" + std::to_string(pole_cap) +
                                    ", " + std::to_string(regular_cap) + "]");
  Rational v = r;
  v.canonicalize();
  c[k] = v;
}

namespace {

LaurentValue empty_like(const LaurentValue& a, const LaurentValue& b) {
  LaurentValue r;
  r.pole_cap = std::min(a.pole_cap, b.pole_cap);
  r.regular_cap = std::min(a.regular_cap, b.regular_cap);
  return r;
}

}  // namespace

LaurentValue LaurentValue::operator+(const LaurentValue& o) const {
  LaurentValue r = empty_like(*this, o);
  std::map<int, Rational> sum = c;
  for (const auto& [k, v] : o.c) sum[k] += v;
  for (const auto& [k, v] : sum) r.set(k, v);
  return r;
}

LaurentValue LaurentValue::operator-() const { return *this * Rational(-1); }

LaurentValue LaurentValue::operator-(const LaurentValue& o) const { return *this + (-o); }

LaurentValue LaurentValue::operator*(const LaurentValue& o) const {
  LaurentValue r = empty_like(*this, o);
  std::map<int, Rational> prod;
  for (const auto& [i, a] : c)
    for (const auto& [j, b] : o.c) prod[i + j] += a * b;
  for (const auto& [k, v] : prod) r.set(k, v);
  return r;
}

LaurentValue LaurentValue::operator*(const Rational& s) const {
  LaurentValue r = *this;
  r.c.clear();
  for (const auto& [k, v] : c) r.set(k, v * s);
  return r;
}

std::string format_laurent(const LaurentValue& v) {
  if (v.c.empty()) return "0";
  std::string out;
  for (auto it = v.c.rbegin(); it != v.c.rend(); ++it) {
    auto [k, a] = *it;
    bool neg = sgn(a) < 0;
    Rational mag = neg ? Rational(-a) : a;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (k == 0) {
      out += format_rational_short(mag);
      continue;
    }
    if (mag != 1) out += format_rational_short(mag) + "*";
    out += k == 1 ? "z" : "z^" + std::to_string(k);
  }
  return out;
}

json laurent_to_json(const LaurentValue& v) {
  json j = json::object();
  for (const auto& [k, a] : v.c) j[std::to_string(k)] = format_rational(a);
  return j;
}

LaurentValue laurent_from_json(const json& j, int pole_cap, int regular_cap) {
  if (!j.is_object()) fail(ErrorCode::Parse, "laurent value must be an object of power -> coefficient");
  LaurentValue v;
  v.pole_cap = pole_cap;
  v.regular_cap = regular_cap;
  for (const auto& [k, a] : j.items()) {
    int power = 0;
    try {
      std::size_t used = 0;
      power = std::stoi(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      fail(ErrorCode::Parse, "laurent power '" + k + "' is not an integer");
    }
    v.set(power, parse_rational(a.is_string() ? a.get<std::string>() : a.dump()));
  }
  return v;
}

// -- schemes ---------------------------------------------------------------

Scheme Scheme::minimal(int pole_cap, int regular_cap) {
  Scheme s;
  s.pole_cap = pole_cap;
  s.regular_cap = regular_cap;
  return s;
}

Scheme Scheme::complementary(const Rational& z0, int pole_cap, int regular_cap) {
  if (hopfflow::is_zero(z0)) fail(ErrorCode::Argument, "evaluation point z0 must be nonzero");
  Scheme s = minimal(pole_cap, regular_cap);
  s.kind = Kind::Complementary;
  s.z0 = z0;
  return s;
}

std::string Scheme::name() const {
  return kind == Kind::MinimalSubtraction ? "minimal-subtraction" : "complementary(z0=" + format_rational_short(z0) + ")";
}

LaurentValue Scheme::unit() const { return LaurentValue::constant(1, pole_cap, regular_cap); }

LaurentValue Scheme::zero() const { return LaurentValue::constant(0, pole_cap, regular_cap); }

LaurentValue Scheme::monomial(int k, const Rational& r) const { return LaurentValue::monomial(k, r, pole_cap, regular_cap); }

bool Scheme::polar_degree(int k) const { return kind == Kind::MinimalSubtraction ? k < 0 : k > 0; }

LaurentValue Scheme::polar(const LaurentValue& v) const {
  LaurentValue r = v;
  r.c.clear();
  for (const auto& [k, a] : v.c)
    if (polar_degree(k)) r.c[k] = a;
  return r;
}

LaurentValue Scheme::regular(const LaurentValue& v) const {
  LaurentValue r = v;
  r.c.clear();
  for (const auto& [k, a] : v.c)
    if (!polar_degree(k)) r.c[k] = a;
  return r;
}

bool Scheme::is_polar(const LaurentValue& v) const {
  return std::all_of(v.c.begin(), v.c.end(), [&](const auto& t) { return polar_degree(t.first); });
}

bool Scheme::is_regular(const LaurentValue& v) const {
  return std::none_of(v.c.begin(), v.c.end(), [&](const auto& t) { return polar_degree(t.first); });
}

std::optional<Rational> Scheme::augmentation(const LaurentValue& v) const {
  if (!is_regular(v)) return std::nullopt;
  if (kind == Kind::MinimalSubtraction) return v.coefficient(0);
  Rational sum = 0;
  for (const auto& [k, a] : v.c) {
    Rational p = 1;
    for (int i = 0; i < -k; ++i) p /= z0;
    sum += a * p;
  }
  return sum;
}

// -- linear maps -----------------------------------------------------------

LinearMap::LinearMap(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound, Rule rule, bool multiplicative)
    : hopf_(std::move(hopf)),
      scheme_(scheme),
      bound_(degree_bound),
      rule_(std::move(rule)),
      multiplicative_(multiplicative),
      memo_(std::make_shared<std::map<std::string, LaurentValue>>()) {}

LaurentValue LinearMap::operator()(const std::string& key) const {
  if (!rule_) fail(ErrorCode::Argument, "linear map is not initialized");
  if (auto it = memo_->find(key); it != memo_->end()) return it->second;
  int d = hopf_->degree(key);
  if (d > bound_)
    fail(ErrorCode::Argument, "class of degree " + std::to_string(d) + " exceeds the degree bound " + std::to_string(bound_));
  LaurentValue v = rule_(key);
  memo_->emplace(key, v);
  return v;
}

LaurentValue LinearMap::operator()(const HopfElement& x) const {
  LaurentValue sum = scheme_.zero();
  for (const auto& [k, c] : x.terms) sum = sum + (*this)(k) * c;
  return sum;
}

namespace {

void same_target(const LinearMap& a, const LinearMap& b) {
  if (a.hopf() != b.hopf()) fail(ErrorCode::Argument, "linear maps live on different Hopf algebras");
  if (a.scheme().kind != b.scheme().kind || a.scheme().z0 != b.scheme().z0)
    fail(ErrorCode::Argument, "linear maps have different target algebras");
}

}  // namespace

LinearMap counit_map(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound) {
  auto rule = [scheme](const std::string& key) { return key.empty() ? scheme.unit() : scheme.zero(); };
  return LinearMap(std::move(hopf), scheme, degree_bound, rule, true);
}

LinearMap character_from_generators(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound,
                                    std::map<std::string, LaurentValue> generators) {
  for (const auto& [k, v] : generators)
    if (split_key(k).size() != 1) fail(ErrorCode::Argument, "character generators must be connected classes");
  auto gens = std::make_shared<std::map<std::string, LaurentValue>>(std::move(generators));
  auto rule = [gens, scheme](const std::string& key) {
    LaurentValue v = scheme.unit();
    for (const auto& part : split_key(key)) {
      auto it = gens->find(part);
      if (it == gens->end()) fail(ErrorCode::Argument, "character has no value on a connected class");
      v = v * it->second;
    }
    return v;
  };
  return LinearMap(std::move(hopf), scheme, degree_bound, rule, true);
}

LinearMap table_map(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound,
                    std::map<std::string, LaurentValue> table) {
  auto t = std::make_shared<std::map<std::string, LaurentValue>>(std::move(table));
  auto rule = [t, scheme](const std::string& key) {
    if (auto it = t->find(key); it != t->end()) return it->second;
    if (key.empty()) return scheme.unit();
    auto parts = split_key(key);
    if (parts.size() == 1) fail(ErrorCode::Argument, "linear map has no value on a connected class");
    LaurentValue v = scheme.unit();
    for (const auto& part : parts) {
      auto it = t->find(part);
      if (it == t->end()) fail(ErrorCode::Argument, "linear map has no value on a connected class");
      v = v * it->second;
    }
    return v;
  };
  return LinearMap(std::move(hopf), scheme, degree_bound, rule, false);
}

LinearMap make_toy_character(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound,
                             std::function<LaurentValue(const DecoratedGraph&)> rule) {
  auto gens = std::make_shared<std::map<std::string, LaurentValue>>();
  auto r = [gens, scheme, rule](const std::string& key) {
    LaurentValue v = scheme.unit();
    for (const auto& part : split_key(key)) {
      auto it = gens->find(part);
      if (it == gens->end()) it = gens->emplace(part, rule(graph_from_key(part))).first;
      v = v * it->second;
    }
    return v;
  };
  return LinearMap(std::move(hopf), scheme, degree_bound, r, true);
}

std::function<LaurentValue(const DecoratedGraph&)> edge_pole_rule(const Scheme& s) {
  return [s](const DecoratedGraph& g) { return s.monomial(-static_cast<int>(g.graph.edge_count()), 1); };
}

std::function<LaurentValue(const DecoratedGraph&)> weighted_pole_rule(const Scheme& s, const ModelData& m) {
  return [s, m](const DecoratedGraph& g) {
    Rational w = 0;
    for (const auto& [power, value] : specialize(graph_weight(g, m), m)) w += value;
    return s.monomial(-static_cast<int>(g.graph.edge_count()), w);
  };
}

LinearMap convolve(const LinearMap& phi, const LinearMap& psi) {
  same_target(phi, psi);
  auto rule = [phi, psi](const std::string& key) {
    LaurentValue sum = phi.scheme().zero();
    for (const auto& [k, c] : phi.hopf()->coproduct_of(key).terms) sum = sum + phi(k[0]) * psi(k[1]) * c;
    return sum;
  };
  return LinearMap(phi.hopf(), phi.scheme(), std::min(phi.degree_bound(), psi.degree_bound()), rule,
                   phi.multiplicative() && psi.multiplicative());
}

LinearMap difference(const LinearMap& phi, const LinearMap& psi) {
  same_target(phi, psi);
  auto rule = [phi, psi](const std::string& key) { return phi(key) - psi(key); };
  return LinearMap(phi.hopf(), phi.scheme(), std::min(phi.degree_bound(), psi.degree_bound()), rule, false);
}

LinearMap convolution_inverse(const LinearMap& phi) {
  if (!(phi("") == phi.scheme().unit())) fail(ErrorCode::Argument, "convolution inverse needs phi(1) = 1");
  auto e = counit_map(phi.hopf(), phi.scheme(), phi.degree_bound());
  auto powers = std::make_shared<std::vector<LinearMap>>();
  powers->push_back(difference(e, phi));
  auto rule = [phi, powers, e](const std::string& key) {
    if (key.empty()) return phi.scheme().unit();
    // (e - phi) kills 1, so the m-th power needs m nonempty cut parts
    std::size_t m = graph_from_key(key).graph.vertex_count();
    while (powers->size() < m) powers->push_back(convolve(powers->back(), powers->front()));
    LaurentValue sum = e(key);
    for (std::size_t i = 0; i < m; ++i) sum = sum + (*powers)[i](key);
    return sum;
  };
  return LinearMap(phi.hopf(), phi.scheme(), phi.degree_bound(), rule, phi.multiplicative());
}

namespace {

struct BirkhoffState {
  LinearMap phi;
  std::map<std::string, LaurentValue> bar_memo;
  std::map<std::string, LaurentValue> minus_memo;

  LaurentValue minus(const std::string& key) {
    if (auto it = minus_memo.find(key); it != minus_memo.end()) return it->second;
    LaurentValue v = key.empty() ? phi.scheme().unit() : -phi.scheme().polar(bar(key));
    return minus_memo.emplace(key, v).first->second;
  }

  // phi(x) + sum' phi_-(x') phi(x'')
  LaurentValue bar(const std::string& key) {
    if (auto it = bar_memo.find(key); it != bar_memo.end()) return it->second;
    LaurentValue v = phi(key);
    for (const auto& [k, c] : phi.hopf()->coproduct_of(key).terms) {
      if (k[0].empty() || k[1].empty()) continue;
      v = v + minus(k[0]) * phi(k[1]) * c;
    }
    return bar_memo.emplace(key, v).first->second;
  }
};

}  // namespace

Birkhoff birkhoff(const LinearMap& phi) {
  if (!(phi("") == phi.scheme().unit())) fail(ErrorCode::Argument, "Birkhoff decomposition needs phi(1) = 1");
  auto st = std::make_shared<BirkhoffState>();
  st->phi = phi;
  Scheme s = phi.scheme();
  Birkhoff b;
  b.minus = LinearMap(phi.hopf(), s, phi.degree_bound(), [st](const std::string& k) { return st->minus(k); },
                      phi.multiplicative());
  b.plus = LinearMap(
      phi.hopf(), s, phi.degree_bound(),
      [st, s](const std::string& k) { return k.empty() ? s.unit() : s.regular(st->bar(k)); }, phi.multiplicative());
  return b;
}

std::optional<Rational> regularized_value(const LinearMap& plus, const std::string& key) {
  return plus.scheme().augmentation(plus(key));
}

BirkhoffReport verify_birkhoff(const LinearMap& phi, const Birkhoff& b, const std::vector<std::string>& keys) {
  BirkhoffReport r;
  auto rec = convolve(convolution_inverse(b.minus), b.plus);
  const Scheme& s = phi.scheme();
  auto& hopf = *phi.hopf();
  for (const auto& k : keys) {
    if (!(rec(k) == phi(k))) {
      r.reconstruction = false;
      r.failures.push_back("reconstruction fails on " + k);
    }
    if (!s.is_regular(b.plus(k))) {
      r.plus_regular = false;
      r.failures.push_back("phi_+ not regular on " + k);
    }
    if (!k.empty() && !s.is_polar(b.minus(k))) {
      r.minus_polar = false;
      r.failures.push_back("phi_- not polar on " + k);
    }
  }
  if (!phi.multiplicative()) return r;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i; j < keys.size(); ++j) {
      if (hopf.degree(keys[i]) + hopf.degree(keys[j]) > phi.degree_bound()) continue;
      auto xy = merge_keys(keys[i], keys[j]);
      if (!(b.minus(xy) == b.minus(keys[i]) * b.minus(keys[j]))) {
        r.minus_multiplicative = false;
        r.failures.push_back("phi_- not multiplicative on " + xy);
      }
      if (!(b.plus(xy) == b.plus(keys[i]) * b.plus(keys[j]))) {
        r.plus_multiplicative = false;
        r.failures.push_back("phi_+ not multiplicative on " + xy);
      }
    }
  return r;
}

RotaBaxterReport<LaurentValue> rota_baxter_laurent(const std::function<LaurentValue(const LaurentValue&)>& R,
                                                   const Rational& theta,
                                                   const std::vector<std::pair<LaurentValue, LaurentValue>>& samples) {
  return rota_baxter_check<LaurentValue>(R, theta, samples,
                                         [](const LaurentValue& v, const Rational& t) { return v * t; });
}

// -- character files -------------------------------------------------------

CharacterFile character_from_json(const json& j, std::shared_ptr<GraphHopf> hopf, const Scheme& scheme) {
  if (!j.is_object() || !j.contains("values")) fail(ErrorCode::Parse, "character file needs 'values'");
  CharacterFile out;
  try {
    out.degree_bound = j.value("degree_bound", 8);
    std::map<std::string, LaurentValue> table;
    bool products = false;
    for (const auto& v : j.at("values")) {
      if (!v.contains("graph") || !v.contains("laurent")) fail(ErrorCode::Parse, "character entry needs graph and laurent");
      auto key = class_from_json(v.at("graph"));
      if (table.count(key)) fail(ErrorCode::Parse, "character lists a class twice");
      if (split_key(key).size() != 1) products = true;
      table[key] = laurent_from_json(v.at("laurent"), scheme.pole_cap, scheme.regular_cap);
      out.keys.push_back(key);
    }
    if (table.count("") && !(table.at("") == scheme.unit())) fail(ErrorCode::Invalid, "character must send 1 to 1");
    table.erase("");
    out.map = products ? table_map(hopf, scheme, out.degree_bound, std::move(table))
                       : character_from_generators(hopf, scheme, out.degree_bound, std::move(table));
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("character file: ") + e.what());
  }
  return out;
}

json character_to_json(const LinearMap& phi, const std::vector<std::string>& keys) {
  json values = json::array();
  for (const auto& k : keys) values.push_back({{"graph", class_to_json(k)}, {"laurent", laurent_to_json(phi(k))}});
  return {{"degree_bound", phi.degree_bound()}, {"values", values}};
}

}  // namespace hopfflow
