#include "hopfflow/hopf.hpp"

#include <algorithm>
#include <set>

#include "hopfflow/canonical.hpp"
#include "hopfflow/cuts.hpp"
#include "hopfflow/error.hpp"
#include "hopfflow/graph_json.hpp"

namespace hopfflow {

using nlohmann::json;

// -- elements --------------------------------------------------------------

void HopfElement::add(const std::string& key, const Rational& c) {
  if (hopfflow::is_zero(c)) return;
  auto [it, fresh] = terms.emplace(key, c);
  if (fresh) {
    it->second.canonicalize();
    return;
  }
  it->second += c;
  if (hopfflow::is_zero(it->second)) terms.erase(it);
}

Rational HopfElement::coefficient(const std::string& key) const {
  auto it = terms.find(key);
  return it == terms.end() ? Rational(0) : it->second;
}

namespace {

void same_family(const std::string& a, const std::string& b) {
  if (a != b) fail(ErrorCode::Argument, "family mismatch: '" + a + "' vs '" + b + "'");
}

}  // namespace

HopfElement HopfElement::operator+(const HopfElement& o) const {
  same_family(family, o.family);
  HopfElement r = *this;
  for (const auto& [k, c] : o.terms) r.add(k, c);
  return r;
}

HopfElement HopfElement::operator-(const HopfElement& o) const { return *this + o * Rational(-1); }

HopfElement HopfElement::operator*(const HopfElement& o) const {
  same_family(family, o.family);
  HopfElement r;
  r.family = family;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : o.terms) r.add(merge_keys(a, b), ca * cb);
  return r;
}

HopfElement HopfElement::operator*(const Rational& c) const {
  HopfElement r;
  r.family = family;
  for (const auto& [k, v] : terms) r.add(k, v * c);
  return r;
}

void TensorElement::add(const std::vector<std::string>& key, const Rational& c) {
  if (hopfflow::is_zero(c)) return;
  auto [it, fresh] = terms.emplace(key, c);
  if (fresh) {
    it->second.canonicalize();
    return;
  }
  it->second += c;
  if (hopfflow::is_zero(it->second)) terms.erase(it);
}

TensorElement TensorElement::operator+(const TensorElement& o) const {
  same_family(family, o.family);
  TensorElement r = *this;
  for (const auto& [k, c] : o.terms) r.add(k, c);
  return r;
}

TensorElement TensorElement::operator-(const TensorElement& o) const {
  same_family(family, o.family);
  TensorElement r = *this;
  for (const auto& [k, c] : o.terms) r.add(k, -c);
  return r;
}

TensorElement TensorElement::operator*(const TensorElement& o) const {
  same_family(family, o.family);
  TensorElement r;
  r.family = family;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : o.terms) {
      if (a.size() != b.size()) fail(ErrorCode::Argument, "tensor arity mismatch");
      std::vector<std::string> k(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) k[i] = merge_keys(a[i], b[i]);
      r.add(k, ca * cb);
    }
  return r;
}

HopfElement hopf_unit(const std::string& family) { return basis_key("", family); }

HopfElement basis_element(const DecoratedGraph& g, const std::string& family) {
  return basis_key(canonical_form(g), family);
}

HopfElement basis_key(const std::string& key, const std::string& family) {
  HopfElement x;
  x.family = family;
  x.add(key, 1);
  return x;
}

TensorElement tensor_basis(std::vector<std::string> keys, const Rational& c, const std::string& family) {
  TensorElement t;
  t.family = family;
  t.add(keys, c);
  return t;
}

int Grading::degree(const DecoratedGraph& g) const {
  if (mode == Mode::Flags) return static_cast<int>(g.graph.flag_count());
  auto weight = [&](const std::optional<std::string>& l) {
    if (!l) return 0;
    auto it = label_weights.find(*l);
    if (it == label_weights.end()) fail(ErrorCode::Argument, "label '" + *l + "' has no weight");
    return it->second;
  };
  int n = 0;
  for (std::size_t f = 0; f < g.graph.flag_count(); ++f)
    n += 1 + (g.deco.flag_labels.size() > f ? weight(g.deco.flag_labels[f].label) : 0);
  for (std::size_t v = 0; v < g.graph.vertex_count(); ++v)
    n += g.deco.vertex_labels.size() > v ? weight(g.deco.vertex_labels[v]) : 0;
  return n;
}

bool GraphFamily::contains(const DecoratedGraph& g) const {
  if (!g.fully_oriented()) return false;
  if (!alphabet.empty()) {
    auto ok = [&](const std::optional<std::string>& l) {
      return !l || std::find(alphabet.begin(), alphabet.end(), *l) != alphabet.end();
    };
    for (const auto& l : g.deco.flag_labels)
      if (!ok(l.label)) return false;
    for (const auto& l : g.deco.vertex_labels)
      if (!ok(l)) return false;
  }
  return !member || member(g);
}

// -- structure maps --------------------------------------------------------

GraphHopf::GraphHopf(GraphFamily family, Grading grading) : family_(std::move(family)), grading_(std::move(grading)) {}

void GraphHopf::check_family(const std::string& f) const { same_family(family_.tag, f); }

const DecoratedGraph& GraphHopf::decoded(const std::string& key) {
  auto it = graphs_.find(key);
  if (it == graphs_.end()) it = graphs_.emplace(key, graph_from_key(key)).first;
  return it->second;
}

int GraphHopf::degree(const std::string& key) {
  auto it = degrees_.find(key);
  if (it == degrees_.end()) it = degrees_.emplace(key, grading_.degree(decoded(key))).first;
  return it->second;
}

HopfElement GraphHopf::product(const HopfElement& x, const HopfElement& y) const {
  check_family(x.family);
  return x * y;
}

Rational GraphHopf::counit(const HopfElement& x) const {
  check_family(x.family);
  return x.coefficient("");
}

const TensorElement& GraphHopf::coproduct_of(const std::string& key) {
  if (auto it = coproducts_.find(key); it != coproducts_.end()) return it->second;
  const DecoratedGraph g = decoded(key);
  if (!g.fully_oriented()) fail(ErrorCode::Invalid, "coproduct needs every flag oriented");
  if (!family_.contains(g)) fail(ErrorCode::Invalid, "graph lies outside the family '" + family_.tag + "'");
  TensorElement t;
  t.family = family_.tag;
  for (const auto& c : enumerate_cuts(g)) {
    auto [up, low] = apply_cut(g, c);
    if (family_.member && (!family_.contains(up) || !family_.contains(low)))
      fail(ErrorCode::Invalid, "family '" + family_.tag + "' is not closed under cuts");
    t.add({canonical_form(up), canonical_form(low)}, 1);
  }
  return coproducts_.emplace(key, std::move(t)).first->second;
}

TensorElement GraphHopf::coproduct(const HopfElement& x) {
  check_family(x.family);
  TensorElement out;
  out.family = family_.tag;
  for (const auto& [k, c] : x.terms)
    for (const auto& [kk, cc] : coproduct_of(k).terms) out.add(kk, c * cc);
  return out;
}

TensorElement GraphHopf::reduced_coproduct(const HopfElement& x) {
  if (!is_zero(counit(x))) fail(ErrorCode::Argument, "reduced coproduct needs an element of the counit's kernel");
  TensorElement t = coproduct(x);
  for (const auto& [k, c] : x.terms) {
    t.add({k, ""}, -c);
    t.add({"", k}, -c);
  }
  return t;
}

HopfElement GraphHopf::antipode(const HopfElement& x, int degree_bound) {
  check_family(x.family);
  std::function<const HopfElement&(const std::string&)> s = [&](const std::string& key) -> const HopfElement& {
    if (auto it = antipodes_.find(key); it != antipodes_.end()) return it->second;
    HopfElement r;
    r.family = family_.tag;
    if (key.empty()) {
      r.add("", 1);
    } else {
      r.add(key, -1);
      for (const auto& [k, c] : coproduct_of(key).terms) {
        if (k[0].empty() || k[1].empty()) continue;
        HopfElement left = s(k[0]);
        r = r - left * basis_key(k[1], family_.tag) * c;
      }
    }
    return antipodes_.emplace(key, std::move(r)).first->second;
  };
  HopfElement out;
  out.family = family_.tag;
  for (const auto& [k, c] : x.terms) {
    if (degree(k) > degree_bound)
      fail(ErrorCode::Argument, "element has degree " + std::to_string(degree(k)) + " above the bound " +
                                    std::to_string(degree_bound));
    out = out + s(k) * c;
  }
  return out;
}

TensorElement GraphHopf::coproduct_at(const TensorElement& t, std::size_t i) {
  check_family(t.family);
  TensorElement out;
  out.family = family_.tag;
  for (const auto& [k, c] : t.terms) {
    if (i >= k.size()) fail(ErrorCode::Argument, "tensor factor out of range");
    for (const auto& [d, cd] : coproduct_of(k[i]).terms) {
      std::vector<std::string> nk(k.begin(), k.begin() + static_cast<long>(i));
      nk.insert(nk.end(), d.begin(), d.end());
      nk.insert(nk.end(), k.begin() + static_cast<long>(i) + 1, k.end());
      out.add(nk, c * cd);
    }
  }
  return out;
}

HopfElement GraphHopf::counit_side(const TensorElement& t, bool left) const {
  check_family(t.family);
  HopfElement out;
  out.family = family_.tag;
  for (const auto& [k, c] : t.terms) {
    if (k.size() != 2) fail(ErrorCode::Argument, "expected a 2-tensor");
    if ((left ? k[0] : k[1]).empty()) out.add(left ? k[1] : k[0], c);
  }
  return out;
}

HopfElement GraphHopf::antipode_side(const TensorElement& t, bool left, int degree_bound) {
  check_family(t.family);
  HopfElement out;
  out.family = family_.tag;
  for (const auto& [k, c] : t.terms) {
    if (k.size() != 2) fail(ErrorCode::Argument, "expected a 2-tensor");
    auto a = basis_key(k[0], family_.tag), b = basis_key(k[1], family_.tag);
    out = out + (left ? antipode(a, degree_bound) * b : a * antipode(b, degree_bound)) * c;
  }
  return out;
}

// -- finite categories -----------------------------------------------------

int FiniteCategory::find(const std::string& name) const {
  for (std::size_t i = 0; i < morphisms.size(); ++i)
    if (morphisms[i].name == name) return static_cast<int>(i);
  fail(ErrorCode::Argument, "unknown morphism '" + name + "'");
}

int FiniteCategory::compose_names(const std::string& g, const std::string& h) const {
  auto it = compose.find({find(g), find(h)});
  if (it == compose.end()) fail(ErrorCode::Argument, g + " o " + h + " is not composable");
  return it->second;
}

std::vector<std::string> category_violations(const FiniteCategory& c) {
  std::vector<std::string> out;
  const int n = static_cast<int>(c.morphisms.size());
  const int objects = static_cast<int>(c.objects.size());
  if (static_cast<int>(c.identity.size()) != objects) return {"identity table does not cover every object"};
  auto name = [&](int m) { return c.morphisms[m].name; };
  for (const auto& m : c.morphisms)
    if (m.source < 0 || m.source >= objects || m.target < 0 || m.target >= objects)
      out.push_back("morphism '" + m.name + "' has an unknown endpoint");
  for (int x = 0; x < objects; ++x) {
    int id = c.identity[x];
    if (id < 0 || id >= n || c.morphisms[id].source != x || c.morphisms[id].target != x)
      out.push_back("identity of '" + c.objects[x] + "' is not an endomorphism of it");
  }
  if (!out.empty()) return out;
  for (const auto& [gh, f] : c.compose) {
    auto [g, h] = gh;
    if (c.morphisms[h].target != c.morphisms[g].source)
      out.push_back("composite " + name(g) + " o " + name(h) + " is defined for non-composable arrows");
    else if (c.morphisms[f].source != c.morphisms[h].source || c.morphisms[f].target != c.morphisms[g].target)
      out.push_back("composite " + name(g) + " o " + name(h) + " has the wrong endpoints");
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (c.morphisms[h].target == c.morphisms[g].source && !c.compose.count({g, h}))
        out.push_back("composite " + name(g) + " o " + name(h) + " is missing");
  if (!out.empty()) return out;
  for (int f = 0; f < n; ++f) {
    if (c.compose.at({c.identity[c.morphisms[f].target], f}) != f ||
        c.compose.at({f, c.identity[c.morphisms[f].source]}) != f)
      out.push_back("identity law fails for '" + name(f) + "'");
  }
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g) {
      if (c.morphisms[g].target != c.morphisms[f].source) continue;
      for (int h = 0; h < n; ++h) {
        if (c.morphisms[h].target != c.morphisms[g].source) continue;
        if (c.compose.at({f, c.compose.at({g, h})}) != c.compose.at({c.compose.at({f, g}), h}))
          out.push_back("associativity fails at (" + name(f) + ", " + name(g) + ", " + name(h) + ")");
      }
    }
  return out;
}

FiniteCategory make_category(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                             const std::map<std::pair<std::string, std::string>, std::string>& compose) {
  FiniteCategory c;
  c.objects = std::move(objects);
  for (std::size_t x = 0; x < c.objects.size(); ++x) {
    c.identity.push_back(static_cast<int>(c.morphisms.size()));
    c.morphisms.push_back({"id_" + c.objects[x], static_cast<int>(x), static_cast<int>(x)});
  }
  for (auto& m : morphisms) c.morphisms.push_back(std::move(m));
  const int n = static_cast<int>(c.morphisms.size());
  std::set<std::string> names;
  for (const auto& m : c.morphisms)
    if (!names.insert(m.name).second) fail(ErrorCode::Invalid, "duplicate morphism '" + m.name + "'");
  for (int f = 0; f < n; ++f) {
    if (c.morphisms[f].source < 0 || c.morphisms[f].source >= static_cast<int>(c.objects.size()) ||
        c.morphisms[f].target < 0 || c.morphisms[f].target >= static_cast<int>(c.objects.size()))
      fail(ErrorCode::Invalid, "morphism '" + c.morphisms[f].name + "' has an unknown endpoint");
    c.compose[{c.identity[c.morphisms[f].target], f}] = f;
    c.compose[{f, c.identity[c.morphisms[f].source]}] = f;
  }
  for (const auto& [gh, f] : compose) c.compose[{c.find(gh.first), c.find(gh.second)}] = c.find(f);
  auto bad = category_violations(c);
  if (!bad.empty()) fail(ErrorCode::Invalid, "not a category: " + bad.front());
  return c;
}

FiniteCategory poset_category(int objects, const std::vector<std::pair<int, int>>& relations) {
  std::vector<std::vector<bool>> le(objects, std::vector<bool>(objects, false));
  for (int i = 0; i < objects; ++i) le[i][i] = true;
  for (auto [i, j] : relations) {
    if (i < 0 || j < 0 || i >= objects || j >= objects) fail(ErrorCode::Argument, "relation outside the poset");
    le[i][j] = true;
  }
  for (int k = 0; k < objects; ++k)
    for (int i = 0; i < objects; ++i)
      for (int j = 0; j < objects; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  for (int i = 0; i < objects; ++i)
    for (int j = 0; j < objects; ++j)
      if (i != j && le[i][j] && le[j][i]) fail(ErrorCode::Argument, "relations contain a cycle");
  std::vector<std::string> obj;
  for (int i = 0; i < objects; ++i) obj.push_back(std::to_string(i));
  auto arrow = [](int i, int j) { return std::to_string(i) + "->" + std::to_string(j); };
  std::vector<Morphism> ms;
  for (int i = 0; i < objects; ++i)
    for (int j = 0; j < objects; ++j)
      if (i != j && le[i][j]) ms.push_back({arrow(i, j), i, j});
  std::map<std::pair<std::string, std::string>, std::string> comp;
  for (int i = 0; i < objects; ++i)
    for (int j = 0; j < objects; ++j)
      for (int k = 0; k < objects; ++k)
        if (i != j && j != k && le[i][j] && le[j][k]) comp[{arrow(j, k), arrow(i, j)}] = arrow(i, k);
  return make_category(std::move(obj), std::move(ms), comp);
}

TensorElement category_coproduct(const FiniteCategory& c, int f) {
  TensorElement t;
  t.family = "category";
  for (const auto& [gh, r] : c.compose)
    if (r == f) t.add({c.morphisms[gh.second].name, c.morphisms[gh.first].name}, 1);
  return t;
}

TensorElement category_coproduct_at(const FiniteCategory& c, const TensorElement& t, std::size_t i) {
  TensorElement out;
  out.family = "category";
  for (const auto& [k, coeff] : t.terms) {
    if (i >= k.size()) fail(ErrorCode::Argument, "tensor factor out of range");
    for (const auto& [d, cd] : category_coproduct(c, c.find(k[i])).terms) {
      std::vector<std::string> nk(k.begin(), k.begin() + static_cast<long>(i));
      nk.insert(nk.end(), d.begin(), d.end());
      nk.insert(nk.end(), k.begin() + static_cast<long>(i) + 1, k.end());
      out.add(nk, coeff * cd);
    }
  }
  return out;
}

// -- serialization ---------------------------------------------------------

json class_to_json(const std::string& key) {
  auto parts = split_key(key);
  if (parts.size() == 1) return graph_to_json(graph_from_key(key));
  json a = json::array();
  for (const auto& p : parts) a.push_back(graph_to_json(graph_from_key(p)));
  return a;
}

std::string class_from_json(const json& j) {
  auto one = [](const json& g) {
    auto d = graph_from_json(g);
    auto r = validate_decorated(d);
    if (!r.ok()) fail(ErrorCode::Invalid, "invalid graph: " + r.violations.front());
    return canonical_form(d);
  };
  if (j.is_object()) return one(j);
  if (!j.is_array()) fail(ErrorCode::Parse, "graph must be an object or an array of objects");
  std::string key;
  for (const auto& g : j) key = merge_keys(key, one(g));
  return key;
}

json hopf_to_json(const HopfElement& x) {
  json a = json::array();
  for (const auto& [k, c] : x.terms) a.push_back({{"coeff", format_rational(c)}, {"graph", class_to_json(k)}});
  return a;
}

HopfElement hopf_from_json(const json& j, const std::string& family) {
  if (!j.is_array()) fail(ErrorCode::Parse, "element must be an array of {coeff, graph}");
  HopfElement x;
  x.family = family;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("graph")) fail(ErrorCode::Parse, "element term needs a 'graph'");
    Rational c = t.contains("coeff") ? parse_rational(t.at("coeff").is_string() ? t.at("coeff").get<std::string>()
                                                                                 : t.at("coeff").dump())
                                     : Rational(1);
    x.add(class_from_json(t.at("graph")), c);
  }
  return x;
}

json tensor_to_json(const TensorElement& t) {
  json a = json::array();
  for (const auto& [k, c] : t.terms) {
    json factors = json::array();
    for (const auto& f : k) factors.push_back(t.family == "category" ? json(f) : class_to_json(f));
    a.push_back({{"coeff", format_rational(c)}, {"factors", factors}});
  }
  return a;
}

}  // namespace hopfflow
