#include "hopfflow/prim.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "hopfflow/canonical.hpp"
#include "hopfflow/error.hpp"
#include "hopfflow/graph_json.hpp"

namespace hopfflow {

using nlohmann::json;

std::string BasicFunction::name() const {
  switch (kind) {
    case Kind::Succ:
      return "succ";
    case Kind::Proj:
      return "proj(" + std::to_string(i) + "/" + std::to_string(n) + ")";
    case Kind::Const:
      return "const(" + std::to_string(k) + "/" + std::to_string(n) + ")";
  }
  return "?";
}

void Budget::spend() {
  if (remaining == 0) fail(ErrorCode::Resource, "evaluation step budget exhausted");
  --remaining;
}

Tuple Fn::operator()(const Tuple& x, Budget& b) const {
  if (static_cast<int>(x.size()) != arity)
    fail(ErrorCode::Argument, "function of arity " + std::to_string(arity) + " applied to " +
                                  std::to_string(x.size()) + " arguments");
  for (Value v : x)
    if (v == 0) fail(ErrorCode::Argument, "argument 0 lies outside the positive integers");
  Tuple y = call(x, b);
  if (static_cast<int>(y.size()) != coarity) fail(ErrorCode::Argument, "function returned the wrong coarity");
  for (Value v : y)
    if (v == 0) fail(ErrorCode::Argument, "function value 0 lies outside the positive integers");
  return y;
}

Fn basic_fn(const BasicFunction& f) {
  Fn out;
  out.arity = f.arity();
  out.coarity = 1;
  switch (f.kind) {
    case BasicFunction::Kind::Succ:
      out.call = [](const Tuple& x, Budget& b) {
        b.spend();
        if (x[0] == std::numeric_limits<Value>::max()) fail(ErrorCode::Resource, "successor overflows 64 bits");
        return Tuple{x[0] + 1};
      };
      break;
    case BasicFunction::Kind::Proj:
      if (f.i < 1 || f.i > f.n) fail(ErrorCode::Invalid, "projection index out of range");
      out.call = [i = f.i](const Tuple& x, Budget& b) {
        b.spend();
        return Tuple{x[i - 1]};
      };
      break;
    case BasicFunction::Kind::Const:
      if (f.k == 0) fail(ErrorCode::Invalid, "constant must be a positive integer");
      if (f.n < 0) fail(ErrorCode::Invalid, "negative arity");
      out.call = [k = f.k](const Tuple&, Budget& b) {
        b.spend();
        return Tuple{k};
      };
      break;
  }
  return out;
}

Fn compose_fns(const std::vector<Fn>& fs) {
  if (fs.empty()) fail(ErrorCode::Invalid, "composition of an empty family");
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (fs[i - 1].coarity != fs[i].arity) fail(ErrorCode::Invalid, "composition chain arities do not match");
  Fn out;
  out.arity = fs.front().arity;
  out.coarity = fs.back().coarity;
  out.call = [fs](const Tuple& x, Budget& b) {
    Tuple y = x;
    for (const auto& f : fs) y = f(y, b);
    return y;
  };
  return out;
}

Fn bracket_fns(const std::vector<Fn>& fs) {
  if (fs.empty()) fail(ErrorCode::Invalid, "bracket of an empty family");
  Fn out;
  out.arity = fs.front().arity;
  out.coarity = 0;
  for (const auto& f : fs) {
    if (f.arity != out.arity) fail(ErrorCode::Invalid, "bracket inputs have different arities");
    out.coarity += f.coarity;
  }
  out.call = [fs](const Tuple& x, Budget& b) {
    Tuple y;
    for (const auto& f : fs) {
      auto part = f(x, b);
      y.insert(y.end(), part.begin(), part.end());
    }
    return y;
  };
  return out;
}

Fn recurse_fns(const Fn& f1, const Fn& f2) {
  if (f2.arity != f1.arity + f1.coarity || f2.coarity != f1.coarity)
    fail(ErrorCode::Invalid, "recursion step has arity/coarity incompatible with the base");
  Fn out;
  out.arity = f1.arity + 1;
  out.coarity = f1.coarity;
  out.call = [f1, f2](const Tuple& xk, Budget& b) {
    Tuple x(xk.begin(), xk.end() - 1);
    Value k = xk.back();
    Tuple y = f1(x, b);
    for (Value j = 1; j < k; ++j) {
      b.spend();
      Tuple arg = x;
      arg.insert(arg.end(), y.begin(), y.end());
      y = f2(arg, b);
    }
    return y;
  };
  return out;
}

Fn product_fns(const std::vector<Fn>& fs) {
  Fn out;
  for (const auto& f : fs) {
    out.arity += f.arity;
    out.coarity += f.coarity;
  }
  out.call = [fs](const Tuple& x, Budget& b) {
    Tuple y;
    std::size_t at = 0;
    for (const auto& f : fs) {
      Tuple part(x.begin() + static_cast<long>(at), x.begin() + static_cast<long>(at + f.arity));
      at += f.arity;
      auto r = f(part, b);
      y.insert(y.end(), r.begin(), r.end());
    }
    return y;
  };
  return out;
}

bool Flowchart::closed() const {
  for (int f : global_inputs())
    if (!basics.count(f)) return false;
  return true;
}

std::vector<int> Flowchart::output_flags() const {
  const auto& g = graph.graph;
  std::vector<int> out(g.vertex_count(), -1);
  auto by_vertex = g.flags_by_vertex();
  std::vector<int> queue;
  for (int r : roots) {
    if (r < 0 || static_cast<std::size_t>(r) >= g.flag_count()) continue;
    int v = g.boundary[r];
    if (v < 0 || out[v] != -1) continue;
    out[v] = r;
    queue.push_back(v);
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    int v = queue[i];
    for (int f : by_vertex[v]) {
      if (f == out[v] || g.is_tail(f)) continue;
      int q = g.involution[f];
      int w = g.boundary[q];
      if (out[w] != -1) continue;
      out[w] = q;
      queue.push_back(w);
    }
  }
  return out;
}

std::vector<int> Flowchart::global_inputs() const {
  std::vector<int> out;
  std::set<int> rs(roots.begin(), roots.end());
  for (int f : graph.graph.tails())
    if (!rs.count(f)) out.push_back(f);
  return out;
}

std::pair<int, int> Flowchart::root_arity() const {
  std::pair<int, int> total{0, 0};
  for (int r : roots) {
    total.first += arity[r].first;
    total.second += arity[r].second;
  }
  return total;
}

void Flowchart::derive_orientation() {
  graph.fit_decoration();
  auto out = output_flags();
  std::set<int> outs(out.begin(), out.end());
  for (std::size_t f = 0; f < graph.graph.flag_count(); ++f)
    graph.deco.flag_labels[f].orient = outs.count(static_cast<int>(f)) ? Orientation::Out : Orientation::In;
}

ValidationReport validate_flowchart(const Flowchart& t) {
  ValidationReport r = validate_graph(t.graph.graph);
  if (!r.ok()) return r;
  const auto& g = t.graph.graph;
  const auto& fid = g.flag_ids;
  const auto& vid = g.vertex_ids;
  auto add = [&](std::string s) { r.violations.push_back(std::move(s)); };
  if (t.arity.size() != g.flag_count()) add("arity table does not cover every flag");
  if (t.ops.size() != g.vertex_count()) add("operator table does not cover every vertex");
  if (!r.ok()) return r;

  auto cls = classify(g);
  if (!cls.is_forest) add("underlying graph is not a forest");
  if (g.vertex_count() == 0) add("flowchart has no vertices");
  auto by_vertex = g.flags_by_vertex();
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (by_vertex[v].size() < 2) add("vertex '" + vid[v] + "' is the boundary of fewer than two flags");
    char op = t.ops[v];
    if (op != 'c' && op != 'b' && op != 'r') add("vertex '" + vid[v] + "' has operator '" + std::string(1, op) + "'");
  }
  auto comp = component_of_vertices(g);
  std::vector<int> roots_in(cls.components.size(), 0);
  for (int rt : t.roots) {
    if (rt < 0 || static_cast<std::size_t>(rt) >= g.flag_count()) {
      add("root refers to a missing flag");
      continue;
    }
    if (!g.is_tail(rt)) add("root '" + fid[rt] + "' is not a tail");
    ++roots_in[comp[g.boundary[rt]]];
  }
  for (std::size_t c = 0; c < roots_in.size(); ++c)
    if (roots_in[c] != 1)
      add("component containing vertex '" + vid[cls.components[c][0]] + "' has " + std::to_string(roots_in[c]) +
          " roots (exactly one required)");
  if (!r.ok()) return r;

  std::vector<int> inputs_in(cls.components.size(), 0);
  for (int f : t.global_inputs()) ++inputs_in[comp[g.boundary[f]]];
  for (std::size_t c = 0; c < inputs_in.size(); ++c)
    if (inputs_in[c] == 0) add("component containing vertex '" + vid[cls.components[c][0]] + "' has no global input");

  for (auto [a, b] : g.edges())
    if (t.arity[a] != t.arity[b]) add("edge {" + fid[a] + "," + fid[b] + "} has different arities on its halves");

  auto out = t.output_flags();
  for (std::size_t f = 0; f < g.flag_count(); ++f) {
    const auto& o = t.graph.deco.flag_labels.size() == g.flag_count() ? t.graph.deco.flag_labels[f].orient
                                                                       : std::optional<Orientation>{};
    if (!o) continue;
    bool is_out = out[g.boundary[f]] == static_cast<int>(f);
    if ((*o == Orientation::Out) != is_out) add("orientation of flag '" + fid[f] + "' disagrees with the root");
  }

  auto fmt = [](std::pair<int, int> p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; };
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> inputs;
    for (int f : by_vertex[v])
      if (f != out[v]) inputs.push_back(f);
    auto it = t.input_order.find(static_cast<int>(v));
    std::vector<int> order = it == t.input_order.end() ? std::vector<int>{} : it->second;
    auto so = order, si = inputs;
    std::sort(so.begin(), so.end());
    std::sort(si.begin(), si.end());
    if (so != si) {
      add("input order of vertex '" + vid[v] + "' is not a total order on its inputs");
      continue;
    }
    if (order.empty()) continue;
    auto o = t.arity[out[v]];
    const std::string at = "vertex '" + vid[v] + "'";
    switch (t.ops[v]) {
      case 'c': {
        for (std::size_t i = 1; i < order.size(); ++i)
          if (t.arity[order[i - 1]].second != t.arity[order[i]].first)
            add("c-" + at + ": coarity of input " + std::to_string(i) + " differs from arity of input " +
                std::to_string(i + 1));
        std::pair<int, int> want{t.arity[order.front()].first, t.arity[order.back()].second};
        if (o != want) add("c-" + at + ": output " + fmt(o) + ", expected " + fmt(want));
        break;
      }
      case 'b': {
        int a = t.arity[order.front()].first, c = 0;
        for (int f : order) {
          if (t.arity[f].first != a) add("b-" + at + ": inputs have different arities");
          c += t.arity[f].second;
        }
        if (o != std::make_pair(a, c)) add("b-" + at + ": output " + fmt(o) + ", expected " + fmt({a, c}));
        break;
      }
      case 'r': {
        if (order.size() != 2) {
          add("r-" + at + ": needs exactly two local inputs, has " + std::to_string(order.size()));
          break;
        }
        auto [a, c] = t.arity[order[0]];
        if (t.arity[order[1]] != std::make_pair(a + c, c))
          add("r-" + at + ": second input " + fmt(t.arity[order[1]]) + ", expected " + fmt({a + c, c}));
        if (o != std::make_pair(a + 1, c)) add("r-" + at + ": output " + fmt(o) + ", expected " + fmt({a + 1, c}));
        break;
      }
      default:
        break;
    }
  }
  for (std::size_t f = 0; f < g.flag_count(); ++f)
    if (t.arity[f].first < 0 || t.arity[f].second < 1) add("flag '" + fid[f] + "' has an invalid arity/coarity");

  std::set<int> ins;
  for (int f : t.global_inputs()) ins.insert(f);
  for (const auto& [f, b] : t.basics) {
    if (!ins.count(f)) {
      add("basic function attached to '" + fid[f] + "', which is not a global input");
      continue;
    }
    if (t.arity[f] != std::make_pair(b.arity(), b.coarity()))
      add("basic " + b.name() + " on '" + fid[f] + "' does not match arity " + fmt(t.arity[f]));
    if (b.kind == BasicFunction::Kind::Proj && (b.i < 1 || b.i > b.n)) add("projection index out of range on '" + fid[f] + "'");
    if (b.kind == BasicFunction::Kind::Const && b.k == 0) add("constant 0 on '" + fid[f] + "' is not positive");
  }
  return r;
}

namespace {

void require_valid(const Flowchart& t) {
  auto r = validate_flowchart(t);
  if (!r.ok()) fail(ErrorCode::Invalid, "invalid flowchart: " + r.violations.front());
}

}  // namespace

Fn op_apply(const Flowchart& t, const std::map<int, Fn>& inputs) {
  require_valid(t);
  const auto& g = t.graph.graph;
  auto out = t.output_flags();
  std::function<Fn(int)> build = [&](int v) -> Fn {
    std::vector<Fn> fs;
    for (int f : t.input_order.at(v)) {
      Fn fn;
      if (g.is_tail(f)) {
        if (auto it = inputs.find(f); it != inputs.end())
          fn = it->second;
        else if (auto b = t.basics.find(f); b != t.basics.end())
          fn = basic_fn(b->second);
        else
          fail(ErrorCode::Argument, "global input '" + g.flag_ids[f] + "' has no function");
        if (std::make_pair(fn.arity, fn.coarity) != t.arity[f])
          fail(ErrorCode::Argument, "function on '" + g.flag_ids[f] + "' has the wrong arity/coarity");
      } else {
        fn = build(g.boundary[g.involution[f]]);
      }
      fs.push_back(std::move(fn));
    }
    switch (t.ops[v]) {
      case 'c':
        return compose_fns(fs);
      case 'b':
        return bracket_fns(fs);
      default:
        return recurse_fns(fs[0], fs[1]);
    }
  };
  std::vector<Fn> parts;
  for (int r : t.roots) parts.push_back(build(g.boundary[r]));
  return parts.size() == 1 ? parts.front() : product_fns(parts);
}

Tuple evaluate(const Flowchart& t, const Tuple& args, std::uint64_t step_budget) {
  if (!t.closed()) fail(ErrorCode::Argument, "flowchart has undecorated global inputs");
  Fn f = op_apply(t);
  Budget b{step_budget};
  return f(args, b);
}

// -- builder ---------------------------------------------------------------

int FlowchartBuilder::vertex(char op, std::pair<int, int> out_arity) {
  auto& g = t_.graph.graph;
  int v = static_cast<int>(g.vertex_ids.size());
  g.vertex_ids.push_back("v" + std::to_string(v));
  t_.graph.deco.vertex_labels.emplace_back();
  t_.ops.push_back(op);
  int f = static_cast<int>(g.flag_ids.size());
  g.flag_ids.push_back("v" + std::to_string(v) + ".o");
  g.boundary.push_back(v);
  g.involution.push_back(f);
  t_.graph.deco.flag_labels.emplace_back();
  t_.arity.push_back(out_arity);
  t_.input_order[v];
  out_.push_back(f);
  return v;
}

int FlowchartBuilder::input(int v, std::pair<int, int> arity, std::optional<BasicFunction> basic) {
  auto& g = t_.graph.graph;
  int f = static_cast<int>(g.flag_ids.size());
  g.flag_ids.push_back("v" + std::to_string(v) + ".i" + std::to_string(t_.input_order[v].size()));
  g.boundary.push_back(v);
  g.involution.push_back(f);
  t_.graph.deco.flag_labels.emplace_back();
  t_.arity.push_back(arity);
  t_.input_order[v].push_back(f);
  if (basic) t_.basics[f] = *basic;
  return f;
}

void FlowchartBuilder::graft(int slot, int child) {
  auto& g = t_.graph.graph;
  int o = out_.at(child);
  if (!g.is_tail(slot) || !g.is_tail(o)) fail(ErrorCode::Invalid, "graft needs two free tails");
  g.involution[slot] = o;
  g.involution[o] = slot;
  t_.basics.erase(slot);
}

Flowchart FlowchartBuilder::build() const {
  Flowchart t = t_;
  t.roots.clear();
  t.component_names.clear();
  for (int o : out_)
    if (t.graph.graph.is_tail(o)) {
      t.component_names.push_back("t" + std::to_string(t.roots.size()));
      t.roots.push_back(o);
    }
  t.derive_orientation();
  return t;
}

// -- composition and normal forms -------------------------------------------

namespace {

// Appends `src` with identifiers prefixed; returns (flag offset, vertex offset).
std::pair<int, int> append_chart(Flowchart& dst, const Flowchart& src, const std::string& prefix) {
  auto& g = dst.graph.graph;
  const auto& s = src.graph.graph;
  int f0 = static_cast<int>(g.flag_count()), v0 = static_cast<int>(g.vertex_count());
  for (std::size_t v = 0; v < s.vertex_count(); ++v) {
    g.vertex_ids.push_back(prefix + s.vertex_ids[v]);
    dst.graph.deco.vertex_labels.push_back(src.graph.deco.vertex_labels.size() > v ? src.graph.deco.vertex_labels[v]
                                                                                   : std::nullopt);
    dst.ops.push_back(src.ops[v]);
  }
  for (std::size_t f = 0; f < s.flag_count(); ++f) {
    g.flag_ids.push_back(prefix + s.flag_ids[f]);
    g.boundary.push_back(s.boundary[f] + v0);
    g.involution.push_back(s.involution[f] + f0);
    dst.graph.deco.flag_labels.push_back(src.graph.deco.flag_labels.size() > f ? src.graph.deco.flag_labels[f]
                                                                               : FlagLabel{});
    dst.arity.push_back(src.arity[f]);
  }
  for (const auto& [v, order] : src.input_order) {
    auto& o = dst.input_order[v + v0];
    for (int f : order) o.push_back(f + f0);
  }
  for (const auto& [f, b] : src.basics) dst.basics[f + f0] = b;
  return {f0, v0};
}

// Drops the given flags and vertices and renumbers every table.
Flowchart remove_elements(Flowchart t, const std::set<int>& flags, const std::set<int>& vertices) {
  t.graph.fit_decoration();
  const auto& g = t.graph.graph;
  std::vector<int> fmap(g.flag_count(), -1), vmap(g.vertex_count(), -1);
  Flowchart out;
  auto& h = out.graph.graph;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (vertices.count(static_cast<int>(v))) continue;
    vmap[v] = static_cast<int>(h.vertex_ids.size());
    h.vertex_ids.push_back(g.vertex_ids[v]);
    out.graph.deco.vertex_labels.push_back(t.graph.deco.vertex_labels[v]);
    out.ops.push_back(t.ops[v]);
  }
  for (std::size_t f = 0; f < g.flag_count(); ++f) {
    if (flags.count(static_cast<int>(f))) continue;
    fmap[f] = static_cast<int>(h.flag_ids.size());
    h.flag_ids.push_back(g.flag_ids[f]);
    out.graph.deco.flag_labels.push_back(t.graph.deco.flag_labels[f]);
    out.arity.push_back(t.arity[f]);
  }
  for (std::size_t f = 0; f < g.flag_count(); ++f) {
    if (fmap[f] < 0) continue;
    h.boundary.push_back(vmap[g.boundary[f]]);
    h.involution.push_back(fmap[g.involution[f]]);
  }
  for (const auto& [v, order] : t.input_order) {
    if (vmap[v] < 0) continue;
    auto& o = out.input_order[vmap[v]];
    for (int f : order) o.push_back(fmap[f]);
  }
  for (const auto& [f, b] : t.basics)
    if (fmap[f] >= 0) out.basics[fmap[f]] = b;
  for (int r : t.roots) out.roots.push_back(fmap[r]);
  out.component_names = t.component_names;
  return out;
}

}  // namespace

Flowchart compose_programs(const std::vector<Flowchart>& parts) {
  if (parts.empty()) fail(ErrorCode::Argument, "nothing to compose");
  for (const auto& p : parts) {
    require_valid(p);
    if (p.roots.size() != 1) fail(ErrorCode::Argument, "composed parts must be connected");
  }
  for (std::size_t i = 1; i < parts.size(); ++i)
    if (parts[i - 1].root_arity().second != parts[i].root_arity().first)
      fail(ErrorCode::Argument, "coarity of part " + std::to_string(i) + " differs from the arity of part " +
                                    std::to_string(i + 1));
  Flowchart t;
  std::vector<int> roots;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto [f0, v0] = append_chart(t, parts[i], "s" + std::to_string(i) + ".");
    roots.push_back(parts[i].roots[0] + f0);
  }
  auto& g = t.graph.graph;
  int v = static_cast<int>(g.vertex_count());
  g.vertex_ids.push_back("comp");
  t.graph.deco.vertex_labels.emplace_back();
  t.ops.push_back('c');
  auto new_flag = [&](const std::string& id, std::pair<int, int> ar) {
    int f = static_cast<int>(g.flag_count());
    g.flag_ids.push_back(id);
    g.boundary.push_back(v);
    g.involution.push_back(f);
    t.graph.deco.flag_labels.emplace_back();
    t.arity.push_back(ar);
    return f;
  };
  int out = new_flag("comp.o", {parts.front().root_arity().first, parts.back().root_arity().second});
  for (std::size_t i = 0; i < roots.size(); ++i) {
    int in = new_flag("comp.i" + std::to_string(i), t.arity[roots[i]]);
    g.involution[in] = roots[i];
    g.involution[roots[i]] = in;
    t.input_order[v].push_back(in);
  }
  t.roots = {out};
  t.component_names = {"t0"};
  t.derive_orientation();
  return t;
}

Flowchart normalize(const Flowchart& input) {
  require_valid(input);
  Flowchart t = input;
  while (true) {
    const auto& g = t.graph.graph;
    auto out = t.output_flags();
    int child = -1;
    for (std::size_t w = 0; w < g.vertex_count() && child < 0; ++w) {
      int q = out[w];
      if (g.is_tail(q)) continue;
      int parent = g.boundary[g.involution[q]];
      if (t.ops[w] == t.ops[parent] && (t.ops[w] == 'c' || t.ops[w] == 'b')) child = static_cast<int>(w);
    }
    if (child < 0) break;
    int q = out[child];
    int p = g.involution[q];
    int parent = g.boundary[p];
    auto& order = t.input_order[parent];
    auto pos = std::find(order.begin(), order.end(), p);
    const auto& inner = t.input_order[child];
    pos = order.erase(pos);
    order.insert(pos, inner.begin(), inner.end());
    for (int f : inner) t.graph.graph.boundary[f] = parent;
    t.input_order.erase(child);
    t = remove_elements(t, {p, q}, {child});
  }
  t.derive_orientation();
  return t;
}

DecoratedGraph flowchart_graph(const Flowchart& input) {
  Flowchart t = input;
  t.derive_orientation();
  DecoratedGraph d = t.graph;
  std::set<int> roots(t.roots.begin(), t.roots.end());
  std::map<int, int> position;
  for (const auto& [v, order] : t.input_order)
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
  for (std::size_t f = 0; f < d.graph.flag_count(); ++f) {
    std::string l = std::to_string(t.arity[f].first) + "," + std::to_string(t.arity[f].second);
    int fi = static_cast<int>(f);
    if (roots.count(fi)) l += ";root";
    if (auto it = position.find(fi); it != position.end()) l += ";#" + std::to_string(it->second);
    if (auto it = t.basics.find(fi); it != t.basics.end()) l += ";" + it->second.name();
    d.deco.flag_labels[f].label = l;
  }
  for (std::size_t v = 0; v < d.graph.vertex_count(); ++v) d.deco.vertex_labels[v] = std::string(1, t.ops[v]);
  return d;
}

std::string flowchart_key(const Flowchart& t) { return canonical_form(flowchart_graph(t)); }

// -- JSON ------------------------------------------------------------------

namespace {

int flag_index(const Flowchart& t, const std::string& id) {
  const auto& ids = t.graph.graph.flag_ids;
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) fail(ErrorCode::Parse, "flowchart: unknown flag '" + id + "'");
  return static_cast<int>(it - ids.begin());
}

int vertex_index(const Flowchart& t, const std::string& id) {
  const auto& ids = t.graph.graph.vertex_ids;
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) fail(ErrorCode::Parse, "flowchart: unknown vertex '" + id + "'");
  return static_cast<int>(it - ids.begin());
}

BasicFunction basic_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) fail(ErrorCode::Parse, "basic function needs a 'kind'");
  auto kind = j.at("kind").get<std::string>();
  BasicFunction b;
  if (kind == "succ") return BasicFunction::succ();
  if (kind == "proj") {
    b.kind = BasicFunction::Kind::Proj;
    b.i = j.value("i", 1);
    b.n = j.value("n", 1);
    return b;
  }
  if (kind == "const") {
    b.kind = BasicFunction::Kind::Const;
    b.k = j.value("k", 1);
    b.n = j.value("n", 1);
    return b;
  }
  fail(ErrorCode::Parse, "unknown basic function kind '" + kind + "'");
}

json basic_to_json(const BasicFunction& b) {
  switch (b.kind) {
    case BasicFunction::Kind::Succ:
      return {{"kind", "succ"}};
    case BasicFunction::Kind::Proj:
      return {{"kind", "proj"}, {"i", b.i}, {"n", b.n}};
    case BasicFunction::Kind::Const:
      return {{"kind", "const"}, {"k", b.k}, {"n", b.n}};
  }
  return {};
}

}  // namespace

Flowchart flowchart_from_json(const json& j) {
  Flowchart t;
  t.graph = graph_from_json(j);
  try {
    if (!j.contains("roots")) fail(ErrorCode::Parse, "flowchart: missing 'roots'");
    const auto& roots = j.at("roots");
    if (roots.is_array()) {
      for (std::size_t i = 0; i < roots.size(); ++i) {
        t.component_names.push_back("t" + std::to_string(i));
        t.roots.push_back(flag_index(t, roots[i].get<std::string>()));
      }
    } else {
      std::vector<std::string> order;
      if (j.contains("component_order"))
        order = j.at("component_order").get<std::vector<std::string>>();
      else
        for (const auto& [k, v] : roots.items()) order.push_back(k);
      if (order.size() != roots.size()) fail(ErrorCode::Parse, "flowchart: component_order does not list every root");
      for (const auto& name : order) {
        if (!roots.contains(name)) fail(ErrorCode::Parse, "flowchart: component '" + name + "' has no root");
        t.component_names.push_back(name);
        t.roots.push_back(flag_index(t, roots.at(name).get<std::string>()));
      }
    }
    t.arity.assign(t.graph.graph.flag_count(), {-1, -1});
    if (j.contains("arity"))
      for (const auto& [f, a] : j.at("arity").items()) {
        if (!a.is_array() || a.size() != 2) fail(ErrorCode::Parse, "flowchart: arity of '" + f + "' must be [a, c]");
        t.arity[flag_index(t, f)] = {a[0].get<int>(), a[1].get<int>()};
      }
    t.ops.assign(t.graph.graph.vertex_count(), '?');
    if (j.contains("ops"))
      for (const auto& [v, op] : j.at("ops").items()) {
        auto s = op.get<std::string>();
        t.ops[vertex_index(t, v)] = s.size() == 1 ? s[0] : '?';
      }
    if (j.contains("input_order"))
      for (const auto& [v, fl] : j.at("input_order").items()) {
        auto& o = t.input_order[vertex_index(t, v)];
        for (const auto& f : fl) o.push_back(flag_index(t, f.get<std::string>()));
      }
    if (j.contains("basics"))
      for (const auto& [f, b] : j.at("basics").items()) t.basics[flag_index(t, f)] = basic_from_json(b);
  } catch (const json::exception& e) {
    fail(ErrorCode::Parse, std::string("flowchart: ") + e.what());
  }
  return t;
}

json flowchart_to_json(const Flowchart& t) {
  json j = graph_to_json(t.graph);
  const auto& fid = t.graph.graph.flag_ids;
  const auto& vid = t.graph.graph.vertex_ids;
  json roots = json::object();
  for (std::size_t i = 0; i < t.roots.size(); ++i) roots[t.component_names[i]] = fid[t.roots[i]];
  j["roots"] = roots;
  j["component_order"] = t.component_names;
  json order = json::object();
  for (const auto& [v, fl] : t.input_order) {
    json a = json::array();
    for (int f : fl) a.push_back(fid[f]);
    order[vid[v]] = a;
  }
  j["input_order"] = order;
  json ar = json::object();
  for (std::size_t f = 0; f < fid.size(); ++f) ar[fid[f]] = {t.arity[f].first, t.arity[f].second};
  j["arity"] = ar;
  json ops = json::object();
  for (std::size_t v = 0; v < vid.size(); ++v) ops[vid[v]] = std::string(1, t.ops[v]);
  j["ops"] = ops;
  json basics = json::object();
  for (const auto& [f, b] : t.basics) basics[fid[f]] = basic_to_json(b);
  j["basics"] = basics;
  return j;
}

// -- pointed sets ----------------------------------------------------------

PointedMap totalize(const PartialMap& phi) {
  if (static_cast<int>(phi.table.size()) != phi.n + 1) fail(ErrorCode::Invalid, "partial map table has wrong size");
  PointedMap f;
  f.n = phi.n;
  f.table.assign(phi.n + 1, 0);
  for (int x = 1; x <= phi.n; ++x)
    if (phi.table[x]) {
      int y = *phi.table[x];
      if (y < 1 || y > phi.n) fail(ErrorCode::Invalid, "partial map value outside the carrier");
      f.table[x] = y;
    }
  return f;
}

GroupLaw GroupLaw::cyclic(int order) {
  GroupLaw g;
  g.add.assign(order, std::vector<int>(order));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) g.add[a][b] = (a + b) % order;
  return g;
}

int GroupLaw::neg(int x) const {
  for (std::size_t y = 0; y < add.size(); ++y)
    if (add[x][y] == 0) return static_cast<int>(y);
  fail(ErrorCode::Invalid, "element without inverse");
}

std::vector<std::string> group_law_violations(const GroupLaw& g) {
  std::vector<std::string> out;
  const int n = static_cast<int>(g.add.size());
  if (n == 0) return {"empty carrier"};
  for (const auto& row : g.add)
    if (static_cast<int>(row.size()) != n) return {"addition table is not square"};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.add[a][b] < 0 || g.add[a][b] >= n) return {"addition table leaves the carrier"};
  for (int a = 0; a < n; ++a)
    if (g.add[0][a] != a || g.add[a][0] != a) {
      out.push_back("* is not neutral for " + std::to_string(a));
      break;
    }
  for (int a = 0; a < n && out.size() < 8; ++a)
    for (int b = 0; b < n; ++b) {
      if (g.add[a][b] != g.add[b][a]) {
        out.push_back("not commutative at (" + std::to_string(a) + "," + std::to_string(b) + ")");
        break;
      }
      bool assoc = true;
      for (int c = 0; c < n; ++c)
        if (g.add[g.add[a][b]][c] != g.add[a][g.add[b][c]]) assoc = false;
      if (!assoc) {
        out.push_back("not associative at (" + std::to_string(a) + "," + std::to_string(b) + ",.)");
        break;
      }
    }
  for (int a = 0; a < n; ++a)
    if (std::none_of(g.add[a].begin(), g.add[a].end(), [](int s) { return s == 0; })) {
      out.push_back(std::to_string(a) + " has no inverse");
      break;
    }
  return out;
}

Bijectivized bijectivize(const PointedMap& f, const GroupLaw& g) {
  auto bad = group_law_violations(g);
  if (!bad.empty()) fail(ErrorCode::Invalid, "not an abelian group law with zero *: " + bad.front());
  const int n = f.n;
  if (static_cast<int>(g.add.size()) != n + 1) fail(ErrorCode::Invalid, "group carrier differs from the map carrier");
  if (static_cast<int>(f.table.size()) != n + 1 || f.table[0] != 0)
    fail(ErrorCode::Invalid, "pointed map must send * to *");
  Bijectivized r;
  r.n = n;
  for (int y = 1; y <= n; ++y)
    if (f.table[y] != 0) r.domain.push_back(y);
  std::set<int> dom(r.domain.begin(), r.domain.end());
  auto in_dg = [&](const Point& p) { return p.second == 0 || dom.count(p.second) > 0; };

  std::set<Point> targets;
  r.inverse_formula_holds = true;
  r.restriction_computable = true;
  r.domain_invariant = true;
  for (int x = 0; x <= n; ++x)
    for (int y = 0; y <= n; ++y) {
      Point p{x, y};
      Point q{g.add[x][f.table[y]], y};
      r.image[p] = q;
      targets.insert(q);
      Point back{g.add[q.first][g.neg(f.table[q.second])], q.second};
      if (back != p) r.inverse_formula_holds = false;
      if (q == p) r.fixed_points.push_back(p);
      if (f.table[y] == 0) r.predicted_fixed_points.push_back(p);
      if (in_dg(p)) {
        // only phi's table on D(phi) and the group law are consulted here
        Point from_phi = y == 0 ? Point{x, 0} : Point{g.add[x][f.table[y]], y};
        if (from_phi != q) r.restriction_computable = false;
        if (!in_dg(q)) r.domain_invariant = false;
      }
    }
  r.is_permutation = targets.size() == r.image.size();
  for (const auto& [p, q] : r.image) r.inverse[q] = p;
  bool all_outside_fixed = true;
  for (const auto& p : r.fixed_points) (in_dg(p) ? r.fixed_in_domain : r.fixed_outside_domain).push_back(p);
  for (const auto& [p, q] : r.image)
    if (!in_dg(p) && p != q) all_outside_fixed = false;
  r.complement_all_fixed = all_outside_fixed;
  r.unique_fixed_point_in_domain = r.fixed_in_domain == std::vector<Point>{{0, 0}};
  if (!r.unique_fixed_point_in_domain) {
    r.discrepancy = "restriction to D(g) has " + std::to_string(r.fixed_in_domain.size()) +
                    " fixed points, not only (*,*): every (x,*) is fixed because f(*) = * is the zero";
  }
  return r;
}

json bijectivized_to_json(const Bijectivized& b) {
  auto pts = [](const std::vector<Point>& ps) {
    json a = json::array();
    for (auto [x, y] : ps) a.push_back({x, y});
    return a;
  };
  json perm = json::array();
  for (const auto& [p, q] : b.image) perm.push_back({{p.first, p.second}, {q.first, q.second}});
  return {{"n", b.n},
          {"permutation", perm},
          {"is_permutation", b.is_permutation},
          {"inverse_formula_holds", b.inverse_formula_holds},
          {"domain", b.domain},
          {"restriction_computable", b.restriction_computable},
          {"domain_invariant", b.domain_invariant},
          {"fixed_points", pts(b.fixed_points)},
          {"predicted_fixed_points", pts(b.predicted_fixed_points)},
          {"fixed_in_domain", pts(b.fixed_in_domain)},
          {"fixed_outside_domain", pts(b.fixed_outside_domain)},
          {"complement_all_fixed", b.complement_all_fixed},
          {"unique_fixed_point_in_domain", b.unique_fixed_point_in_domain},
          {"discrepancy", b.discrepancy}};
}

}  // namespace hopfflow
