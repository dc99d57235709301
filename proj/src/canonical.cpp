#include "hopfflow/canonical.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <tuple>

#include "hopfflow/error.hpp"

namespace hopfflow {

namespace {

bool plain_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '@' || c == '#' || c == '+' ||
         c == '-';
}

std::string escape(std::string_view s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (char c : s) {
    if (plain_char(c)) {
      out.push_back(c);
    } else {
      auto u = static_cast<unsigned char>(c);
      out.push_back('%');
      out.push_back(hex[u >> 4]);
      out.push_back(hex[u & 15]);
    }
  }
  return out;
}

std::string unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size()) {
      out.push_back(static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::string flag_token(const FlagLabel& l) {
  std::string t;
  t.push_back(!l.orient ? '-' : (*l.orient == Orientation::In ? 'i' : 'o'));
  if (l.label) t += "=" + escape(*l.label);
  return t;
}

FlagLabel parse_flag_token(std::string_view t) {
  if (t.empty()) fail(ErrorCode::Parse, "empty flag token in canonical key");
  FlagLabel l;
  if (t[0] == 'i')
    l.orient = Orientation::In;
  else if (t[0] == 'o')
    l.orient = Orientation::Out;
  else if (t[0] != '-')
    fail(ErrorCode::Parse, "bad orientation code in canonical key");
  if (t.size() > 1) {
    if (t[1] != '=') fail(ErrorCode::Parse, "bad flag token in canonical key");
    l.label = unescape(t.substr(2));
  }
  return l;
}

std::string vertex_token(const std::optional<std::string>& l) { return l ? "=" + escape(*l) : "-"; }

struct Edge {
  int u, v;
  int tu, tv;  // token ids
};

// Vertex-level view of one connected component.
struct Component {
  int n = 0;
  std::vector<std::string> tokens;                // interned flag tokens, sorted
  std::vector<std::string> block;                 // per vertex: label + tails + loops
  std::vector<Edge> edges;                        // non-loop edges
  std::vector<std::vector<std::pair<int, std::pair<int, int>>>> adj;  // (nbr, (my token, their token))
  Integer kernel = 1;                              // automorphisms fixing every vertex
};

Component build_component(const DecoratedGraph& g) {
  Component c;
  c.n = static_cast<int>(g.graph.vertex_count());
  const auto& lab = g.deco.flag_labels;
  auto label_of = [&](int f) { return lab.empty() ? FlagLabel{} : lab[f]; };
  std::vector<std::string> ftok(g.graph.flag_count());
  for (std::size_t f = 0; f < ftok.size(); ++f) ftok[f] = flag_token(label_of(static_cast<int>(f)));
  c.tokens = ftok;
  std::sort(c.tokens.begin(), c.tokens.end());
  c.tokens.erase(std::unique(c.tokens.begin(), c.tokens.end()), c.tokens.end());
  auto tid = [&](int f) {
    return static_cast<int>(std::lower_bound(c.tokens.begin(), c.tokens.end(), ftok[f]) - c.tokens.begin());
  };

  std::vector<std::vector<std::string>> tails(c.n), loops(c.n);
  std::map<std::tuple<int, int, std::string, std::string>, int> edge_groups;
  for (std::size_t f = 0; f < g.graph.flag_count(); ++f) {
    int fi = static_cast<int>(f);
    int p = g.graph.involution[f];
    int v = g.graph.boundary[f];
    if (p == fi) {
      tails[v].push_back(ftok[f]);
    } else if (p > fi) {
      int w = g.graph.boundary[p];
      if (w == v) {
        auto a = ftok[f], b = ftok[p];
        if (b < a) std::swap(a, b);
        loops[v].push_back(a + "~" + b);
      } else {
        int tu = tid(fi), tv = tid(p);
        c.edges.push_back({v, w, tu, tv});
        if (v < w)
          ++edge_groups[{v, w, ftok[f], ftok[p]}];
        else
          ++edge_groups[{w, v, ftok[p], ftok[f]}];
      }
    }
  }
  c.adj.assign(c.n, {});
  for (const auto& e : c.edges) {
    c.adj[e.u].push_back({e.v, {e.tu, e.tv}});
    c.adj[e.v].push_back({e.u, {e.tv, e.tu}});
  }
  auto count_runs = [&](std::vector<std::string>& items, bool loop_items) {
    std::sort(items.begin(), items.end());
    for (std::size_t i = 0; i < items.size();) {
      std::size_t j = i;
      while (j < items.size() && items[j] == items[i]) ++j;
      c.kernel *= factorial(static_cast<unsigned>(j - i)).get_num();
      if (loop_items) {
        auto tilde = items[i].find('~');
        if (items[i].compare(0, tilde, items[i], tilde + 1) == 0) c.kernel <<= static_cast<unsigned>(j - i);
      }
      i = j;
    }
  };
  c.block.resize(c.n);
  for (int v = 0; v < c.n; ++v) {
    count_runs(tails[v], false);
    count_runs(loops[v], true);
    std::string b = "[" + vertex_token(g.deco.vertex_labels.empty() ? std::nullopt : g.deco.vertex_labels[v]) + "/";
    for (std::size_t i = 0; i < tails[v].size(); ++i) b += (i ? "," : "") + tails[v][i];
    b += "/";
    for (std::size_t i = 0; i < loops[v].size(); ++i) b += (i ? "," : "") + loops[v][i];
    b += "]";
    c.block[v] = std::move(b);
  }
  for (const auto& [k, m] : edge_groups) c.kernel *= factorial(static_cast<unsigned>(m)).get_num();
  return c;
}

using Colors = std::vector<int>;

int class_count(const Colors& col) {
  if (col.empty()) return 0;
  return *std::max_element(col.begin(), col.end()) + 1;
}

// Ordered equitable refinement: colors stay ranks, and the relative order of
// existing cells is preserved.
void refine(const Component& c, Colors& col) {
  using Sig = std::pair<int, std::vector<std::tuple<int, int, int>>>;
  while (true) {
    std::vector<Sig> sig(c.n);
    for (int v = 0; v < c.n; ++v) {
      sig[v].first = col[v];
      for (const auto& [w, toks] : c.adj[v]) sig[v].second.emplace_back(col[w], toks.first, toks.second);
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    std::vector<Sig> distinct = sig;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    int before = class_count(col);
    for (int v = 0; v < c.n; ++v)
      col[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), sig[v]) - distinct.begin());
    if (static_cast<int>(distinct.size()) == before) return;
  }
}

std::string encode(const Component& c, const Colors& pos) {
  std::vector<int> order(c.n);
  for (int v = 0; v < c.n; ++v) order[pos[v]] = v;
  std::string out = "{" + std::to_string(c.n) + "|";
  for (int p = 0; p < c.n; ++p) out += c.block[order[p]];
  out += "|";
  std::vector<std::tuple<int, int, int, int>> es;
  es.reserve(c.edges.size());
  for (const auto& e : c.edges) {
    int p = pos[e.u], q = pos[e.v];
    if (p < q)
      es.emplace_back(p, q, e.tu, e.tv);
    else
      es.emplace_back(q, p, e.tv, e.tu);
  }
  std::sort(es.begin(), es.end());
  for (std::size_t i = 0; i < es.size(); ++i) {
    auto [p, q, a, b] = es[i];
    if (i) out += ";";
    out += std::to_string(p) + ":" + std::to_string(q) + ":" + c.tokens[a] + "~" + c.tokens[b];
  }
  out += "}";
  return out;
}

struct SearchState {
  std::string best;
  long long best_count = 0;
};

void search(const Component& c, Colors col, SearchState& st) {
  refine(c, col);
  int k = class_count(col);
  if (k == c.n) {
    std::string e = encode(c, col);
    if (st.best_count == 0 || e < st.best) {
      st.best = std::move(e);
      st.best_count = 1;
    } else if (e == st.best) {
      ++st.best_count;
    }
    return;
  }
  std::vector<int> size(k, 0);
  for (int x : col) ++size[x];
  int target = 0;
  while (size[target] == 1) ++target;
  for (int v = 0; v < c.n; ++v) {
    if (col[v] != target) continue;
    Colors next(c.n);
    for (int w = 0; w < c.n; ++w) next[w] = 2 * col[w] + (w == v ? 0 : 1);
    // compress to ranks
    Colors sorted = next;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int w = 0; w < c.n; ++w)
      next[w] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), next[w]) - sorted.begin());
    search(c, std::move(next), st);
  }
}

std::pair<std::string, Integer> canonical_component(const DecoratedGraph& g) {
  Component c = build_component(g);
  std::vector<std::string> distinct = c.block;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  Colors col(c.n);
  for (int v = 0; v < c.n; ++v)
    col[v] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), c.block[v]) - distinct.begin());
  SearchState st;
  search(c, std::move(col), st);
  return {st.best, c.kernel * Integer(static_cast<long>(st.best_count))};
}

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

CanonicalInfo canonicalize(const DecoratedGraph& g) {
  CanonicalInfo info;
  info.automorphisms = 1;
  std::map<std::string, std::pair<int, Integer>> classes;
  for (const auto& comp : connected_components(g)) {
    auto [key, aut] = canonical_component(comp);
    auto& entry = classes[key];
    ++entry.first;
    entry.second = aut;
    info.component_keys.push_back(std::move(key));
  }
  for (const auto& [key, entry] : classes) {
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), entry.second.get_mpz_t(), static_cast<unsigned long>(entry.first));
    info.automorphisms *= p * factorial(static_cast<unsigned>(entry.first)).get_num();
  }
  std::sort(info.component_keys.begin(), info.component_keys.end());
  for (const auto& k : info.component_keys) info.key += k;
  return info;
}

std::string canonical_form(const DecoratedGraph& g) { return canonicalize(g).key; }

Integer automorphism_count(const DecoratedGraph& g) { return canonicalize(g).automorphisms; }

std::vector<std::string> split_key(std::string_view key) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < key.size()) {
    if (key[i] != '{') fail(ErrorCode::Parse, "malformed canonical key");
    auto close = key.find('}', i);
    if (close == std::string_view::npos) fail(ErrorCode::Parse, "unterminated component in canonical key");
    out.emplace_back(key.substr(i, close - i + 1));
    i = close + 1;
  }
  return out;
}

std::string join_keys(std::vector<std::string> component_keys) {
  std::sort(component_keys.begin(), component_keys.end());
  std::string out;
  for (const auto& k : component_keys) out += k;
  return out;
}

std::string merge_keys(std::string_view a, std::string_view b) {
  auto ka = split_key(a);
  auto kb = split_key(b);
  ka.insert(ka.end(), kb.begin(), kb.end());
  return join_keys(std::move(ka));
}

DecoratedGraph graph_from_key(std::string_view key) {
  GraphBuilder b;
  int fcount = 0;
  auto next_flag = [&](int v, const FlagLabel& l) { return b.flag("f" + std::to_string(fcount++), v, l); };
  int vbase = 0;
  for (const auto& comp : split_key(key)) {
    std::string_view body(comp);
    body = body.substr(1, body.size() - 2);
    auto bar1 = body.find('|');
    auto bar2 = body.find('|', bar1 + 1);
    if (bar1 == std::string_view::npos || bar2 == std::string_view::npos)
      fail(ErrorCode::Parse, "malformed component key");
    int n = std::stoi(std::string(body.substr(0, bar1)));
    std::string_view blocks = body.substr(bar1 + 1, bar2 - bar1 - 1);
    std::string_view edges = body.substr(bar2 + 1);
    std::size_t i = 0;
    for (int p = 0; p < n; ++p) {
      if (i >= blocks.size() || blocks[i] != '[') fail(ErrorCode::Parse, "malformed vertex block");
      auto close = blocks.find(']', i);
      auto parts = split_list(blocks.substr(i + 1, close - i - 1), '/');
      if (parts.size() != 3) fail(ErrorCode::Parse, "malformed vertex block");
      std::optional<std::string> vl;
      if (parts[0] != "-") vl = unescape(std::string_view(parts[0]).substr(1));
      int v = b.vertex("v" + std::to_string(vbase + p), vl);
      for (const auto& t : split_list(parts[1], ',')) next_flag(v, parse_flag_token(t));
      for (const auto& lp : split_list(parts[2], ',')) {
        auto tilde = lp.find('~');
        int f1 = next_flag(v, parse_flag_token(std::string_view(lp).substr(0, tilde)));
        int f2 = next_flag(v, parse_flag_token(std::string_view(lp).substr(tilde + 1)));
        b.join(f1, f2);
      }
      i = close + 1;
    }
    for (const auto& e : split_list(edges, ';')) {
      auto c1 = e.find(':');
      auto c2 = e.find(':', c1 + 1);
      auto tilde = e.find('~', c2 + 1);
      int p = std::stoi(e.substr(0, c1));
      int q = std::stoi(e.substr(c1 + 1, c2 - c1 - 1));
      int f1 = next_flag(vbase + p, parse_flag_token(std::string_view(e).substr(c2 + 1, tilde - c2 - 1)));
      int f2 = next_flag(vbase + q, parse_flag_token(std::string_view(e).substr(tilde + 1)));
      b.join(f1, f2);
    }
    vbase += n;
  }
  return b.build();
}

}  // namespace hopfflow
