#include "hopfflow/hopfflow.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <set>

#include "hopfflow/canonical.hpp"
#include "hopfflow/cuts.hpp"
#include "hopfflow/enumerate.hpp"
#include "hopfflow/error.hpp"
#include "hopfflow/feynman.hpp"
#include "hopfflow/graph_json.hpp"
#include "hopfflow/hopf.hpp"
#include "hopfflow/prim.hpp"
#include "hopfflow/renorm.hpp"
#include "hopfflow/seq.hpp"

using nlohmann::json;
namespace hf = hopfflow;

struct hf_graph {
  hf::DecoratedGraph g;
};
struct hf_model {
  hf::ModelData m;
};
struct hf_chart {
  hf::Flowchart t;
};

namespace {

thread_local std::string last_error;

hf_status status_of(hf::ErrorCode c) {
  switch (c) {
    case hf::ErrorCode::Parse:
      return HF_ERR_PARSE;
    case hf::ErrorCode::Invalid:
      return HF_ERR_INVALID;
    case hf::ErrorCode::Capacity:
      return HF_ERR_CAPACITY;
    case hf::ErrorCode::Argument:
      return HF_ERR_ARGUMENT;
    case hf::ErrorCode::Truncation:
      return HF_ERR_TRUNCATION;
    case hf::ErrorCode::Resource:
      return HF_ERR_RESOURCE;
    case hf::ErrorCode::Undefined:
      return HF_ERR_UNDEFINED;
  }
  return HF_ERR_INTERNAL;
}

template <class F>
hf_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return HF_OK;
  } catch (const hf::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = e.what();
    return HF_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return HF_ERR_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return HF_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) hf::fail(hf::ErrorCode::Argument, std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& j, char** out) {
  need(out, "output pointer");
  *out = dup(j.dump(2) + "\n");
}

json parse(const char* text, const char* what) {
  need(text, what);
  return hf::parse_json_text(text, what);
}

std::string aut_string(const hf::DecoratedGraph& g) { return hf::automorphism_count(g).get_str(); }

json vertex_ids(const hf::DecoratedGraph& g, const std::vector<int>& vs) {
  json a = json::array();
  for (int v : vs) a.push_back(g.graph.vertex_ids[v]);
  return a;
}

std::shared_ptr<hf::GraphHopf> make_hopf(const char* family) {
  std::string tag = family ? family : "oriented";
  hf::GraphFamily fam;
  fam.tag = tag;
  if (tag.rfind("oriented:", 0) == 0) {
    std::string rest = tag.substr(9);
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto end = rest.find(',', start);
      if (end == std::string::npos) end = rest.size();
      if (end > start) fam.alphabet.push_back(rest.substr(start, end - start));
      start = end + 1;
    }
    if (fam.alphabet.empty()) hf::fail(hf::ErrorCode::Argument, "family 'oriented:' needs at least one label");
  } else if (tag != "oriented") {
    hf::fail(hf::ErrorCode::Argument, "unknown graph family '" + tag + "' (oriented | oriented:l1,l2,...)");
  }
  return std::make_shared<hf::GraphHopf>(std::move(fam));
}

hf::HopfElement element_of(const json& j, const std::string& family) {
  if (j.is_array() && !j.empty() && j.front().is_object() && j.front().contains("coeff"))
    return hf::hopf_from_json(j, family);
  if (j.is_array() && !j.empty() && j.front().is_object() && j.front().contains("graph") &&
      !j.front().contains("flags"))
    return hf::hopf_from_json(j, family);
  return hf::basis_key(hf::class_from_json(j), family);
}

hf::Scheme scheme_of(const char* scheme) {
  std::string s = scheme ? scheme : "ms";
  if (s == "ms" || s == "minimal") return hf::Scheme::minimal();
  if (s.rfind("complementary:", 0) == 0) return hf::Scheme::complementary(hf::parse_rational(s.substr(14)));
  hf::fail(hf::ErrorCode::Argument, "unknown scheme '" + s + "' (ms | complementary:z0)");
}

json optional_rational(const std::optional<hf::Rational>& r) {
  return r ? json(hf::format_rational(*r)) : json(nullptr);
}

json timing_json(const hf::DecoratedGraph& g, const std::vector<hf::Rational>& costs) {
  auto total = hf::running_time(g, costs);
  json cuts = json::array();
  for (const auto& c : hf::cut_timing_report(g, costs)) {
    cuts.push_back({{"upper", vertex_ids(g, c.cut.upper)},
                    {"lower", vertex_ids(g, c.cut.lower)},
                    {"proper", c.cut.proper},
                    {"T_upper", hf::format_rational(c.upper.value)},
                    {"T_lower", hf::format_rational(c.lower.value)},
                    {"inequality_holds", c.inequality_holds},
                    {"equality", c.equality}});
  }
  return {{"running_time", hf::format_rational(total.value)}, {"cuts", cuts}};
}

}  // namespace

extern "C" {

const char* hf_version(void) { return "0.1.0"; }

const char* hf_status_name(hf_status s) {
  switch (s) {
    case HF_OK:
      return "ok";
    case HF_ERR_PARSE:
      return "parse error";
    case HF_ERR_INVALID:
      return "invalid input";
    case HF_ERR_CAPACITY:
      return "capacity exceeded";
    case HF_ERR_ARGUMENT:
      return "bad argument";
    case HF_ERR_TRUNCATION:
      return "truncation cap exceeded";
    case HF_ERR_RESOURCE:
      return "resource limit";
    case HF_ERR_UNDEFINED:
      return "undefined value";
    case HF_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* hf_last_error(void) { return last_error.c_str(); }

void hf_string_free(char* s) { std::free(s); }

// -- graphs ------------------------------------------------------------------

hf_status hf_graph_parse(const char* text, hf_graph** out) {
  return guard([&] {
    need(out, "output pointer");
    auto g = std::make_unique<hf_graph>();
    g->g = hf::graph_from_json(parse(text, "graph"));
    *out = g.release();
  });
}

void hf_graph_free(hf_graph* g) { delete g; }

hf_status hf_graph_to_json(const hf_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    emit(hf::graph_to_json(g->g), out);
  });
}

hf_status hf_graph_validate(const hf_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    auto r = hf::validate_decorated(g->g);
    emit({{"ok", r.ok()}, {"violations", r.violations}}, out);
  });
}

hf_status hf_graph_info(const hf_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    auto r = hf::validate_decorated(g->g);
    if (!r.ok()) hf::fail(hf::ErrorCode::Invalid, "invalid graph: " + r.violations.front());
    auto info = hf::canonicalize(g->g);
    auto cls = hf::classify(g->g.graph);
    json j = {{"key", info.key},
              {"automorphisms", info.automorphisms.get_str()},
              {"vertices", g->g.graph.vertex_count()},
              {"edges", g->g.graph.edge_count()},
              {"tails", g->g.graph.tails().size()},
              {"components", cls.components.size()},
              {"connected", cls.connected},
              {"tree", cls.is_tree},
              {"forest", cls.is_forest},
              {"euler_characteristic", hf::euler_characteristic(g->g.graph)},
              {"fully_oriented", g->g.fully_oriented()}};
    if (g->g.fully_oriented()) j["directed"] = hf::is_directed(g->g).directed;
    emit(j, out);
  });
}

hf_status hf_graph_cuts(const hf_graph* g, char** out) {
  return guard([&] {
    need(g, "graph");
    auto r = hf::validate_decorated(g->g);
    if (!r.ok()) hf::fail(hf::ErrorCode::Invalid, "invalid graph: " + r.violations.front());
    json cuts = json::array();
    for (const auto& c : hf::enumerate_cuts(g->g)) {
      auto [up, low] = hf::apply_cut(g->g, c);
      cuts.push_back({{"upper", vertex_ids(g->g, c.upper)},
                      {"lower", vertex_ids(g->g, c.lower)},
                      {"proper", c.proper},
                      {"crossing_edges", hf::crossing_edges(g->g, c)},
                      {"upper_graph", hf::graph_to_json(up)},
                      {"lower_graph", hf::graph_to_json(low)}});
    }
    emit({{"count", cuts.size()}, {"cuts", cuts}}, out);
  });
}

static json classes_json(const std::vector<hf::GraphClass>& cs) {
  json a = json::array();
  for (const auto& c : cs)
    a.push_back({{"key", c.key},
                 {"vertices", c.graph.graph.vertex_count()},
                 {"edges", c.graph.graph.edge_count()},
                 {"flags", c.graph.graph.flag_count()},
                 {"automorphisms", aut_string(c.graph)},
                 {"graph", hf::graph_to_json(c.graph)}});
  return {{"count", cs.size()}, {"classes", a}};
}

hf_status hf_graphs_enumerate(int max_edges, const int* valences, size_t n_valences, int connected, char** out) {
  return guard([&] {
    std::optional<std::set<int>> val;
    if (valences) val = std::set<int>(valences, valences + n_valences);
    auto cs = connected ? hf::enumerate_connected_graphs(max_edges, val) : hf::enumerate_graphs(max_edges, val);
    emit(classes_json(cs), out);
  });
}

hf_status hf_graphs_enumerate_oriented(int max_flags, int connected, char** out) {
  return guard([&] {
    auto cs = connected ? hf::enumerate_connected_oriented_graphs(max_flags) : hf::enumerate_oriented_graphs(max_flags);
    emit(classes_json(cs), out);
  });
}

// -- toy model -----------------------------------------------------------------

hf_status hf_model_parse(const char* text, hf_model** out) {
  return guard([&] {
    need(out, "output pointer");
    auto m = std::make_unique<hf_model>();
    m->m = hf::model_from_json(parse(text, "model"));
    *out = m.release();
  });
}

void hf_model_free(hf_model* m) { delete m; }

hf_status hf_feynman_series(const hf_model* m, int order, const char* method, char** out) {
  return guard([&] {
    need(m, "model");
    if (order < 0) hf::fail(hf::ErrorCode::Argument, "order must be >= 0");
    std::string how = method ? method : "graphs";
    const auto* md = &m->m;
    auto pack = [&](const hf::FormalSeries& s) {
      return json{{"terms", hf::series_to_json(s, md)}, {"text", hf::format_series(s, md)}};
    };
    json j = {{"order", order}, {"method", how}};
    if (how == "graphs") {
      j["series"] = pack(hf::partition_series_graphs(m->m, order));
    } else if (how == "wick") {
      j["series"] = pack(hf::partition_series_wick(m->m, order));
    } else if (how == "connected") {
      j["series"] = pack(hf::connected_series(m->m, order));
    } else if (how == "both") {
      auto a = hf::partition_series_graphs(m->m, order), b = hf::partition_series_wick(m->m, order);
      json diff = json::array();
      for (const auto& d : hf::series_diff(a, b))
        diff.push_back({{"term", hf::format_term(d.term, md)},
                        {"graphs", hf::format_rational(d.left)},
                        {"wick", hf::format_rational(d.right)}});
      j["graphs"] = pack(a);
      j["wick"] = pack(b);
      j["diff"] = diff;
    } else {
      hf::fail(hf::ErrorCode::Argument, "unknown method '" + how + "' (graphs | wick | connected | both)");
    }
    emit(j, out);
  });
}

hf_status hf_feynman_trees(const hf_model* m, int order, char** out) {
  return guard([&] {
    need(m, "model");
    if (order < 0) hf::fail(hf::ErrorCode::Argument, "order must be >= 0");
    const auto* md = &m->m;
    auto trees = hf::tree_series(m->m, order);
    auto phi0 = hf::stationary_point(m->m, order);
    json phi = json::object();
    for (std::size_t a = 0; a < m->m.size(); ++a)
      phi[m->m.colors[a]] = {{"terms", hf::series_to_json(phi0.phi[a], md)},
                             {"text", hf::format_series(phi0.phi[a], md)}};
    json checks = json::array();
    for (auto conv : {hf::LambdaConvention::AtOne, hf::LambdaConvention::Scaled}) {
      auto c = hf::check_tree_identities(m->m, order, conv);
      checks.push_back({{"convention", conv == hf::LambdaConvention::AtOne ? "lambda=1" : "scaled"},
                        {"residual_vanishes", c.residual_vanishes},
                        {"gradient_matches", c.gradient_matches},
                        {"critical_value_matches", c.critical_value_matches},
                        {"tree_lambda_powers", c.tree_lambda_powers}});
    }
    emit({{"order", order},
          {"trees", {{"terms", hf::series_to_json(trees, md)}, {"text", hf::format_series(trees, md)}}},
          {"stationary_point", phi},
          {"checks", checks}},
         out);
  });
}

// -- Hopf algebra ------------------------------------------------------------------

hf_status hf_hopf_coproduct(const char* element, const char* family, int reduced, char** out) {
  return guard([&] {
    auto hopf = make_hopf(family);
    auto x = element_of(parse(element, "element"), hopf->family().tag);
    auto t = reduced ? hopf->reduced_coproduct(x) : hopf->coproduct(x);
    emit({{"family", hopf->family().tag},
          {"reduced", reduced != 0},
          {"terms", t.terms.size()},
          {"coproduct", hf::tensor_to_json(t)}},
         out);
  });
}

hf_status hf_hopf_antipode(const char* element, const char* family, int degree_bound, char** out) {
  return guard([&] {
    auto hopf = make_hopf(family);
    auto x = element_of(parse(element, "element"), hopf->family().tag);
    int bound = degree_bound;
    if (bound < 0) {
      bound = 0;
      for (const auto& [k, c] : x.terms) bound = std::max(bound, hopf->degree(k));
    }
    auto s = hopf->antipode(x, bound);
    emit({{"family", hopf->family().tag},
          {"degree_bound", bound},
          {"terms", s.terms.size()},
          {"antipode", hf::hopf_to_json(s)}},
         out);
  });
}

// -- renormalization ----------------------------------------------------------------

hf_status hf_renorm_birkhoff(const char* character, const char* family, const char* scheme, int degree_bound,
                             char** out) {
  return guard([&] {
    auto hopf = make_hopf(family);
    auto sch = scheme_of(scheme);
    json j = parse(character, "character");
    if (degree_bound >= 0) j["degree_bound"] = degree_bound;
    auto file = hf::character_from_json(j, hopf, sch);
    auto b = hf::birkhoff(file.map);
    json rows = json::array();
    for (const auto& k : file.keys) {
      rows.push_back({{"graph", hf::class_to_json(k)},
                      {"key", k},
                      {"phi", hf::format_laurent(file.map(k))},
                      {"phi_minus", hf::format_laurent(b.minus(k))},
                      {"phi_plus", hf::format_laurent(b.plus(k))},
                      {"regularized", optional_rational(hf::regularized_value(b.plus, k))}});
    }
    auto rep = hf::verify_birkhoff(file.map, b, file.keys);
    emit({{"scheme", sch.name()},
          {"degree_bound", file.degree_bound},
          {"classes", rows},
          {"counterterms", hf::character_to_json(b.minus, file.keys)},
          {"renormalized", hf::character_to_json(b.plus, file.keys)},
          {"checks",
           {{"reconstruction", rep.reconstruction},
            {"plus_regular", rep.plus_regular},
            {"minus_polar", rep.minus_polar},
            {"minus_multiplicative", rep.minus_multiplicative},
            {"plus_multiplicative", rep.plus_multiplicative},
            {"failures", rep.failures}}}},
         out);
  });
}

// -- flowcharts ----------------------------------------------------------------------

hf_status hf_chart_parse(const char* text, hf_chart** out) {
  return guard([&] {
    need(out, "output pointer");
    auto t = std::make_unique<hf_chart>();
    t->t = hf::flowchart_from_json(parse(text, "flowchart"));
    *out = t.release();
  });
}

void hf_chart_free(hf_chart* t) { delete t; }

hf_status hf_chart_to_json(const hf_chart* t, char** out) {
  return guard([&] {
    need(t, "flowchart");
    emit(hf::flowchart_to_json(t->t), out);
  });
}

hf_status hf_chart_validate(const hf_chart* t, char** out) {
  return guard([&] {
    need(t, "flowchart");
    auto r = hf::validate_flowchart(t->t);
    emit({{"ok", r.ok()}, {"violations", r.violations}}, out);
  });
}

hf_status hf_chart_eval(const hf_chart* t, const uint64_t* args, size_t n_args, uint64_t budget, char** out) {
  return guard([&] {
    need(t, "flowchart");
    if (n_args) need(args, "arguments");
    auto r = hf::validate_flowchart(t->t);
    if (!r.ok()) hf::fail(hf::ErrorCode::Invalid, "invalid flowchart: " + r.violations.front());
    hf::Tuple x(args, args + n_args);
    auto y = budget ? hf::evaluate(t->t, x, budget) : hf::evaluate(t->t, x);
    emit(json(y), out);
  });
}

hf_status hf_chart_normalize(const hf_chart* t, hf_chart** out) {
  return guard([&] {
    need(t, "flowchart");
    need(out, "output pointer");
    auto r = hf::validate_flowchart(t->t);
    if (!r.ok()) hf::fail(hf::ErrorCode::Invalid, "invalid flowchart: " + r.violations.front());
    auto n = std::make_unique<hf_chart>();
    n->t = hf::normalize(t->t);
    *out = n.release();
  });
}

hf_status hf_chart_key(const hf_chart* t, char** out) {
  return guard([&] {
    need(t, "flowchart");
    need(out, "output pointer");
    *out = dup(hf::flowchart_key(t->t));
  });
}

hf_status hf_bijectivize(const char* partial_map, char** out) {
  return guard([&] {
    json j = parse(partial_map, "partial map");
    if (!j.is_object() || !j.contains("n") || !j.contains("table"))
      hf::fail(hf::ErrorCode::Parse, "partial map needs 'n' and 'table'");
    hf::PartialMap phi;
    phi.n = j.at("n").get<int>();
    if (phi.n < 0) hf::fail(hf::ErrorCode::Invalid, "n must be >= 0");
    const auto& tab = j.at("table");
    if (!tab.is_array() || static_cast<int>(tab.size()) != phi.n)
      hf::fail(hf::ErrorCode::Invalid, "table must list n values (null or 0 for *)");
    phi.table.assign(phi.n + 1, std::nullopt);
    for (int x = 1; x <= phi.n; ++x) {
      const auto& v = tab[x - 1];
      if (!v.is_null() && v.get<int>() != 0) phi.table[x] = v.get<int>();
    }
    hf::GroupLaw law = hf::GroupLaw::cyclic(phi.n + 1);
    if (j.contains("group") && j.at("group").is_array()) {
      law.add = j.at("group").get<std::vector<std::vector<int>>>();
      auto bad = hf::group_law_violations(law);
      if (!bad.empty()) hf::fail(hf::ErrorCode::Invalid, "group table: " + bad.front());
    } else if (j.contains("group") && j.at("group") != "cyclic") {
      hf::fail(hf::ErrorCode::Argument, "group must be \"cyclic\" or an addition table");
    }
    emit(hf::bijectivized_to_json(hf::bijectivize(hf::totalize(phi), law)), out);
  });
}

// -- sequences ---------------------------------------------------------------------------

hf_status hf_seq_product(const char* f, const char* g, const char* product, char** out) {
  return guard([&] {
    need(product, "product");
    auto a = hf::sequence_from_json(parse(f, "sequence f"));
    auto b = hf::sequence_from_json(parse(g, "sequence g"));
    emit(hf::sequence_to_json(hf::seq_product(a, b, hf::parse_product(product))), out);
  });
}

hf_status hf_seq_sum(const char* f, int prime, char** out) {
  return guard([&] {
    auto a = hf::sequence_from_json(parse(f, "sequence"));
    emit(hf::sequence_to_json(prime ? hf::prime_sum(a) : hf::partial_sum(a)), out);
  });
}

hf_status hf_seq_gamma(const char* poly, int order, char** out) {
  return guard([&] {
    auto p = hf::poly_from_json(parse(poly, "polynomial"));
    int ord = order < 0 ? std::max<int>(0, static_cast<int>(p.size()) - 1) : order;
    auto q = hf::gamma_transform(p, ord);
    emit({{"order", ord},
          {"P", hf::poly_to_json(p)},
          {"Q", hf::poly_to_json(q)},
          {"P_text", hf::format_poly(p)},
          {"Q_text", hf::format_poly(q)}},
         out);
  });
}

hf_status hf_seq_fit(const double* values, size_t n, int degree, char** out) {
  return guard([&] {
    if (n) need(values, "values");
    auto fit = hf::asymptotic_fit(std::vector<double>(values, values + n), degree);
    emit({{"degree", degree},
          {"N", n},
          {"coefficients", fit.coefficients},
          {"window", {fit.window_begin, fit.window_end}},
          {"residual_rms", fit.residual_rms},
          {"residual_max", fit.residual_max},
          {"residual_decay", fit.residual_decay},
          {"condition", fit.condition},
          {"ill_conditioned", fit.ill_conditioned}},
         out);
  });
}

hf_status hf_seq_norm(const char* f, char** out) {
  return guard([&] {
    auto a = hf::sequence_from_json(parse(f, "sequence"));
    emit({{"norm", hf::format_rational(hf::levin_norm(a))}}, out);
  });
}

hf_status hf_seq_constants(int max_zeta, char** out) {
  return guard([&] {
    if (max_zeta < 1) hf::fail(hf::ErrorCode::Argument, "max_zeta must be >= 1");
    json z = json::object();
    for (int k = 2; k <= max_zeta; ++k) z[std::to_string(k)] = hf::zeta_estimate(k);
    emit({{"gamma", hf::euler_gamma_estimate()}, {"zeta", z}}, out);
  });
}

// -- timing -------------------------------------------------------------------------------

hf_status hf_time_chart(const hf_chart* t, const char* costs, char** out) {
  return guard([&] {
    need(t, "flowchart");
    auto r = hf::validate_flowchart(t->t);
    if (!r.ok()) hf::fail(hf::ErrorCode::Invalid, "invalid flowchart: " + r.violations.front());
    hf::Flowchart c = t->t;
    c.derive_orientation();
    auto cs = hf::costs_from_json(parse(costs, "costs"), c.graph.graph);
    emit(timing_json(c.graph, cs), out);
  });
}

hf_status hf_time_graph(const hf_graph* g, const char* costs, char** out) {
  return guard([&] {
    need(g, "graph");
    auto r = hf::validate_decorated(g->g);
    if (!r.ok()) hf::fail(hf::ErrorCode::Invalid, "invalid graph: " + r.violations.front());
    auto cs = hf::costs_from_json(parse(costs, "costs"), g->g.graph);
    emit(timing_json(g->g, cs), out);
  });
}

}  // extern "C"
