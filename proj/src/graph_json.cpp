#include "hopfflow/graph_json.hpp"

#include <map>

#include "hopfflow/error.hpp"

namespace hopfflow {

using nlohmann::json;

json parse_json_text(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Parse, std::string(what) + ": JSON syntax error at byte " + std::to_string(e.byte) + ": " +
                               e.what());
  }
}

namespace {

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::Parse, std::string("graph: missing field '") + key + "'");
  return j.at(key);
}

std::map<std::string, int> index_of(const std::vector<std::string>& ids, const char* what) {
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!out.emplace(ids[i], static_cast<int>(i)).second)
      fail(ErrorCode::Parse, std::string("graph: duplicate ") + what + " id '" + ids[i] + "'");
  return out;
}

int lookup(const std::map<std::string, int>& m, const std::string& id, const char* what) {
  auto it = m.find(id);
  if (it == m.end()) fail(ErrorCode::Parse, std::string("graph: unknown ") + what + " '" + id + "'");
  return it->second;
}

}  // namespace

DecoratedGraph graph_from_json(const json& j) {
  DecoratedGraph g;
  try {
    g.graph.flag_ids = require(j, "flags").get<std::vector<std::string>>();
    g.graph.vertex_ids = require(j, "vertices").get<std::vector<std::string>>();
  } catch (const json::type_error&) {
    fail(ErrorCode::Parse, "graph: 'flags' and 'vertices' must be arrays of strings");
  }
  auto fidx = index_of(g.graph.flag_ids, "flag");
  auto vidx = index_of(g.graph.vertex_ids, "vertex");
  g.graph.boundary.assign(g.graph.flag_count(), -1);
  g.graph.involution.assign(g.graph.flag_count(), -1);
  g.fit_decoration();
  for (const auto& [f, v] : require(j, "boundary").items()) {
    if (!v.is_string()) fail(ErrorCode::Parse, "graph: boundary of '" + f + "' must be a vertex id");
    g.graph.boundary[lookup(fidx, f, "flag")] = lookup(vidx, v.get<std::string>(), "vertex");
  }
  for (const auto& [f, p] : require(j, "involution").items()) {
    if (!p.is_string()) fail(ErrorCode::Parse, "graph: involution of '" + f + "' must be a flag id");
    g.graph.involution[lookup(fidx, f, "flag")] = lookup(fidx, p.get<std::string>(), "flag");
  }
  if (j.contains("flag_labels")) {
    for (const auto& [f, l] : j.at("flag_labels").items()) {
      auto& label = g.deco.flag_labels[lookup(fidx, f, "flag")];
      if (!l.is_object()) fail(ErrorCode::Parse, "graph: flag label of '" + f + "' must be an object");
      if (l.contains("orient")) {
        auto o = l.at("orient");
        if (o == "in")
          label.orient = Orientation::In;
        else if (o == "out")
          label.orient = Orientation::Out;
        else
          fail(ErrorCode::Parse, "graph: orient of '" + f + "' must be \"in\" or \"out\"");
      }
      if (l.contains("label")) {
        if (!l.at("label").is_string()) fail(ErrorCode::Parse, "graph: label of '" + f + "' must be a string");
        label.label = l.at("label").get<std::string>();
      }
    }
  }
  if (j.contains("vertex_labels")) {
    for (const auto& [v, l] : j.at("vertex_labels").items()) {
      if (!l.is_string()) fail(ErrorCode::Parse, "graph: vertex label of '" + v + "' must be a string");
      g.deco.vertex_labels[lookup(vidx, v, "vertex")] = l.get<std::string>();
    }
  }
  return g;
}

json graph_to_json(const DecoratedGraph& g) {
  json j;
  j["flags"] = g.graph.flag_ids;
  j["vertices"] = g.graph.vertex_ids;
  json boundary = json::object(), involution = json::object();
  for (std::size_t f = 0; f < g.graph.flag_count(); ++f) {
    if (g.graph.boundary[f] >= 0) boundary[g.graph.flag_ids[f]] = g.graph.vertex_ids[g.graph.boundary[f]];
    if (g.graph.involution[f] >= 0) involution[g.graph.flag_ids[f]] = g.graph.flag_ids[g.graph.involution[f]];
  }
  j["boundary"] = boundary;
  j["involution"] = involution;
  json fl = json::object();
  for (std::size_t f = 0; f < g.deco.flag_labels.size() && f < g.graph.flag_count(); ++f) {
    const auto& l = g.deco.flag_labels[f];
    if (!l.orient && !l.label) continue;
    json e = json::object();
    if (l.orient) e["orient"] = *l.orient == Orientation::In ? "in" : "out";
    if (l.label) e["label"] = *l.label;
    fl[g.graph.flag_ids[f]] = e;
  }
  if (!fl.empty()) j["flag_labels"] = fl;
  json vl = json::object();
  for (std::size_t v = 0; v < g.deco.vertex_labels.size() && v < g.graph.vertex_count(); ++v)
    if (g.deco.vertex_labels[v]) vl[g.graph.vertex_ids[v]] = *g.deco.vertex_labels[v];
  if (!vl.empty()) j["vertex_labels"] = vl;
  return j;
}

}  // namespace hopfflow
