// Command line front end; talks to the library only through the C interface.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hopfflow/hopfflow.h"

using nlohmann::json;

namespace {

constexpr int kValidation = 1;
constexpr int kUsage = 2;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{kUsage, msg}; }

void check(hf_status s) {
  if (s == HF_OK) return;
  throw Failure{s == HF_ERR_ARGUMENT ? kUsage : kValidation,
                std::string(hf_status_name(s)) + ": " + hf_last_error()};
}

std::string read_file(const std::string& path) {
  if (path.empty()) usage("missing input file");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kValidation, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  hf_string_free(s);
  return out;
}

template <class F>
json call_json(F&& f) {
  char* out = nullptr;
  check(f(&out));
  return json::parse(take(out));
}

struct GraphHandle {
  hf_graph* g = nullptr;
  explicit GraphHandle(const std::string& path) { check(hf_graph_parse(read_file(path).c_str(), &g)); }
  ~GraphHandle() { hf_graph_free(g); }
};

struct ChartHandle {
  hf_chart* t = nullptr;
  ChartHandle() = default;
  explicit ChartHandle(const std::string& path) { check(hf_chart_parse(read_file(path).c_str(), &t)); }
  ~ChartHandle() { hf_chart_free(t); }
};

struct ModelHandle {
  hf_model* m = nullptr;
  explicit ModelHandle(const std::string& path) { check(hf_model_parse(read_file(path).c_str(), &m)); }
  ~ModelHandle() { hf_model_free(m); }
};

// Indented "key: value" rendering for human output.
void render(std::ostream& os, const json& j, int indent = 0) {
  std::string pad(indent, ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const json& v) {
    if (!v.is_array()) return false;
    for (const auto& e : v)
      if (e.is_structured()) return false;
    return true;
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !flat(v)) {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      } else if (flat(v)) {
        os << pad << k << ": " << v.dump() << "\n";
      } else {
        os << pad << k << ": " << scalar(v) << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_structured() && !flat(v)) {
        os << pad << "-\n";
        render(os, v, indent + 2);
      } else {
        os << pad << "- " << (flat(v) ? v.dump() : scalar(v)) << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

double number_of(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) throw Failure{kValidation, "sequence entries must be numbers or rational strings"};
  std::string s = v.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return std::stod(s);
    return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
  } catch (const std::exception&) {
    throw Failure{kValidation, "bad sequence entry '" + s + "'"};
  }
}

std::vector<uint64_t> parse_args(const std::string& text) {
  std::vector<uint64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      usage("--args must be a comma-separated list of non-negative integers");
    out.push_back(std::stoull(part));
  }
  return out;
}

std::string seq_text(const json& s) {
  std::string out = "(";
  bool first = true;
  for (const auto& v : s.at("values")) {
    if (!first) out += ", ";
    first = false;
    out += v.is_string() ? v.get<std::string>() : v.dump();
  }
  return out + ")";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph Hopf algebras, flowcharts, renormalization and sequence regularization"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable JSON output");
  app.set_version_flag("--version", std::string(hf_version()));

  std::string in, model, character, costs, args_text, method = "graphs", family = "oriented", scheme = "ms";
  std::string product = "maxconv", f_path, g_path, generator, poly;
  int max_edges = -1, max_flags = -1, order = 0, degree = -1, fit_degree = 1, zeta_max = 4;
  long length = 0;
  std::vector<int> valences;
  bool connected = false, reduced = false, prime = false;
  uint64_t budget = 0;

  auto* graphs = app.add_subcommand("graphs", "Graph enumeration, automorphisms and cuts");
  graphs->require_subcommand(1);
  auto* g_enum = graphs->add_subcommand("enumerate", "List isomorphism classes");
  g_enum->add_option("--max-edges", max_edges, "Tail-free undirected graphs with at most N edges");
  g_enum->add_option("--max-flags", max_flags, "Fully oriented graphs with at most N flags");
  g_enum->add_option("--valence", valences, "Allowed vertex valences")->delimiter(',');
  g_enum->add_flag("--connected", connected, "Connected classes only");
  auto* g_aut = graphs->add_subcommand("aut", "Canonical key and automorphism count");
  g_aut->add_option("--in", in, "Graph file")->required();
  auto* g_val = graphs->add_subcommand("validate", "Check the graph invariants");
  g_val->add_option("--in", in, "Graph file")->required();
  auto* g_cuts = graphs->add_subcommand("cuts", "Enumerate cuts of an oriented graph");
  g_cuts->add_option("--in", in, "Graph file")->required();

  auto* feyn = app.add_subcommand("feynman", "Toy-model series");
  feyn->require_subcommand(1);
  auto* f_series = feyn->add_subcommand("series", "Partition function to a coupling weight");
  f_series->add_option("--model", model, "Model file")->required();
  f_series->add_option("--order", order, "Coupling weight bound")->required();
  f_series->add_option("--method", method, "graphs | wick | connected | both")
      ->check(CLI::IsMember({"graphs", "wick", "connected", "both"}));
  auto* f_trees = feyn->add_subcommand("trees", "Tree sum and the stationary point");
  f_trees->add_option("--model", model, "Model file")->required();
  f_trees->add_option("--order", order, "Coupling weight bound")->required();

  auto* hopf = app.add_subcommand("hopf", "Coproduct and antipode of oriented graphs");
  hopf->require_subcommand(1);
  auto* h_co = hopf->add_subcommand("coproduct", "Cut coproduct");
  auto* h_anti = hopf->add_subcommand("antipode", "Recursive antipode");
  for (auto* sc : {h_co, h_anti}) {
    sc->add_option("--in", in, "Graph, product of graphs, or element file")->required();
    sc->add_option("--family", family, "oriented | oriented:l1,l2,...");
  }
  h_co->add_flag("--reduced", reduced, "Drop the primitive terms");
  h_co->add_option("--degree", degree, "Ignored; accepted for symmetry with antipode");
  h_anti->add_option("--degree", degree, "Degree bound (default: degree of the input)");

  auto* renorm = app.add_subcommand("renorm", "Birkhoff decomposition of characters");
  renorm->require_subcommand(1);
  auto* r_bk = renorm->add_subcommand("birkhoff", "phi = phi_-^{*-1} * phi_+");
  r_bk->add_option("--hopf-family", family, "oriented | oriented:l1,l2,...");
  r_bk->add_option("--character", character, "Character file")->required();
  r_bk->add_option("--degree", degree, "Degree bound (default: from the file)");
  r_bk->add_option("--scheme", scheme, "ms | complementary:z0");

  auto* prim = app.add_subcommand("prim", "Prim flowcharts");
  prim->require_subcommand(1);
  auto* p_eval = prim->add_subcommand("eval", "Evaluate a closed flowchart");
  p_eval->add_option("--in", in, "Flowchart file")->required();
  p_eval->add_option("--args", args_text, "Comma-separated arguments")->required();
  p_eval->add_option("--budget", budget, "Step budget (default 10^7)");
  auto* p_norm = prim->add_subcommand("normalize", "Normal form of a flowchart");
  p_norm->add_option("--in", in, "Flowchart file")->required();
  auto* p_val = prim->add_subcommand("validate", "Check the flowchart conditions");
  p_val->add_option("--in", in, "Flowchart file")->required();
  auto* p_key = prim->add_subcommand("key", "Canonical key of the decorated graph");
  p_key->add_option("--in", in, "Flowchart file")->required();
  auto* p_bij = prim->add_subcommand("bijectivize", "Total map and permutation of a finite partial map");
  p_bij->add_option("--in", in, "Partial map file {\"n\", \"table\"}")->required();

  auto* seq = app.add_subcommand("seq", "Sequence algebras and regularization");
  seq->require_subcommand(1);
  auto* s_prod = seq->add_subcommand("product", "Product of two sequences");
  s_prod->add_option("--f", f_path, "First sequence")->required();
  s_prod->add_option("--g", g_path, "Second sequence")->required();
  s_prod->add_option("--product", product, "pointwise | maxconv | cauchy")
      ->check(CLI::IsMember({"pointwise", "maxconv", "cauchy"}));
  auto* s_sum = seq->add_subcommand("sum", "Partial sums");
  s_sum->add_option("--in", in, "Sequence file")->required();
  s_sum->add_flag("--prime", prime, "Shifted sum over n <= N + 1");
  auto* s_gamma = seq->add_subcommand("gamma", "Q = Gamma(1 + d/dt) P");
  s_gamma->add_option("--poly", poly, "Polynomial file")->required();
  s_gamma->add_option("--order", order, "Derivatives kept (default deg P)")->default_val(-1);
  auto* s_fit = seq->add_subcommand("fit", "Fit S(f)_N by a polynomial in log N");
  auto* fit_in = s_fit->add_option("--in", in, "Sequence file");
  auto* fit_gen = s_fit->add_option("--generator", generator, "harmonic | inverse-square | delta")
                      ->check(CLI::IsMember({"harmonic", "inverse-square", "delta"}));
  fit_in->excludes(fit_gen);
  s_fit->add_option("--length", length, "Generated length N")->check(CLI::PositiveNumber);
  s_fit->add_option("--degree", fit_degree, "Polynomial degree")->check(CLI::NonNegativeNumber);
  auto* s_norm = seq->add_subcommand("norm", "max_r r * #{n : f_n >= r}");
  s_norm->add_option("--in", in, "Sequence file")->required();
  auto* s_const = seq->add_subcommand("constants", "Numeric gamma and zeta(k) by Euler-Maclaurin");
  s_const->add_option("--max-zeta", zeta_max, "Largest k")->check(CLI::Range(2, 64));

  auto* timing = app.add_subcommand("time", "Max-plus running times");
  timing->require_subcommand(1);
  auto* t_chart = timing->add_subcommand("flowchart", "Running time of a flowchart");
  auto* t_graph = timing->add_subcommand("graph", "Running time of an oriented graph");
  for (auto* sc : {t_chart, t_graph}) {
    sc->add_option("--in", in, "Input file")->required();
    sc->add_option("--costs", costs, "Vertex cost file")->required();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  auto print = [&](const json& j) {
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      render(std::cout, j);
  };

  try {
    if (*g_enum) {
      if ((max_edges < 0) == (max_flags < 0)) usage("give exactly one of --max-edges or --max-flags");
      json j;
      if (max_edges >= 0) {
        j = call_json([&](char** o) {
          return hf_graphs_enumerate(max_edges, valences.empty() ? nullptr : valences.data(), valences.size(),
                                     connected, o);
        });
      } else {
        if (!valences.empty()) usage("--valence applies to --max-edges only");
        j = call_json([&](char** o) { return hf_graphs_enumerate_oriented(max_flags, connected, o); });
      }
      if (as_json) {
        print(j);
      } else {
        std::cout << j["count"].get<std::size_t>() << " classes\n";
        std::size_t i = 0;
        for (const auto& c : j["classes"])
          std::cout << i++ << ": V=" << c["vertices"] << " E=" << c["edges"] << " |Aut|=" << c["automorphisms"].get<std::string>()
                    << " key=" << c["key"].get<std::string>() << "\n";
      }
    } else if (*g_aut) {
      GraphHandle g(in);
      print(call_json([&](char** o) { return hf_graph_info(g.g, o); }));
    } else if (*g_val) {
      GraphHandle g(in);
      auto j = call_json([&](char** o) { return hf_graph_validate(g.g, o); });
      print(j);
      if (!j["ok"].get<bool>()) return kValidation;
    } else if (*g_cuts) {
      GraphHandle g(in);
      auto j = call_json([&](char** o) { return hf_graph_cuts(g.g, o); });
      if (as_json) {
        print(j);
      } else {
        std::cout << j["count"] << " cuts\n";
        for (const auto& c : j["cuts"])
          std::cout << (c["proper"].get<bool>() ? "proper   " : "improper ") << "upper=" << c["upper"].dump()
                    << " lower=" << c["lower"].dump() << " crossing=" << c["crossing_edges"] << "\n";
      }
    } else if (*f_series) {
      ModelHandle m(model);
      auto j = call_json([&](char** o) { return hf_feynman_series(m.m, order, method.c_str(), o); });
      if (as_json) {
        print(j);
      } else if (method == "both") {
        std::cout << "[graphs]\n" << j["graphs"]["text"].get<std::string>() << "\n";
        std::cout << "[wick]\n" << j["wick"]["text"].get<std::string>() << "\n";
        if (j["diff"].empty()) std::cout << "diff: empty\n";
        for (const auto& d : j["diff"])
          std::cout << "diff: " << d["term"].get<std::string>() << " graphs " << d["graphs"].get<std::string>()
                    << " wick " << d["wick"].get<std::string>() << "\n";
      } else {
        std::cout << j["series"]["text"].get<std::string>() << "\n";
      }
      if (method == "both" && !j["diff"].empty()) return kValidation;
    } else if (*f_trees) {
      ModelHandle m(model);
      auto j = call_json([&](char** o) { return hf_feynman_trees(m.m, order, o); });
      if (as_json) {
        print(j);
      } else {
        std::cout << "[trees]\n" << j["trees"]["text"].get<std::string>() << "\n";
        for (const auto& [color, s] : j["stationary_point"].items())
          std::cout << "[phi0 " << color << "]\n" << s["text"].get<std::string>() << "\n";
        render(std::cout, json{{"checks", j["checks"]}});
      }
    } else if (*h_co || *h_anti) {
      auto text = read_file(in);
      auto j = call_json([&](char** o) {
        return *h_co ? hf_hopf_coproduct(text.c_str(), family.c_str(), reduced, o)
                     : hf_hopf_antipode(text.c_str(), family.c_str(), degree, o);
      });
      print(j);
    } else if (*r_bk) {
      auto text = read_file(character);
      auto j = call_json(
          [&](char** o) { return hf_renorm_birkhoff(text.c_str(), family.c_str(), scheme.c_str(), degree, o); });
      if (as_json) {
        print(j);
      } else {
        std::cout << "scheme: " << j["scheme"].get<std::string>() << "\n";
        for (const auto& r : j["classes"]) {
          std::cout << r["key"].get<std::string>() << "\n  phi   = " << r["phi"].get<std::string>()
                    << "\n  phi_- = " << r["phi_minus"].get<std::string>()
                    << "\n  phi_+ = " << r["phi_plus"].get<std::string>()
                    << "\n  value = " << (r["regularized"].is_null() ? "undefined" : r["regularized"].get<std::string>())
                    << "\n";
        }
        render(std::cout, json{{"checks", j["checks"]}});
      }
      if (!j["checks"]["failures"].empty()) return kValidation;
    } else if (*p_eval) {
      ChartHandle t(in);
      auto x = parse_args(args_text);
      auto j = call_json([&](char** o) { return hf_chart_eval(t.t, x.data(), x.size(), budget, o); });
      if (as_json) {
        print(j);
      } else {
        std::string line;
        for (const auto& v : j) line += (line.empty() ? "" : ",") + v.dump();
        std::cout << line << "\n";
      }
    } else if (*p_norm) {
      ChartHandle t(in);
      ChartHandle n;
      check(hf_chart_normalize(t.t, &n.t));
      std::cout << call_json([&](char** o) { return hf_chart_to_json(n.t, o); }).dump(2) << "\n";
    } else if (*p_val) {
      ChartHandle t(in);
      auto j = call_json([&](char** o) { return hf_chart_validate(t.t, o); });
      print(j);
      if (!j["ok"].get<bool>()) return kValidation;
    } else if (*p_key) {
      ChartHandle t(in);
      char* out = nullptr;
      check(hf_chart_key(t.t, &out));
      std::string key = take(out);
      if (as_json)
        print(json{{"key", key}});
      else
        std::cout << key << "\n";
    } else if (*p_bij) {
      auto text = read_file(in);
      print(call_json([&](char** o) { return hf_bijectivize(text.c_str(), o); }));
    } else if (*s_prod) {
      auto a = read_file(f_path), b = read_file(g_path);
      auto j = call_json([&](char** o) { return hf_seq_product(a.c_str(), b.c_str(), product.c_str(), o); });
      as_json ? print(j) : void(std::cout << seq_text(j) << "\n");
    } else if (*s_sum) {
      auto a = read_file(in);
      auto j = call_json([&](char** o) { return hf_seq_sum(a.c_str(), prime, o); });
      as_json ? print(j) : void(std::cout << seq_text(j) << "\n");
    } else if (*s_gamma) {
      auto p = read_file(poly);
      auto j = call_json([&](char** o) { return hf_seq_gamma(p.c_str(), order, o); });
      if (as_json)
        print(j);
      else
        std::cout << "P(t) = " << j["P_text"].get<std::string>() << "\nQ(t) = " << j["Q_text"].get<std::string>()
                  << "\n";
    } else if (*s_fit) {
      std::vector<double> values;
      if (!in.empty()) {
        auto j = json::parse(read_file(in), nullptr, false);
        if (j.is_discarded()) throw Failure{kValidation, "parse error: '" + in + "' is not JSON"};
        const json& vs = j.is_object() ? j.value("values", json::array()) : j;
        if (!vs.is_array()) throw Failure{kValidation, "sequence values must be an array"};
        for (const auto& v : vs) values.push_back(number_of(v));
      } else if (!generator.empty()) {
        if (length <= 0) usage("--generator needs --length");
        values.resize(static_cast<std::size_t>(length));
        for (long n = 1; n <= length; ++n) {
          double x = static_cast<double>(n);
          values[n - 1] = generator == "harmonic" ? 1 / x : generator == "inverse-square" ? 1 / (x * x) : n == 1;
        }
      } else {
        usage("give --in or --generator");
      }
      print(call_json([&](char** o) { return hf_seq_fit(values.data(), values.size(), fit_degree, o); }));
    } else if (*s_norm) {
      auto a = read_file(in);
      auto j = call_json([&](char** o) { return hf_seq_norm(a.c_str(), o); });
      as_json ? print(j) : void(std::cout << j["norm"].get<std::string>() << "\n");
    } else if (*s_const) {
      print(call_json([&](char** o) { return hf_seq_constants(zeta_max, o); }));
    } else if (*t_chart || *t_graph) {
      auto c = read_file(costs);
      json j;
      if (*t_chart) {
        ChartHandle t(in);
        j = call_json([&](char** o) { return hf_time_chart(t.t, c.c_str(), o); });
      } else {
        GraphHandle g(in);
        j = call_json([&](char** o) { return hf_time_graph(g.g, c.c_str(), o); });
      }
      if (as_json) {
        print(j);
      } else {
        std::cout << "running time: " << j["running_time"].get<std::string>() << "\n";
        for (const auto& r : j["cuts"])
          std::cout << "cut upper=" << r["upper"].dump() << " lower=" << r["lower"].dump() << " T^C="
                    << r["T_upper"].get<std::string>() << " T_C=" << r["T_lower"].get<std::string>()
                    << (r["equality"].get<bool>() ? " equal" : r["inequality_holds"].get<bool>() ? " strict" : " VIOLATED")
                    << "\n";
      }
    }
  } catch (const Failure& f) {
    std::cerr << "hopfflow: " << f.message << "\n";
    return f.code;
  } catch (const json::exception& e) {
    std::cerr << "hopfflow: " << e.what() << "\n";
    return kValidation;
  }
  return 0;
}
