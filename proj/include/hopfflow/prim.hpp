#pragma once

// Prim flowcharts: decorated oriented forests whose vertices compose (c),
// bracket (b) or recurse (r) the functions attached to their inputs, plus the
// finite pointed-set reductions of partial maps to total maps to permutations.

#include <json.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfflow/graph.hpp"

namespace hopfflow {

using Value = std::uint64_t;
using Tuple = std::vector<Value>;

struct BasicFunction {
  enum class Kind { Succ, Proj, Const };
  Kind kind = Kind::Succ;
  int i = 1;  // projection index, 1-based
  int n = 1;  // arity of proj / const
  Value k = 1;  // constant value

  int arity() const { return kind == Kind::Succ ? 1 : n; }
  int coarity() const { return 1; }
  std::string name() const;

  static BasicFunction succ() { return {}; }
  static BasicFunction proj(int i, int n) { return {Kind::Proj, i, n, 1}; }
  static BasicFunction constant(Value k, int n) { return {Kind::Const, 1, n, k}; }
};

/// Guards evaluation: every basic call and recursion step costs one unit.
struct Budget {
  std::uint64_t remaining = 10'000'000;
  void spend();
};

struct Fn {
  int arity = 0;
  int coarity = 0;
  std::function<Tuple(const Tuple&, Budget&)> call;

  Tuple operator()(const Tuple& x, Budget& b) const;
};

Fn basic_fn(const BasicFunction& f);
Fn compose_fns(const std::vector<Fn>& fs);  // f_r o ... o f_1
Fn bracket_fns(const std::vector<Fn>& fs);  // <f_1, ..., f_r>
Fn recurse_fns(const Fn& f1, const Fn& f2);
Fn product_fns(const std::vector<Fn>& fs);  // componentwise on concatenated arguments

struct Flowchart {
  DecoratedGraph graph;
  std::vector<int> roots;  // root tail per component, in component order
  std::vector<std::string> component_names;
  std::map<int, std::vector<int>> input_order;        // vertex -> local inputs
  std::vector<std::pair<int, int>> arity;             // flag -> (a, c)
  std::vector<char> ops;                              // vertex -> 'c' | 'b' | 'r'
  std::map<int, BasicFunction> basics;                // global input -> basic

  bool closed() const;
  /// Sets every flag orientation from the roots (inputs "in", outputs "out").
  void derive_orientation();
  /// Local output flag of each vertex; -1 where it cannot be determined.
  std::vector<int> output_flags() const;
  std::vector<int> global_inputs() const;
  std::pair<int, int> root_arity() const;
};

ValidationReport validate_flowchart(const Flowchart& t);

/// Op(t) applied to functions on the global inputs (missing entries fall back
/// to the basic decoration).  Several components act componentwise.
Fn op_apply(const Flowchart& t, const std::map<int, Fn>& inputs = {});
Tuple evaluate(const Flowchart& t, const Tuple& args, std::uint64_t step_budget = 10'000'000);

/// Grafts a fresh c-corolla onto the roots; part i is applied i-th.
Flowchart compose_programs(const std::vector<Flowchart>& parts);
/// Contracts every c-c and b-b edge; idempotent.
Flowchart normalize(const Flowchart& t);

/// Decorated graph carrying op, arity, input position, root and basic labels.
DecoratedGraph flowchart_graph(const Flowchart& t);
std::string flowchart_key(const Flowchart& t);

Flowchart flowchart_from_json(const nlohmann::json& j);
nlohmann::json flowchart_to_json(const Flowchart& t);

/// Small builder: corollas and grafting by the tail returned from add_input.
class FlowchartBuilder {
 public:
  /// New vertex with an output flag of the given arity; returns the vertex.
  int vertex(char op, std::pair<int, int> out_arity);
  /// Adds the next local input of v; returns the input flag.
  int input(int v, std::pair<int, int> arity, std::optional<BasicFunction> basic = std::nullopt);
  /// Connects the output of `child` to the input flag `slot` (which must be a tail).
  void graft(int slot, int child);
  Flowchart build() const;

 private:
  Flowchart t_;
  std::vector<int> out_;
};

// -- pointed sets ----------------------------------------------------------

/// Carrier {0 = *, 1..n}.
struct PartialMap {
  int n = 0;
  std::vector<std::optional<int>> table;  // size n + 1, entry 0 unused; values in 1..n
};

struct PointedMap {
  int n = 0;
  std::vector<int> table;  // size n + 1, table[0] = 0
};

PointedMap totalize(const PartialMap& phi);

/// Addition table on {0..n} with neutral element 0.
struct GroupLaw {
  std::vector<std::vector<int>> add;
  static GroupLaw cyclic(int order);
  int neg(int x) const;
};

/// Empty when the table is an abelian group law with zero 0.
std::vector<std::string> group_law_violations(const GroupLaw& g);

using Point = std::pair<int, int>;

struct Bijectivized {
  int n = 0;
  std::map<Point, Point> image;  // f~(x, y) = (x + f(y), y)
  std::map<Point, Point> inverse;
  bool is_permutation = false;
  bool inverse_formula_holds = false;  // f~^{-1}(x, y) = (x - f(y), y)
  std::vector<int> domain;            // D(phi) = f^{-1}(X without *)
  bool restriction_computable = false;  // on D(g) f~ is determined by phi's table
  bool domain_invariant = false;        // f~ permutes D(g)
  std::vector<Point> fixed_points;
  std::vector<Point> predicted_fixed_points;  // {(x, y) : f(y) = *}
  std::vector<Point> fixed_in_domain;
  std::vector<Point> fixed_outside_domain;
  bool complement_all_fixed = false;
  bool unique_fixed_point_in_domain = false;  // the proposition's claim
  std::string discrepancy;                    // non-empty when the claim fails
};

Bijectivized bijectivize(const PointedMap& f, const GroupLaw& g);

nlohmann::json bijectivized_to_json(const Bijectivized& b);

}  // namespace hopfflow
