#pragma once

// The bialgebra of oriented decorated graphs: polynomial algebra on
// isomorphism classes (product = disjoint union), cut coproduct, counit,
// gradings and the recursive antipode.  Also the diagonal coalgebra of a
// finite category.

#include <json.hpp>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hopfflow/graph.hpp"
#include "hopfflow/rational.hpp"

namespace hopfflow {

/// Linear combination of graph classes, keyed by canonical form ("" = unit).
struct HopfElement {
  std::string family = "oriented";
  std::map<std::string, Rational> terms;

  void add(const std::string& key, const Rational& c);
  Rational coefficient(const std::string& key) const;
  bool is_zero() const { return terms.empty(); }

  HopfElement operator+(const HopfElement& o) const;
  HopfElement operator-(const HopfElement& o) const;
  HopfElement operator*(const HopfElement& o) const;
  HopfElement operator*(const Rational& c) const;
  bool operator==(const HopfElement& o) const { return family == o.family && terms == o.terms; }
};

/// Linear combination of k-fold tensors of classes.
struct TensorElement {
  std::string family = "oriented";
  std::map<std::vector<std::string>, Rational> terms;

  void add(const std::vector<std::string>& key, const Rational& c);
  bool is_zero() const { return terms.empty(); }

  TensorElement operator+(const TensorElement& o) const;
  TensorElement operator-(const TensorElement& o) const;
  /// Factorwise product of tensors of equal arity.
  TensorElement operator*(const TensorElement& o) const;
  bool operator==(const TensorElement& o) const { return family == o.family && terms == o.terms; }
};

HopfElement hopf_unit(const std::string& family = "oriented");
HopfElement basis_element(const DecoratedGraph& g, const std::string& family = "oriented");
HopfElement basis_key(const std::string& key, const std::string& family = "oriented");
TensorElement tensor_basis(std::vector<std::string> keys, const Rational& c = 1, const std::string& family = "oriented");

struct Grading {
  enum class Mode { Flags, Weighted };
  Mode mode = Mode::Flags;
  /// Weighted mode: |l| per label; unlabelled flags and vertices weigh 0.
  std::map<std::string, int> label_weights;

  int degree(const DecoratedGraph& g) const;
};

/// Admissible family: the default accepts every fully oriented graph, optionally
/// restricted to a label alphabet.  A custom predicate is asserted on every
/// cut part the coproduct produces.
struct GraphFamily {
  std::string tag = "oriented";
  std::vector<std::string> alphabet;  // empty = unrestricted
  std::function<bool(const DecoratedGraph&)> member;

  bool contains(const DecoratedGraph& g) const;
};

/// Memoizing evaluator for the structure maps of one family and grading.
/// Not thread-safe; use one instance per thread.
class GraphHopf {
 public:
  explicit GraphHopf(GraphFamily family = {}, Grading grading = {});

  const GraphFamily& family() const { return family_; }
  const Grading& grading() const { return grading_; }

  HopfElement product(const HopfElement& x, const HopfElement& y) const;
  Rational counit(const HopfElement& x) const;
  TensorElement coproduct(const HopfElement& x);
  const TensorElement& coproduct_of(const std::string& key);
  /// Delta x - x (x) 1 - 1 (x) x; x must lie in the kernel of the counit.
  TensorElement reduced_coproduct(const HopfElement& x);
  HopfElement antipode(const HopfElement& x, int degree_bound);

  int degree(const std::string& key);

  /// Applies Delta to factor i of every tensor monomial.
  TensorElement coproduct_at(const TensorElement& t, std::size_t i);
  /// (eps (x) id) on a 2-tensor, or (id (x) eps) when `left` is false.
  HopfElement counit_side(const TensorElement& t, bool left) const;
  /// m (S (x) id) or m (id (x) S) on a 2-tensor.
  HopfElement antipode_side(const TensorElement& t, bool left, int degree_bound);

 private:
  void check_family(const std::string& f) const;
  const DecoratedGraph& decoded(const std::string& key);

  GraphFamily family_;
  Grading grading_;
  std::map<std::string, DecoratedGraph> graphs_;
  std::map<std::string, TensorElement> coproducts_;
  std::map<std::string, HopfElement> antipodes_;
  std::map<std::string, int> degrees_;
};

// -- finite categories -----------------------------------------------------

struct Morphism {
  std::string name;
  int source = 0;
  int target = 0;
};

struct FiniteCategory {
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<int> identity;                   // object -> morphism
  std::map<std::pair<int, int>, int> compose;  // (g, h) -> g o h when target(h) = source(g)

  int find(const std::string& name) const;
  int compose_names(const std::string& g, const std::string& h) const;
};

/// Identity, closure and associativity violations.
std::vector<std::string> category_violations(const FiniteCategory& c);
/// Builds and validates; raises on violations.
FiniteCategory make_category(std::vector<std::string> objects, std::vector<Morphism> morphisms,
                             const std::map<std::pair<std::string, std::string>, std::string>& compose);
/// Adds the identities and the composites of an order relation given by its
/// generating arrows i -> j.
FiniteCategory poset_category(int objects, const std::vector<std::pair<int, int>>& relations);

/// Delta f = sum over g o h = f of h (x) g, keyed by morphism names.
TensorElement category_coproduct(const FiniteCategory& c, int f);
/// Applies the category coproduct to factor i.
TensorElement category_coproduct_at(const FiniteCategory& c, const TensorElement& t, std::size_t i);

// -- serialization ---------------------------------------------------------

nlohmann::json hopf_to_json(const HopfElement& x);
HopfElement hopf_from_json(const nlohmann::json& j, const std::string& family = "oriented");
nlohmann::json tensor_to_json(const TensorElement& t);
/// Component graph or graph array for a class key.
nlohmann::json class_to_json(const std::string& key);
std::string class_from_json(const nlohmann::json& j);

}  // namespace hopfflow
