#pragma once

// Minimal-subtraction target algebras, the convolution group of linear maps
// on the graph Hopf algebra, Birkhoff decomposition and Rota-Baxter checks.

#include <json.hpp>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hopfflow/hopf.hpp"
#include "hopfflow/rational.hpp"
#include "hopfflow/series.hpp"

namespace hopfflow {

/// Truncated Laurent polynomial sum c_k z^k with -pole_cap <= k <= regular_cap.
/// Arithmetic that would leave the caps raises a truncation error.
struct LaurentValue {
  std::map<int, Rational> c;  // no zero entries
  int pole_cap = 16;
  int regular_cap = 16;

  static LaurentValue constant(const Rational& r, int pole_cap = 16, int regular_cap = 16);
  static LaurentValue monomial(int k, const Rational& r, int pole_cap = 16, int regular_cap = 16);

  Rational coefficient(int k) const;
  bool is_zero() const { return c.empty(); }
  void set(int k, const Rational& r);

  LaurentValue operator+(const LaurentValue& o) const;
  LaurentValue operator-(const LaurentValue& o) const;
  LaurentValue operator-() const;
  LaurentValue operator*(const LaurentValue& o) const;
  LaurentValue operator*(const Rational& r) const;
  /// Compares coefficients only.
  bool operator==(const LaurentValue& o) const { return c == o.c; }
};

std::string format_laurent(const LaurentValue& v);
nlohmann::json laurent_to_json(const LaurentValue& v);
LaurentValue laurent_from_json(const nlohmann::json& j, int pole_cap = 16, int regular_cap = 16);

/// A splitting A = A_- (+) A_+ of the Laurent algebra. Minimal subtraction keeps
/// the pole part as A_-; the complementary scheme swaps the roles, so A_- is
/// z C[z] and A_+ is C[1/z], augmented by evaluation at z0.
struct Scheme {
  enum class Kind { MinimalSubtraction, Complementary };
  Kind kind = Kind::MinimalSubtraction;
  Rational z0 = 1;
  int pole_cap = 16;
  int regular_cap = 16;

  static Scheme minimal(int pole_cap = 16, int regular_cap = 16);
  static Scheme complementary(const Rational& z0, int pole_cap = 16, int regular_cap = 16);

  std::string name() const;
  LaurentValue unit() const;
  LaurentValue zero() const;
  LaurentValue monomial(int k, const Rational& r) const;
  bool polar_degree(int k) const;
  /// pi, the projection onto A_-.
  LaurentValue polar(const LaurentValue& v) const;
  LaurentValue regular(const LaurentValue& v) const;
  bool is_polar(const LaurentValue& v) const;
  bool is_regular(const LaurentValue& v) const;
  /// epsilon_A on A_+; empty when v is not regular.
  std::optional<Rational> augmentation(const LaurentValue& v) const;
};

/// Linear map H -> A, evaluated lazily on basis classes and memoized.
class LinearMap {
 public:
  using Rule = std::function<LaurentValue(const std::string& key)>;

  LinearMap() = default;
  LinearMap(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound, Rule rule, bool multiplicative);

  LaurentValue operator()(const std::string& key) const;
  LaurentValue operator()(const HopfElement& x) const;

  const Scheme& scheme() const { return scheme_; }
  int degree_bound() const { return bound_; }
  bool multiplicative() const { return multiplicative_; }
  const std::shared_ptr<GraphHopf>& hopf() const { return hopf_; }

 private:
  std::shared_ptr<GraphHopf> hopf_;
  Scheme scheme_;
  int bound_ = 0;
  Rule rule_;
  bool multiplicative_ = false;
  std::shared_ptr<std::map<std::string, LaurentValue>> memo_;
};

/// e = u_A o epsilon.
LinearMap counit_map(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound);
/// Multiplicative extension of values on connected classes.
LinearMap character_from_generators(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound,
                                    std::map<std::string, LaurentValue> generators);
/// General element of G(A): explicit values on listed classes (products
/// included); unlisted classes fall back to the product of component values.
LinearMap table_map(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound,
                    std::map<std::string, LaurentValue> table);
/// Character whose generator values come from a rule on connected graphs.
LinearMap make_toy_character(std::shared_ptr<GraphHopf> hopf, Scheme scheme, int degree_bound,
                             std::function<LaurentValue(const DecoratedGraph&)> rule);
/// tau -> z^{-|E|}.
std::function<LaurentValue(const DecoratedGraph&)> edge_pole_rule(const Scheme& s);
/// tau -> z^{-|E|} times graph_weight(tau) specialized in a one-color model.
std::function<LaurentValue(const DecoratedGraph&)> weighted_pole_rule(const Scheme& s, const ModelData& m);

LinearMap convolve(const LinearMap& phi, const LinearMap& psi);
LinearMap difference(const LinearMap& phi, const LinearMap& psi);
/// sum over m >= 0 of (e - phi)^{*m}, each term finite on a given class.
LinearMap convolution_inverse(const LinearMap& phi);

struct Birkhoff {
  LinearMap minus;
  LinearMap plus;
};

Birkhoff birkhoff(const LinearMap& phi);

/// epsilon_A(phi_+(tau)); empty ("undefined") when the value is not regular.
std::optional<Rational> regularized_value(const LinearMap& plus, const std::string& key);

struct BirkhoffReport {
  bool reconstruction = true;  // phi = phi_-^{*-1} * phi_+
  bool plus_regular = true;
  bool minus_polar = true;     // on the counit's kernel
  bool minus_multiplicative = true;
  bool plus_multiplicative = true;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks the decomposition on the given classes, and multiplicativity on all
/// their pairwise products that stay within the degree bound.
BirkhoffReport verify_birkhoff(const LinearMap& phi, const Birkhoff& b, const std::vector<std::string>& keys);

/// Outcome of R(f)R(g) = R(R(f)g + fR(g) + theta fg) on sample pairs.
template <class V>
struct RotaBaxterReport {
  std::size_t pairs = 0;
  std::vector<std::size_t> failing;
  std::optional<std::pair<V, V>> first_counterexample;  // (lhs, rhs)
  bool passed() const { return failing.empty(); }
};

template <class V, class Op, class Scale>
RotaBaxterReport<V> rota_baxter_check(Op R, const Rational& theta, const std::vector<std::pair<V, V>>& samples,
                                      Scale scale) {
  RotaBaxterReport<V> r;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [f, g] = samples[i];
    V lhs = R(f) * R(g);
    V rhs = R(R(f) * g + f * R(g) + scale(f * g, theta));
    ++r.pairs;
    if (!(lhs == rhs)) {
      r.failing.push_back(i);
      if (!r.first_counterexample) r.first_counterexample = std::make_pair(lhs, rhs);
    }
  }
  return r;
}

RotaBaxterReport<LaurentValue> rota_baxter_laurent(const std::function<LaurentValue(const LaurentValue&)>& R,
                                                   const Rational& theta,
                                                   const std::vector<std::pair<LaurentValue, LaurentValue>>& samples);

// -- character files -------------------------------------------------------

struct CharacterFile {
  int degree_bound = 0;
  std::vector<std::string> keys;  // listed classes, file order
  LinearMap map;
};

CharacterFile character_from_json(const nlohmann::json& j, std::shared_ptr<GraphHopf> hopf, const Scheme& scheme);
nlohmann::json character_to_json(const LinearMap& phi, const std::vector<std::string>& keys);

}  // namespace hopfflow
