#pragma once

// Formal Gaussian integration in the finite toy model and the graph sums that
// reproduce it: partition function, connected part, stationary point and trees.

#include <map>
#include <utility>
#include <vector>

#include "hopfflow/graph.hpp"
#include "hopfflow/series.hpp"

namespace hopfflow {

/// <phi^{a1} ... phi^{an}> as lambda^{n/2} times a polynomial in the entries
/// g^{ab} (keys are sorted lists of index pairs a <= b).
struct WickMoment {
  int lambda_power = 0;
  std::map<std::vector<std::pair<int, int>>, long> monomials;
  long pairings = 0;  // perfect matchings enumerated before collection

  bool vanishes() const { return monomials.empty(); }
  /// Value with the model's numeric inverse metric, lambda stripped.
  Rational evaluate(const ModelData& m) const;
};

WickMoment wick_moment(const std::vector<int>& indices);

struct GaussianCheck {
  double numeric = 0;
  double exact = 0;
  double abs_error = 0;
  double rel_error = 0;
};

/// Adaptive quadrature of the Gaussian moment at lambda = 1 for |A| <= 2;
/// rejects metrics that are not positive definite.
GaussianCheck numeric_gaussian_check(const std::vector<int>& indices, const ModelData& m);

/// Sum over flag colorings of prod g^{u(e)} prod C_{u(F(v))}; lambda-free.
/// Tails are colored freely and contribute no metric factor. Colorings that
/// hit an inactive coupling vanish; a valence no coupling has raises an error.
FormalSeries graph_weight(const DecoratedGraph& g, const ModelData& m, int truncation = FormalSeries::kExact);

/// Sum over graph classes with coupling weight <= bound of lambda^{-chi}/|Aut| w.
FormalSeries partition_series_graphs(const ModelData& m, int max_weight);
/// Termwise integration of exp(S1/lambda), no graphs involved.
FormalSeries partition_series_wick(const ModelData& m, int max_weight);
/// Connected non-empty graph classes only.
FormalSeries connected_series(const ModelData& m, int max_weight);

enum class LambdaConvention {
  AtOne,   // compare Z and S(phi0) after lambda := 1
  Scaled,  // compare lambda Z with S(phi0), lambda dZ/dC_a with phi0^a
};

/// Stationary point phi0 of S = S0 + S1, one series per color.
struct StationaryPoint {
  std::vector<FormalSeries> phi;
  int iterations = 0;
};

StationaryPoint stationary_point(const ModelData& m, int max_weight);

/// dS/dphi^a at the given field values.
std::vector<FormalSeries> action_gradient(const ModelData& m, const std::vector<FormalSeries>& phi);
/// S(phi) = S0(phi) + S1(phi).
FormalSeries action_value(const ModelData& m, const std::vector<FormalSeries>& phi);

/// Sum over tree classes with at least one edge.
FormalSeries tree_series(const ModelData& m, int max_weight);

struct TreeCheck {
  LambdaConvention convention;
  bool residual_vanishes = false;
  bool gradient_matches = false;  // dZ/dC_a = phi0^a for every color
  bool critical_value_matches = false;
  std::vector<int> tree_lambda_powers;  // distinct exponents seen in Z
};

TreeCheck check_tree_identities(const ModelData& m, int max_weight, LambdaConvention conv);

/// Polynomial in the fields with series coefficients (exponent vector per color).
struct FieldPolynomial {
  std::map<std::vector<int>, FormalSeries> terms;
  int truncation = FormalSeries::kExact;

  FieldPolynomial operator*(const FieldPolynomial& o) const;
  FieldPolynomial& operator+=(const FieldPolynomial& o);
};

/// S1 as a polynomial in the fields.
FieldPolynomial interaction_polynomial(const ModelData& m, int max_weight);

}  // namespace hopfflow
