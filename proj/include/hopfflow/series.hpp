#pragma once

// Toy-model data and exact formal series in the coupling symbols C_{a1..ak}
// and a Laurent variable lambda.  A coupling symbol is the sorted multiset of
// its color indices; a monomial is the sorted multiset of its symbols.  The
// inverse metric enters numerically, so coefficients are plain rationals.

#include <json.hpp>
#include <climits>
#include <map>
#include <string>
#include <vector>

#include "hopfflow/rational.hpp"

namespace hopfflow {

using Coupling = std::vector<int>;
using CouplingMonomial = std::vector<Coupling>;

struct SeriesTerm {
  CouplingMonomial couplings;
  int lambda = 0;

  int weight() const;
  bool operator==(const SeriesTerm&) const = default;
};

/// Orders by (weight, couplings, lambda).
struct TermLess {
  bool operator()(const SeriesTerm& a, const SeriesTerm& b) const;
};

class FormalSeries {
 public:
  static constexpr int kExact = INT_MAX;

  FormalSeries() = default;
  explicit FormalSeries(int truncation) : truncation_(truncation) {}
  static FormalSeries constant(const Rational& c, int truncation = kExact);
  static FormalSeries monomial(SeriesTerm t, const Rational& c, int truncation = kExact);

  /// Terms of weight above the truncation are dropped on insertion.
  void add_term(const SeriesTerm& t, const Rational& c);
  const std::map<SeriesTerm, Rational, TermLess>& terms() const { return terms_; }
  Rational coefficient(const SeriesTerm& t) const;
  int truncation() const { return truncation_; }
  FormalSeries truncated(int w) const;
  bool is_zero() const { return terms_.empty(); }
  /// Part of weight zero.
  FormalSeries constant_part() const;
  int min_weight() const;

  FormalSeries operator+(const FormalSeries& o) const;
  FormalSeries operator-(const FormalSeries& o) const;
  FormalSeries operator-() const;
  FormalSeries operator*(const FormalSeries& o) const;
  FormalSeries operator*(const Rational& c) const;
  FormalSeries& operator+=(const FormalSeries& o);

  /// All lambda exponents shifted by k.
  FormalSeries shift_lambda(int k) const;
  /// lambda := 1.
  FormalSeries at_lambda_one() const;
  /// Formal partial derivative by the symbol `c`.
  FormalSeries derivative(const Coupling& c) const;

  bool operator==(const FormalSeries& o) const { return terms_ == o.terms_; }

 private:
  std::map<SeriesTerm, Rational, TermLess> terms_;
  int truncation_ = kExact;
};

/// exp of a series without weight-zero part.
FormalSeries series_exp(const FormalSeries& x);
/// log of a series whose weight-zero part is exactly 1.
FormalSeries series_log(const FormalSeries& x);

struct SeriesDiffEntry {
  SeriesTerm term;
  Rational left, right;
};
/// Terms (up to the smaller truncation) whose coefficients differ.
std::vector<SeriesDiffEntry> series_diff(const FormalSeries& a, const FormalSeries& b);

struct ModelData {
  std::vector<std::string> colors;
  std::vector<std::vector<Rational>> g;
  std::vector<std::vector<Rational>> ginv;
  /// Sorted index multiset -> value. Only nonzero entries are kept; they mark
  /// the active coupling symbols.  Values enter only numeric specializations.
  std::map<Coupling, Rational> couplings;

  std::size_t size() const { return colors.size(); }
  int max_rank() const;
  bool has_rank(int k) const;
  std::vector<Coupling> active_of_rank(int k) const;
  bool active(const Coupling& c) const { return couplings.count(c) > 0; }
};

/// Checks symmetry and invertibility, computes g^{-1}, sorts coupling keys.
ModelData make_model(std::vector<std::string> colors, std::vector<std::vector<Rational>> g,
                     std::map<Coupling, Rational> couplings);
ModelData model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const ModelData& m);

std::vector<std::vector<Rational>> invert_matrix(const std::vector<std::vector<Rational>>& a);

/// Substitutes the model's coupling values; result maps lambda power -> value.
std::map<int, Rational> specialize(const FormalSeries& s, const ModelData& m);

std::string coupling_name(const Coupling& c, const ModelData* m = nullptr);
std::string format_term(const SeriesTerm& t, const ModelData* m = nullptr);
nlohmann::json series_to_json(const FormalSeries& s, const ModelData* m = nullptr);
FormalSeries series_from_json(const nlohmann::json& j, const ModelData* m = nullptr);
std::string format_series(const FormalSeries& s, const ModelData* m = nullptr);

}  // namespace hopfflow
