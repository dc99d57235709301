#pragma once

// Sequence algebras with their three products, partial summation, the
// Gamma(1 + d/dt) transform of singular parts, asymptotic fits in log N, the
// threshold norm, and max-plus running times of directed graphs.

#include <json.hpp>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hopfflow/cuts.hpp"
#include "hopfflow/graph.hpp"
#include "hopfflow/prim.hpp"
#include "hopfflow/rational.hpp"

namespace hopfflow {

/// f_1 .. f_N; index 0 of the vectors holds f_1.
struct TruncatedSequence {
  enum class Mode { Exact, Float };
  Mode mode = Mode::Exact;
  std::vector<Rational> exact;
  std::vector<double> real;

  static TruncatedSequence of(std::vector<Rational> v);
  static TruncatedSequence of_floats(std::vector<double> v);

  std::size_t size() const { return mode == Mode::Exact ? exact.size() : real.size(); }
  TruncatedSequence prefix(std::size_t n) const;
  TruncatedSequence operator+(const TruncatedSequence& o) const;
  TruncatedSequence operator*(const Rational& c) const;
  bool operator==(const TruncatedSequence& o) const;
};

enum class SeqProduct { Pointwise, MaxConv, Cauchy };

SeqProduct parse_product(const std::string& name);
std::string product_name(SeqProduct p);

TruncatedSequence seq_product(const TruncatedSequence& f, const TruncatedSequence& g, SeqProduct p);
/// (1,1,...) for pointwise, (1,0,...) for max-convolution; Cauchy has none.
TruncatedSequence seq_unit(SeqProduct p, std::size_t n, TruncatedSequence::Mode mode = TruncatedSequence::Mode::Exact);

/// S(f)_N = sum_{n <= N} f_n.
TruncatedSequence partial_sum(const TruncatedSequence& f);
/// S'(f)_N = sum_{n <= N+1} f_n; a length-N input gives N - 1 entries.
TruncatedSequence prime_sum(const TruncatedSequence& f);

struct SeqRotaBaxterReport {
  std::size_t pairs = 0;
  std::size_t compared_entries = 0;
  std::vector<std::size_t> failing;
  std::optional<std::pair<TruncatedSequence, TruncatedSequence>> first_counterexample;
  bool passed() const { return failing.empty(); }
};

/// R(f)R(g) = R(R(f)g + fR(g) + theta fg) in the given product, compared on
/// the common prefix where both sides are determined by the data.
SeqRotaBaxterReport rota_baxter_sequences(const std::function<TruncatedSequence(const TruncatedSequence&)>& R,
                                          SeqProduct p, const Rational& theta,
                                          const std::vector<std::pair<TruncatedSequence, TruncatedSequence>>& samples);

nlohmann::json sequence_to_json(const TruncatedSequence& f);
TruncatedSequence sequence_from_json(const nlohmann::json& j);

// -- formal constants and the Gamma transform -------------------------------

/// Polynomial over Q in the formal constants gamma (id 0) and zeta(k) (id k >= 2).
struct Symbolic {
  using Monomial = std::map<int, int>;  // constant id -> exponent
  std::map<Monomial, Rational> terms;

  static Symbolic constant(const Rational& r);
  static Symbolic gamma();
  static Symbolic zeta(int k);

  bool is_zero() const { return terms.empty(); }
  Symbolic operator+(const Symbolic& o) const;
  Symbolic operator-(const Symbolic& o) const;
  Symbolic operator*(const Symbolic& o) const;
  Symbolic operator*(const Rational& r) const;
  bool operator==(const Symbolic& o) const { return terms == o.terms; }

  /// Numeric value; `zeta(k)` looked up in the table, gamma passed separately.
  double evaluate(double gamma, const std::map<int, double>& zeta) const;
};

std::string format_symbolic(const Symbolic& s);
/// Sums of products of rationals, "gamma" and "zeta(k)", with optional ^e.
Symbolic parse_symbolic(const std::string& text);

/// Coefficients in t; index = degree.
using PolyInT = std::vector<Symbolic>;

PolyInT poly_trim(PolyInT p);
PolyInT poly_derivative(const PolyInT& p);
std::string format_poly(const PolyInT& p);
nlohmann::json poly_to_json(const PolyInT& p);
PolyInT poly_from_json(const nlohmann::json& j);

/// Taylor coefficients e_0..e_order of Gamma(1 + x) from
/// log Gamma(1 + x) = -gamma x + sum_{k >= 2} (-1)^k zeta(k) x^k / k.
std::vector<Symbolic> gamma_series(int order);

/// Q = Gamma(1 + d/dt) P truncated after `order` derivatives; order >= deg P.
PolyInT gamma_transform(const PolyInT& p, int order);

/// lim (H_n - log n) by Euler-Maclaurin from a finite n.
double euler_gamma_estimate(long n = 1000);
/// zeta(k), k >= 2, by Euler-Maclaurin.
double zeta_estimate(int k, long n = 1000);

// -- asymptotic fits --------------------------------------------------------

struct AsymptoticFit {
  std::vector<double> coefficients;  // of (log N)^j
  std::size_t window_begin = 0;      // 1-based indices into the sequence
  std::size_t window_end = 0;
  double residual_rms = 0;
  double residual_max = 0;
  /// d log(rms) / d log N from refitting on the first half of the data; about -1 for class A.
  double residual_decay = 0;
  double condition = 0;
  bool ill_conditioned = false;
};

/// Least squares of S(f)_n against 1, log n, ..., (log n)^degree over [N/2, N].
AsymptoticFit asymptotic_fit(const std::vector<double>& f, int degree);
/// Same on precomputed partial sums.
AsymptoticFit asymptotic_fit_sums(const std::vector<double>& sums, int degree);

/// max over thresholds r of r * #{n : f_n >= r}; entries must be >= 0.
Rational levin_norm(const TruncatedSequence& f);

// -- max-plus timing ---------------------------------------------------------

struct MaxPlusValue {
  Rational value = 0;

  MaxPlusValue oplus(const MaxPlusValue& o) const { return {value < o.value ? o.value : value}; }
  MaxPlusValue otimes(const MaxPlusValue& o) const { return {value + o.value}; }
  bool operator==(const MaxPlusValue& o) const { return value == o.value; }
};

/// Largest total vertex cost along an oriented path; costs indexed by vertex.
MaxPlusValue running_time(const DecoratedGraph& g, const std::vector<Rational>& costs);
MaxPlusValue running_time(const Flowchart& t, const std::vector<Rational>& costs);

struct CutTiming {
  Cut cut;
  MaxPlusValue total, upper, lower;
  bool inequality_holds = false;  // T <= T(upper) + T(lower)
  bool equality = false;
};

std::vector<CutTiming> cut_timing_report(const DecoratedGraph& g, const std::vector<Rational>& costs);

/// Costs from {"vertex id": number or rational string}; missing vertices are an error.
std::vector<Rational> costs_from_json(const nlohmann::json& j, const CombinatorialGraph& g);

}  // namespace hopfflow
