#include "hopfflow/seq.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>

#include "hopfflow/error.hpp"

namespace hopfflow {

using nlohmann::json;
using Mode = TruncatedSequence::Mode;

// -- sequences -------------------------------------------------------------

TruncatedSequence TruncatedSequence::of(std::vector<Rational> v) {
  TruncatedSequence s;
  for (auto& x : v) x.canonicalize();
  s.exact = std::move(v);
  return s;
}

TruncatedSequence TruncatedSequence::of_floats(std::vector<double> v) {
  TruncatedSequence s;
  s.mode = Mode::Float;
  s.real = std::move(v);
  return s;
}

TruncatedSequence TruncatedSequence::prefix(std::size_t n) const {
  TruncatedSequence s = *this;
  if (n > size()) fail(ErrorCode::Argument, "prefix longer than the sequence");
  s.exact.resize(mode == Mode::Exact ? n : 0);
  s.real.resize(mode == Mode::Float ? n : 0);
  return s;
}

namespace {

void compatible(const TruncatedSequence& f, const TruncatedSequence& g) {
  if (f.mode != g.mode) fail(ErrorCode::Argument, "sequences have different modes");
  if (f.size() != g.size())
    fail(ErrorCode::Argument, "sequence lengths differ (" + std::to_string(f.size()) + " vs " +
                                  std::to_string(g.size()) + ")");
}

template <class T>
std::vector<T> product_of(const std::vector<T>& f, const std::vector<T>& g, SeqProduct p) {
  const std::size_t n = f.size();
  std::vector<T> out(n, T(0));
  switch (p) {
    case SeqProduct::Pointwise:
      for (std::size_t i = 0; i < n; ++i) out[i] = f[i] * g[i];
      break;
    case SeqProduct::MaxConv: {
      // (f*g)_n = f_n S(g)_{n-1} + S(f)_{n-1} g_n + f_n g_n
      T sf = 0, sg = 0;
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = f[i] * sg + sf * g[i] + f[i] * g[i];
        sf += f[i];
        sg += g[i];
      }
      break;
    }
    case SeqProduct::Cauchy:
      // 1-based indices: entry k (0-based) is index k+1 = p + q with p, q >= 1
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j + 1 < n; ++j) out[i + j + 1] += f[i] * g[j];
      break;
  }
  return out;
}

}  // namespace

TruncatedSequence TruncatedSequence::operator+(const TruncatedSequence& o) const {
  compatible(*this, o);
  TruncatedSequence s = *this;
  for (std::size_t i = 0; i < s.exact.size(); ++i) s.exact[i] += o.exact[i];
  for (std::size_t i = 0; i < s.real.size(); ++i) s.real[i] += o.real[i];
  return s;
}

TruncatedSequence TruncatedSequence::operator*(const Rational& c) const {
  TruncatedSequence s = *this;
  for (auto& x : s.exact) x *= c;
  for (auto& x : s.real) x *= c.get_d();
  return s;
}

bool TruncatedSequence::operator==(const TruncatedSequence& o) const {
  return mode == o.mode && exact == o.exact && real == o.real;
}

SeqProduct parse_product(const std::string& name) {
  if (name == "pointwise") return SeqProduct::Pointwise;
  if (name == "maxconv") return SeqProduct::MaxConv;
  if (name == "cauchy") return SeqProduct::Cauchy;
  fail(ErrorCode::Argument, "unknown product '" + name + "' (pointwise|maxconv|cauchy)");
}

std::string product_name(SeqProduct p) {
  switch (p) {
    case SeqProduct::Pointwise:
      return "pointwise";
    case SeqProduct::MaxConv:
      return "maxconv";
    case SeqProduct::Cauchy:
      return "cauchy";
  }
  return "?";
}

TruncatedSequence seq_product(const TruncatedSequence& f, const TruncatedSequence& g, SeqProduct p) {
  compatible(f, g);
  TruncatedSequence s;
  s.mode = f.mode;
  if (f.mode == Mode::Exact)
    s.exact = product_of(f.exact, g.exact, p);
  else
    s.real = product_of(f.real, g.real, p);
  return s;
}

TruncatedSequence seq_unit(SeqProduct p, std::size_t n, Mode mode) {
  if (p == SeqProduct::Cauchy) fail(ErrorCode::Argument, "the Cauchy product has no unit");
  std::vector<Rational> v(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (p == SeqProduct::Pointwise || i == 0) v[i] = 1;
  if (mode == Mode::Exact) return TruncatedSequence::of(v);
  std::vector<double> d;
  for (const auto& x : v) d.push_back(x.get_d());
  return TruncatedSequence::of_floats(d);
}

TruncatedSequence partial_sum(const TruncatedSequence& f) {
  TruncatedSequence s = f;
  for (std::size_t i = 1; i < s.exact.size(); ++i) s.exact[i] += s.exact[i - 1];
  for (std::size_t i = 1; i < s.real.size(); ++i) s.real[i] += s.real[i - 1];
  return s;
}

TruncatedSequence prime_sum(const TruncatedSequence& f) {
  if (f.size() == 0) return f;
  auto s = partial_sum(f);
  TruncatedSequence out = s;
  out.exact.clear();
  out.real.clear();
  for (std::size_t i = 1; i < s.exact.size(); ++i) out.exact.push_back(s.exact[i]);
  for (std::size_t i = 1; i < s.real.size(); ++i) out.real.push_back(s.real[i]);
  return out;
}

SeqRotaBaxterReport rota_baxter_sequences(const std::function<TruncatedSequence(const TruncatedSequence&)>& R,
                                          SeqProduct p, const Rational& theta,
                                          const std::vector<std::pair<TruncatedSequence, TruncatedSequence>>& samples) {
  // every operation here is causal, so a common prefix stays exact
  auto mul = [p](const TruncatedSequence& a, const TruncatedSequence& b) {
    std::size_t n = std::min(a.size(), b.size());
    return seq_product(a.prefix(n), b.prefix(n), p);
  };
  auto add = [](const TruncatedSequence& a, const TruncatedSequence& b) {
    std::size_t n = std::min(a.size(), b.size());
    return a.prefix(n) + b.prefix(n);
  };
  SeqRotaBaxterReport r;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [f, g] = samples[i];
    auto rf = R(f), rg = R(g);
    auto lhs = mul(rf, rg);
    auto rhs = R(add(add(mul(rf, g), mul(f, rg)), mul(f, g) * theta));
    std::size_t n = std::min(lhs.size(), rhs.size());
    lhs = lhs.prefix(n);
    rhs = rhs.prefix(n);
    ++r.pairs;
    r.compared_entries += n;
    if (!(lhs == rhs)) {
      r.failing.push_back(i);
      if (!r.first_counterexample) r.first_counterexample = std::make_pair(lhs, rhs);
    }
  }
  return r;
}

json sequence_to_json(const TruncatedSequence& f) {
  json values = json::array();
  for (const auto& x : f.exact) values.push_back(format_rational(x));
  for (double x : f.real) values.push_back(x);
  return {{"mode", f.mode == Mode::Exact ? "exact" : "float"}, {"values", values}};
}

TruncatedSequence sequence_from_json(const json& j) {
  const json* values = &j;
  std::optional<Mode> mode;
  if (j.is_object()) {
    if (!j.contains("values")) fail(ErrorCode::Parse, "sequence object needs 'values'");
    values = &j.at("values");
    if (j.contains("mode")) {
      auto m = j.at("mode").get<std::string>();
      if (m == "exact")
        mode = Mode::Exact;
      else if (m == "float")
        mode = Mode::Float;
      else
        fail(ErrorCode::Parse, "sequence mode must be 'exact' or 'float'");
    }
  }
  if (!values->is_array()) fail(ErrorCode::Parse, "sequence values must be an array");
  if (!mode) {
    mode = Mode::Exact;
    for (const auto& v : *values)
      if (v.is_number_float()) mode = Mode::Float;
  }
  std::vector<Rational> ex;
  std::vector<double> re;
  for (std::size_t i = 0; i < values->size(); ++i) {
    const auto& v = (*values)[i];
    if (*mode == Mode::Exact) {
      if (v.is_string())
        ex.push_back(parse_rational(v.get<std::string>()));
      else if (v.is_number_integer())
        ex.push_back(parse_rational(v.dump()));
      else
        fail(ErrorCode::Parse, "entry " + std::to_string(i) + " is not an exact rational");
    } else {
      if (v.is_number())
        re.push_back(v.get<double>());
      else if (v.is_string())
        re.push_back(parse_rational(v.get<std::string>()).get_d());
      else
        fail(ErrorCode::Parse, "entry " + std::to_string(i) + " is not a number");
    }
  }
  return *mode == Mode::Exact ? TruncatedSequence::of(std::move(ex)) : TruncatedSequence::of_floats(std::move(re));
}

// -- symbolic constants ----------------------------------------------------

Symbolic Symbolic::constant(const Rational& r) {
  Symbolic s;
  Rational v = r;
  v.canonicalize();
  if (!hopfflow::is_zero(v)) s.terms[{}] = v;
  return s;
}

Symbolic Symbolic::gamma() {
  Symbolic s;
  s.terms[{{0, 1}}] = 1;
  return s;
}

Symbolic Symbolic::zeta(int k) {
  if (k < 2) fail(ErrorCode::Argument, "zeta(k) needs k >= 2");
  Symbolic s;
  s.terms[{{k, 1}}] = 1;
  return s;
}

Symbolic Symbolic::operator+(const Symbolic& o) const {
  Symbolic s = *this;
  for (const auto& [m, c] : o.terms) {
    auto& v = s.terms[m];
    v += c;
    if (hopfflow::is_zero(v)) s.terms.erase(m);
  }
  return s;
}

Symbolic Symbolic::operator-(const Symbolic& o) const { return *this + o * Rational(-1); }

Symbolic Symbolic::operator*(const Symbolic& o) const {
  Symbolic s;
  for (const auto& [a, ca] : terms)
    for (const auto& [b, cb] : o.terms) {
      Monomial m = a;
      for (const auto& [id, e] : b) m[id] += e;
      Symbolic t;
      t.terms[m] = ca * cb;
      s = s + t;
    }
  return s;
}

Symbolic Symbolic::operator*(const Rational& r) const {
  Symbolic s;
  if (hopfflow::is_zero(r)) return s;
  for (const auto& [m, c] : terms) s.terms[m] = c * r;
  return s;
}

double Symbolic::evaluate(double gamma, const std::map<int, double>& zeta) const {
  double sum = 0;
  for (const auto& [m, c] : terms) {
    double v = c.get_d();
    for (const auto& [id, e] : m) {
      double base = 0;
      if (id == 0)
        base = gamma;
      else if (auto it = zeta.find(id); it != zeta.end())
        base = it->second;
      else
        fail(ErrorCode::Argument, "no value for zeta(" + std::to_string(id) + ")");
      v *= std::pow(base, e);
    }
    sum += v;
  }
  return sum;
}

std::string format_symbolic(const Symbolic& s) {
  if (s.terms.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : s.terms) {
    bool neg = sgn(c) < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string factors;
    for (const auto& [id, e] : m) {
      if (!factors.empty()) factors += "*";
      factors += id == 0 ? "gamma" : "zeta(" + std::to_string(id) + ")";
      if (e != 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty())
      out += format_rational_short(mag);
    else if (mag == 1)
      out += factors;
    else
      out += format_rational_short(mag) + "*" + factors;
  }
  return out;
}

namespace {

struct SymbolicParser {
  std::string s;
  std::size_t i = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, "symbolic expression at offset " + std::to_string(i) + ": " + what);
  }
  bool eat(char c) {
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  long integer() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) error("expected an integer");
    return std::stol(s.substr(start, i - start));
  }
  Symbolic factor() {
    Symbolic f;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      std::size_t start = i;
      integer();
      if (eat('/')) integer();
      f = Symbolic::constant(parse_rational(s.substr(start, i - start)));
    } else if (s.compare(i, 5, "gamma") == 0) {
      i += 5;
      f = Symbolic::gamma();
    } else if (s.compare(i, 5, "zeta(") == 0) {
      i += 5;
      long k = integer();
      if (!eat(')')) error("expected ')'");
      if (k < 2) error("zeta(k) needs k >= 2");
      f = Symbolic::zeta(static_cast<int>(k));
    } else {
      error("expected a number, gamma or zeta(k)");
    }
    if (eat('^')) {
      long e = integer();
      Symbolic p = Symbolic::constant(1);
      for (long k = 0; k < e; ++k) p = p * f;
      f = p;
    }
    return f;
  }
  Symbolic term() {
    Symbolic t = factor();
    while (eat('*')) t = t * factor();
    return t;
  }
  Symbolic expr() {
    Symbolic e;
    bool neg = eat('-');
    if (!neg) eat('+');
    Symbolic t = term();
    e = neg ? e - t : e + t;
    while (i < s.size()) {
      if (eat('+'))
        e = e + term();
      else if (eat('-'))
        e = e - term();
      else
        error("unexpected character");
    }
    return e;
  }
};

}  // namespace

Symbolic parse_symbolic(const std::string& text) {
  SymbolicParser p;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) p.s += c;
  if (p.s.empty()) p.error("empty expression");
  return p.expr();
}

PolyInT poly_trim(PolyInT p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

PolyInT poly_derivative(const PolyInT& p) {
  PolyInT d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  return poly_trim(d);
}

std::string format_poly(const PolyInT& p) {
  auto q = poly_trim(p);
  if (q.empty()) return "0";
  std::string out;
  for (std::size_t k = q.size(); k-- > 0;) {
    if (q[k].is_zero()) continue;
    std::string c = format_symbolic(q[k]);
    bool simple = q[k].terms.size() == 1;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += simple ? c : "(" + c + ")";
      continue;
    }
    std::string tp = k == 1 ? "t" : "t^" + std::to_string(k);
    if (c == "1")
      out += tp;
    else
      out += (simple ? c : "(" + c + ")") + "*" + tp;
  }
  return out;
}

json poly_to_json(const PolyInT& p) {
  json a = json::array();
  for (const auto& c : poly_trim(p)) a.push_back(format_symbolic(c));
  return a;
}

PolyInT poly_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorCode::Parse, "polynomial must be an array of coefficients");
  PolyInT p;
  for (const auto& c : j) {
    if (c.is_string())
      p.push_back(parse_symbolic(c.get<std::string>()));
    else if (c.is_number_integer())
      p.push_back(Symbolic::constant(parse_rational(c.dump())));
    else
      fail(ErrorCode::Parse, "polynomial coefficients must be integers or strings");
  }
  return poly_trim(p);
}

std::vector<Symbolic> gamma_series(int order) {
  if (order < 0) fail(ErrorCode::Argument, "negative order");
  std::vector<Symbolic> l(order + 1);
  if (order >= 1) l[1] = Symbolic::gamma() * Rational(-1);
  for (int k = 2; k <= order; ++k) l[k] = Symbolic::zeta(k) * Rational(k % 2 ? -1 : 1, k);
  // n e_n = sum_k k l_k e_{n-k}
  std::vector<Symbolic> e(order + 1);
  e[0] = Symbolic::constant(1);
  for (int n = 1; n <= order; ++n) {
    Symbolic acc;
    for (int k = 1; k <= n; ++k) acc = acc + l[k] * e[n - k] * Rational(k);
    e[n] = acc * Rational(1, n);
  }
  return e;
}

PolyInT gamma_transform(const PolyInT& p, int order) {
  auto q = poly_trim(p);
  int deg = static_cast<int>(q.size()) - 1;
  if (order < deg) fail(ErrorCode::Argument, "order " + std::to_string(order) + " is below deg P = " + std::to_string(deg));
  auto e = gamma_series(order);
  PolyInT out(q.size());
  PolyInT d = q;
  for (int j = 0; j <= order && !d.empty(); ++j) {
    for (std::size_t k = 0; k < d.size(); ++k) out[k] = out[k] + e[j] * d[k];
    d = poly_derivative(d);
  }
  return poly_trim(out);
}

double euler_gamma_estimate(long n) {
  if (n < 10) fail(ErrorCode::Argument, "Euler-Maclaurin needs n >= 10");
  long double h = 0;
  for (long k = n; k >= 1; --k) h += 1.0L / k;
  long double x = n;
  long double x2 = x * x;
  return static_cast<double>(h - std::log(x) - 1 / (2 * x) + 1 / (12 * x2) - 1 / (120 * x2 * x2) +
                             1 / (252 * x2 * x2 * x2));
}

double zeta_estimate(int k, long n) {
  if (k < 2) fail(ErrorCode::Argument, "zeta(k) needs k >= 2");
  if (n < 10) fail(ErrorCode::Argument, "Euler-Maclaurin needs n >= 10");
  long double s = 0;
  for (long j = n - 1; j >= 1; --j) s += std::pow(static_cast<long double>(j), -k);
  long double x = n;
  s += std::pow(x, 1 - k) / (k - 1) + std::pow(x, -k) / 2;
  // B_2m / (2m)! * k (k+1) ... (k+2m-2) * n^{-k-2m+1}
  const long double bern[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30};
  long double rising = k, fact = 2;
  for (int m = 1; m <= 4; ++m) {
    s += bern[m - 1] / fact * rising * std::pow(x, -k - 2 * m + 1);
    rising *= static_cast<long double>(k + 2 * m - 1) * (k + 2 * m);
    fact *= static_cast<long double>(2 * m + 1) * (2 * m + 2);
  }
  return static_cast<double>(s);
}

// -- fits ------------------------------------------------------------------

AsymptoticFit asymptotic_fit(const std::vector<double>& f, int degree) {
  std::vector<double> sums(f.size());
  long double acc = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f[i];
    sums[i] = static_cast<double>(acc);
  }
  return asymptotic_fit_sums(sums, degree);
}

namespace {

// Least squares on the window [n/2, n] of the first n sums.
AsymptoticFit fit_window(const std::vector<double>& sums, std::size_t n, int degree) {
  AsymptoticFit r;
  r.window_begin = std::max<std::size_t>(1, n / 2);
  r.window_end = n;
  const Eigen::Index rows = static_cast<Eigen::Index>(r.window_end - r.window_begin + 1);
  Eigen::MatrixXd x(rows, degree + 1);
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double t = std::log(static_cast<double>(r.window_begin + i));
    double p = 1;
    for (int j = 0; j <= degree; ++j) {
      x(i, j) = p;
      p *= t;
    }
    y(i) = sums[r.window_begin + i - 1];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  Eigen::VectorXd beta = qr.solve(y);
  r.coefficients.assign(beta.data(), beta.data() + beta.size());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x.transpose() * x, Eigen::EigenvaluesOnly);
  double lo = eig.eigenvalues().minCoeff(), hi = eig.eigenvalues().maxCoeff();
  r.condition = lo > 0 ? std::sqrt(hi / lo) : INFINITY;
  r.ill_conditioned = !(r.condition < 1e10) || qr.rank() < degree + 1;
  Eigen::VectorXd res = y - x * beta;
  r.residual_rms = std::sqrt(res.squaredNorm() / static_cast<double>(rows));
  r.residual_max = res.cwiseAbs().maxCoeff();
  return r;
}

bool fits(std::size_t n, int degree) {
  return n >= 2 && n - std::max<std::size_t>(1, n / 2) + 1 >= static_cast<std::size_t>(2 * (degree + 1));
}

}  // namespace

AsymptoticFit asymptotic_fit_sums(const std::vector<double>& sums, int degree) {
  if (degree < 0) fail(ErrorCode::Argument, "negative degree");
  const std::size_t n = sums.size();
  if (!fits(n, degree))
    fail(ErrorCode::Argument, "sequence too short for a degree-" + std::to_string(degree) + " fit");
  AsymptoticFit r = fit_window(sums, n, degree);
  // trend of the residual: the same fit on the first half of the data
  if (fits(n / 2, degree)) {
    AsymptoticFit h = fit_window(sums, n / 2, degree);
    if (h.residual_rms > 0 && r.residual_rms > 0)
      r.residual_decay = std::log(r.residual_rms / h.residual_rms) / std::log(static_cast<double>(n) / (n / 2));
  }
  return r;
}

Rational levin_norm(const TruncatedSequence& f) {
  if (f.mode != Mode::Exact) fail(ErrorCode::Argument, "levin_norm works on exact sequences");
  std::vector<Rational> v = f.exact;
  for (const auto& x : v)
    if (sgn(x) < 0) fail(ErrorCode::Argument, "levin_norm needs non-negative entries");
  std::sort(v.begin(), v.end(), std::greater<>());
  Rational best = 0;
  // after sorting descending, #{f >= v[i]} is the last index holding v[i], plus one
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    Rational cand = v[i] * Rational(static_cast<long>(i + 1));
    if (cand > best) best = cand;
  }
  return best;
}

// -- timing ----------------------------------------------------------------

namespace {

// Longest vertex-cost path inside the vertex subset `in`.
Rational longest_path(const DecoratedGraph& g, const std::vector<Rational>& costs, const std::vector<bool>& in,
                      const std::vector<int>& height) {
  const auto& c = g.graph;
  std::vector<int> order;
  for (std::size_t v = 0; v < c.vertex_count(); ++v)
    if (in[v]) order.push_back(static_cast<int>(v));
  std::sort(order.begin(), order.end(), [&](int a, int b) { return height[a] > height[b]; });
  std::vector<std::vector<int>> succ(c.vertex_count());
  for (std::size_t f = 0; f < c.flag_count(); ++f) {
    int q = c.involution[f];
    if (q == static_cast<int>(f)) continue;
    if (g.deco.flag_labels.size() > f && g.deco.flag_labels[f].orient == Orientation::Out)
      succ[c.boundary[f]].push_back(c.boundary[q]);
  }
  std::vector<Rational> best(c.vertex_count(), 0);
  Rational total = 0;
  for (int v : order) {
    best[v] += costs[v];
    if (best[v] > total) total = best[v];
    for (int w : succ[v])
      if (in[w] && best[v] > best[w]) best[w] = best[v];
  }
  return total;
}

std::vector<int> heights_or_fail(const DecoratedGraph& g, const std::vector<Rational>& costs) {
  if (costs.size() != g.graph.vertex_count()) fail(ErrorCode::Argument, "one cost per vertex required");
  for (const auto& x : costs)
    if (sgn(x) < 0) fail(ErrorCode::Argument, "costs must be non-negative");
  auto d = is_directed(g);
  if (!d.directed) fail(ErrorCode::Invalid, "graph has an oriented wheel; running time is undefined");
  return d.height;
}

}  // namespace

MaxPlusValue running_time(const DecoratedGraph& g, const std::vector<Rational>& costs) {
  auto h = heights_or_fail(g, costs);
  return {longest_path(g, costs, std::vector<bool>(g.graph.vertex_count(), true), h)};
}

MaxPlusValue running_time(const Flowchart& t, const std::vector<Rational>& costs) {
  Flowchart c = t;
  c.derive_orientation();
  return running_time(c.graph, costs);
}

std::vector<CutTiming> cut_timing_report(const DecoratedGraph& g, const std::vector<Rational>& costs) {
  auto h = heights_or_fail(g, costs);
  const std::size_t n = g.graph.vertex_count();
  MaxPlusValue total{longest_path(g, costs, std::vector<bool>(n, true), h)};
  std::vector<CutTiming> out;
  for (const auto& cut : enumerate_cuts(g)) {
    std::vector<bool> up(n, false), low(n, false);
    for (int v : cut.upper) up[v] = true;
    for (int v : cut.lower) low[v] = true;
    CutTiming ct;
    ct.cut = cut;
    ct.total = total;
    ct.upper = {longest_path(g, costs, up, h)};
    ct.lower = {longest_path(g, costs, low, h)};
    Rational bound = ct.upper.value + ct.lower.value;
    ct.inequality_holds = total.value <= bound;
    ct.equality = total.value == bound;
    out.push_back(ct);
  }
  return out;
}

std::vector<Rational> costs_from_json(const json& j, const CombinatorialGraph& g) {
  if (!j.is_object()) fail(ErrorCode::Parse, "costs must be an object vertex id -> cost");
  std::vector<Rational> out(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  for (const auto& [id, v] : j.items()) {
    auto it = std::find(g.vertex_ids.begin(), g.vertex_ids.end(), id);
    if (it == g.vertex_ids.end()) fail(ErrorCode::Parse, "costs: unknown vertex '" + id + "'");
    std::size_t k = static_cast<std::size_t>(it - g.vertex_ids.begin());
    if (v.is_string())
      out[k] = parse_rational(v.get<std::string>());
    else if (v.is_number_integer())
      out[k] = parse_rational(v.dump());
    else if (v.is_number())
      out[k] = Rational(v.get<double>());
    else
      fail(ErrorCode::Parse, "costs: value for '" + id + "' is not a number");
    seen[k] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) fail(ErrorCode::Parse, "costs: no cost for vertex '" + g.vertex_ids[k] + "'");
  return out;
}

}  // namespace hopfflow
