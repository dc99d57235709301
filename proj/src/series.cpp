#include "hopfflow/series.hpp"

#include <algorithm>
#include <sstream>

#include "hopfflow/error.hpp"

namespace hopfflow {

using nlohmann::json;

int SeriesTerm::weight() const {
  int w = 0;
  for (const auto& c : couplings) w += static_cast<int>(c.size());
  return w;
}

bool TermLess::operator()(const SeriesTerm& a, const SeriesTerm& b) const {
  int wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  if (a.couplings != b.couplings) return a.couplings < b.couplings;
  return a.lambda < b.lambda;
}

FormalSeries FormalSeries::constant(const Rational& c, int truncation) {
  return monomial(SeriesTerm{}, c, truncation);
}

FormalSeries FormalSeries::monomial(SeriesTerm t, const Rational& c, int truncation) {
  FormalSeries s(truncation);
  std::sort(t.couplings.begin(), t.couplings.end());
  s.add_term(t, c);
  return s;
}

void FormalSeries::add_term(const SeriesTerm& t, const Rational& c) {
  if (hopfflow::is_zero(c) || t.weight() > truncation_) return;
  auto [it, inserted] = terms_.emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (hopfflow::is_zero(it->second)) terms_.erase(it);
  }
}

Rational FormalSeries::coefficient(const SeriesTerm& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

FormalSeries FormalSeries::truncated(int w) const {
  FormalSeries out(std::min(w, truncation_));
  for (const auto& [t, c] : terms_) out.add_term(t, c);
  return out;
}

FormalSeries FormalSeries::constant_part() const {
  FormalSeries out(truncation_);
  for (const auto& [t, c] : terms_)
    if (t.couplings.empty()) out.add_term(t, c);
  return out;
}

int FormalSeries::min_weight() const { return terms_.empty() ? kExact : terms_.begin()->first.weight(); }

FormalSeries FormalSeries::operator+(const FormalSeries& o) const {
  FormalSeries out = truncated(o.truncation_);
  for (const auto& [t, c] : o.terms_) out.add_term(t, c);
  return out;
}

FormalSeries FormalSeries::operator-() const {
  FormalSeries out(truncation_);
  for (const auto& [t, c] : terms_) out.terms_.emplace(t, -c);
  return out;
}

FormalSeries FormalSeries::operator-(const FormalSeries& o) const { return *this + (-o); }

FormalSeries& FormalSeries::operator+=(const FormalSeries& o) {
  *this = *this + o;
  return *this;
}

FormalSeries FormalSeries::operator*(const FormalSeries& o) const {
  FormalSeries out(std::min(truncation_, o.truncation_));
  for (const auto& [ta, ca] : terms_) {
    int wa = ta.weight();
    for (const auto& [tb, cb] : o.terms_) {
      if (wa + tb.weight() > out.truncation_) break;  // terms are weight ordered
      SeriesTerm t;
      t.couplings.reserve(ta.couplings.size() + tb.couplings.size());
      std::merge(ta.couplings.begin(), ta.couplings.end(), tb.couplings.begin(), tb.couplings.end(),
                 std::back_inserter(t.couplings));
      t.lambda = ta.lambda + tb.lambda;
      out.add_term(t, ca * cb);
    }
  }
  return out;
}

FormalSeries FormalSeries::operator*(const Rational& c) const {
  FormalSeries out(truncation_);
  if (hopfflow::is_zero(c)) return out;
  for (const auto& [t, v] : terms_) out.terms_.emplace(t, v * c);
  return out;
}

FormalSeries FormalSeries::shift_lambda(int k) const {
  FormalSeries out(truncation_);
  for (const auto& [term, c] : terms_) {
    SeriesTerm t = term;
    t.lambda += k;
    out.terms_.emplace(t, c);
  }
  return out;
}

FormalSeries FormalSeries::at_lambda_one() const {
  FormalSeries out(truncation_);
  for (const auto& [term, c] : terms_) {
    SeriesTerm t = term;
    t.lambda = 0;
    out.add_term(t, c);
  }
  return out;
}

FormalSeries FormalSeries::derivative(const Coupling& c) const {
  // d/dC lowers the weight by |C|, so the result is known to a lower order
  int tr = truncation_ == kExact ? kExact : truncation_ - static_cast<int>(c.size());
  FormalSeries out(tr);
  for (const auto& [t, v] : terms_) {
    auto n = std::count(t.couplings.begin(), t.couplings.end(), c);
    if (n == 0) continue;
    SeriesTerm d = t;
    d.couplings.erase(std::find(d.couplings.begin(), d.couplings.end(), c));
    out.add_term(d, v * static_cast<long>(n));
  }
  return out;
}

FormalSeries series_exp(const FormalSeries& x) {
  if (!x.constant_part().is_zero()) fail(ErrorCode::Argument, "exp needs a series without weight-zero part");
  if (x.truncation() == FormalSeries::kExact && !x.is_zero())
    fail(ErrorCode::Argument, "exp needs a truncated series");
  FormalSeries result = FormalSeries::constant(1, x.truncation());
  FormalSeries power = result;
  for (unsigned n = 1; !x.is_zero(); ++n) {
    power = power * x * Rational(1, n);
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

FormalSeries series_log(const FormalSeries& x) {
  FormalSeries one = FormalSeries::constant(1, x.truncation());
  if (!(x.constant_part() == one)) fail(ErrorCode::Argument, "log needs weight-zero part equal to 1");
  FormalSeries y = x - one;
  if (y.is_zero()) return FormalSeries(x.truncation());
  if (x.truncation() == FormalSeries::kExact) fail(ErrorCode::Argument, "log needs a truncated series");
  FormalSeries result(x.truncation()), power = one;
  for (long n = 1;; ++n) {
    power = power * y;
    if (power.is_zero()) break;
    result += power * Rational(n % 2 ? 1 : -1, n);
  }
  return result;
}

std::vector<SeriesDiffEntry> series_diff(const FormalSeries& a, const FormalSeries& b) {
  int w = std::min(a.truncation(), b.truncation());
  auto ta = a.truncated(w), tb = b.truncated(w);
  std::vector<SeriesDiffEntry> out;
  std::map<SeriesTerm, std::pair<Rational, Rational>, TermLess> all;
  for (const auto& [t, c] : ta.terms()) all[t].first = c;
  for (const auto& [t, c] : tb.terms()) all[t].second = c;
  for (const auto& [t, p] : all)
    if (p.first != p.second) out.push_back({t, p.first, p.second});
  return out;
}

int ModelData::max_rank() const {
  int r = 0;
  for (const auto& [c, v] : couplings) r = std::max(r, static_cast<int>(c.size()));
  return r;
}

bool ModelData::has_rank(int k) const {
  return std::any_of(couplings.begin(), couplings.end(),
                     [&](const auto& kv) { return static_cast<int>(kv.first.size()) == k; });
}

std::vector<Coupling> ModelData::active_of_rank(int k) const {
  std::vector<Coupling> out;
  for (const auto& [c, v] : couplings)
    if (static_cast<int>(c.size()) == k) out.push_back(c);
  return out;
}

std::vector<std::vector<Rational>> invert_matrix(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) fail(ErrorCode::Invalid, "metric is not square");
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && hopfflow::is_zero(m[piv][col])) ++piv;
    if (piv == n) fail(ErrorCode::Invalid, "metric is singular");
    std::swap(m[piv], m[col]);
    Rational inv = 1 / m[col][col];
    for (auto& x : m[col]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || hopfflow::is_zero(m[r][col])) continue;
      Rational f = m[r][col];
      for (std::size_t j = 0; j < 2 * n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::vector<std::vector<Rational>> out(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
  return out;
}

ModelData make_model(std::vector<std::string> colors, std::vector<std::vector<Rational>> g,
                     std::map<Coupling, Rational> couplings) {
  ModelData m;
  m.colors = std::move(colors);
  if (m.colors.empty()) fail(ErrorCode::Invalid, "model needs at least one color");
  if (g.size() != m.colors.size()) fail(ErrorCode::Invalid, "metric size does not match the color set");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != g.size()) fail(ErrorCode::Invalid, "metric is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) fail(ErrorCode::Invalid, "metric is not symmetric");
  }
  m.g = std::move(g);
  m.ginv = invert_matrix(m.g);
  for (const auto& [key, v] : couplings) {
    Coupling c = key;
    if (c.empty()) fail(ErrorCode::Invalid, "coupling of rank 0");
    for (int a : c)
      if (a < 0 || static_cast<std::size_t>(a) >= m.colors.size())
        fail(ErrorCode::Invalid, "coupling index out of range");
    std::sort(c.begin(), c.end());
    if (auto it = m.couplings.find(c); it != m.couplings.end() && it->second != v)
      fail(ErrorCode::Invalid, "coupling " + coupling_name(c, &m) + " is not symmetric");
    if (!hopfflow::is_zero(v)) m.couplings[c] = v;
  }
  return m;
}

namespace {

Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  fail(ErrorCode::Parse, "expected a rational string, got " + v.dump());
}

int color_index(const ModelData& m, const std::string& name) {
  for (std::size_t i = 0; i < m.colors.size(); ++i)
    if (m.colors[i] == name) return static_cast<int>(i);
  // numeric position as a fallback
  char* end = nullptr;
  long k = std::strtol(name.c_str(), &end, 10);
  if (end != name.c_str() && *end == '\0' && k >= 0 && static_cast<std::size_t>(k) < m.colors.size())
    return static_cast<int>(k);
  fail(ErrorCode::Parse, "unknown color '" + name + "'");
}

Coupling parse_coupling(const ModelData& m, const std::string& key) {
  Coupling c;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    c.push_back(color_index(m, part));
  }
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

ModelData model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("colors") || !j.contains("g"))
    fail(ErrorCode::Parse, "model: needs 'colors' and 'g'");
  std::vector<std::string> colors;
  for (const auto& c : j.at("colors")) colors.push_back(c.is_string() ? c.get<std::string>() : c.dump());
  std::vector<std::vector<Rational>> g;
  for (const auto& row : j.at("g")) {
    if (!row.is_array()) fail(ErrorCode::Parse, "model: 'g' must be a matrix");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(json_rational(v));
    g.push_back(std::move(r));
  }
  ModelData shell;
  shell.colors = colors;
  std::map<Coupling, Rational> cs;
  if (j.contains("C")) {
    if (!j.at("C").is_object()) fail(ErrorCode::Parse, "model: 'C' must be an object");
    for (const auto& [k, v] : j.at("C").items()) {
      auto c = parse_coupling(shell, k);
      Rational val = json_rational(v);
      if (auto it = cs.find(c); it != cs.end() && it->second != val)
        fail(ErrorCode::Invalid, "coupling '" + k + "' is not symmetric under index permutation");
      cs[c] = val;
    }
  }
  return make_model(std::move(colors), std::move(g), std::move(cs));
}

json model_to_json(const ModelData& m) {
  json j;
  j["colors"] = m.colors;
  json g = json::array();
  for (const auto& row : m.g) {
    json r = json::array();
    for (const auto& v : row) r.push_back(format_rational(v));
    g.push_back(r);
  }
  j["g"] = g;
  json c = json::object();
  for (const auto& [k, v] : m.couplings) c[coupling_name(k, &m)] = format_rational(v);
  j["C"] = c;
  return j;
}

std::map<int, Rational> specialize(const FormalSeries& s, const ModelData& m) {
  std::map<int, Rational> out;
  for (const auto& [t, c] : s.terms()) {
    Rational v = c;
    for (const auto& k : t.couplings) {
      auto it = m.couplings.find(k);
      v *= it == m.couplings.end() ? Rational(0) : it->second;
    }
    if (!hopfflow::is_zero(v)) out[t.lambda] += v;
  }
  for (auto it = out.begin(); it != out.end();) it = hopfflow::is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

std::string coupling_name(const Coupling& c, const ModelData* m) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += m ? m->colors[c[i]] : std::to_string(c[i]);
  }
  return s;
}

std::string format_term(const SeriesTerm& t, const ModelData* m) {
  std::string s;
  for (std::size_t i = 0; i < t.couplings.size();) {
    std::size_t j = i;
    while (j < t.couplings.size() && t.couplings[j] == t.couplings[i]) ++j;
    if (!s.empty()) s += " ";
    s += "C[" + coupling_name(t.couplings[i], m) + "]";
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  if (t.lambda != 0) s += (s.empty() ? "" : " ") + std::string("lambda^") + std::to_string(t.lambda);
  return s.empty() ? "1" : s;
}

json series_to_json(const FormalSeries& s, const ModelData* m) {
  json terms = json::array();
  for (const auto& [t, c] : s.terms()) {
    json cs = json::array();
    for (const auto& k : t.couplings) cs.push_back(coupling_name(k, m));
    terms.push_back({{"couplings", cs}, {"lambda", t.lambda}, {"coeff", format_rational(c)}});
  }
  json j;
  j["truncation"] = s.truncation() == FormalSeries::kExact ? json(nullptr) : json(s.truncation());
  j["terms"] = terms;
  return j;
}

FormalSeries series_from_json(const json& j, const ModelData* m) {
  if (!j.is_object() || !j.contains("terms")) fail(ErrorCode::Parse, "series: needs 'terms'");
  int tr = j.contains("truncation") && !j.at("truncation").is_null() ? j.at("truncation").get<int>()
                                                                      : FormalSeries::kExact;
  FormalSeries s(tr);
  ModelData shell;
  for (const auto& t : j.at("terms")) {
    SeriesTerm term;
    for (const auto& c : t.at("couplings")) {
      auto name = c.get<std::string>();
      if (m) {
        term.couplings.push_back(parse_coupling(*m, name));
      } else {
        Coupling k;
        std::stringstream ss(name);
        std::string part;
        while (std::getline(ss, part, ',')) k.push_back(std::stoi(part));
        std::sort(k.begin(), k.end());
        term.couplings.push_back(k);
      }
    }
    std::sort(term.couplings.begin(), term.couplings.end());
    term.lambda = t.value("lambda", 0);
    s.add_term(term, json_rational(t.at("coeff")));
  }
  return s;
}

std::string format_series(const FormalSeries& s, const ModelData* m) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [t, c] : s.terms()) {
    if (!out.empty()) out += "\n";
    out += format_rational_short(c) + "  " + format_term(t, m);
  }
  return out;
}

}  // namespace hopfflow
