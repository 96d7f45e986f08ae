#include "swanlab/local_poly.hpp"

#include <limits>
#include <sstream>

#include "swanlab/expr_parser.hpp"

namespace swanlab {

namespace {

constexpr int kZeroVal = std::numeric_limits<int>::max() / 4;

Mono mono_add(const Mono& a, const Mono& b) {
  Mono r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = (int16_t)(a[i] + b[i]);
  return r;
}

}  // namespace

LocalPoly::LocalPoly(LocalFieldPtr F, int m) : F_(std::move(F)), m_(m) {
  if (m < 0 || m > kMaxVars) throw Error(Errc::invalid_argument, "at most 4 variables are supported");
}

LocalPoly LocalPoly::constant(const LocalElem& c, int m) {
  LocalPoly r(c.field(), m);
  r.add_term(Mono{}, c);
  return r;
}

LocalPoly LocalPoly::var(const LocalFieldPtr& F, int m, int i) {
  if (i < 0 || i >= m) throw Error(Errc::parse_error, "variable index out of range");
  LocalPoly r(F, m);
  Mono e{};
  e[i] = 1;
  r.add_term(e, LocalElem::one(F));
  return r;
}

void LocalPoly::add_term(const Mono& e, const LocalElem& c) {
  auto it = t_.find(e);
  if (it == t_.end()) {
    if (!c.is_zero()) t_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) t_.erase(it);
}

LocalPoly LocalPoly::operator+(const LocalPoly& o) const {
  LocalPoly r = *this;
  if (!r.F_) r = LocalPoly(o.F_, o.m_);
  for (const auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

LocalPoly LocalPoly::operator-() const {
  LocalPoly r(F_, m_);
  for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
  return r;
}

LocalPoly LocalPoly::operator-(const LocalPoly& o) const { return *this + (-o); }

LocalPoly LocalPoly::operator*(const LocalPoly& o) const {
  LocalPoly r(F_, std::max(m_, o.m_));
  for (const auto& [ea, ca] : t_)
    for (const auto& [eb, cb] : o.t_) r.add_term(mono_add(ea, eb), ca * cb);
  return r;
}

LocalPoly LocalPoly::scale(const LocalElem& c) const {
  LocalPoly r(F_, m_);
  for (const auto& [e, a] : t_) r.add_term(e, a * c);
  return r;
}

LocalPoly LocalPoly::pow(int k) const {
  if (k < 0) throw Error(Errc::invalid_argument, "negative power of a polynomial");
  LocalPoly r = constant(LocalElem::one(F_), m_), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

bool LocalPoly::same(const LocalPoly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (auto a = t_.begin(), b = o.t_.begin(); a != t_.end(); ++a, ++b)
    if (a->first != b->first || !a->second.equals(b->second)) return false;
  return true;
}

int LocalPoly::valuation() const {
  int v = kZeroVal;
  for (const auto& [e, c] : t_) v = std::min(v, c.valuation());
  return v;
}

Poly LocalPoly::reduce(int shift) const {
  std::vector<PTerm> out;
  for (const auto& [e, c] : t_) {
    int v = c.valuation();
    if (v < shift) throw Error(Errc::non_integral, "coefficient below the requested reduction level");
    if (v > shift) continue;
    out.push_back({e, c.mul_pi_pow(-shift).residue()});
  }
  return Poly::from_terms(F_->residue(), m_, std::move(out));
}

LocalElem LocalPoly::eval(const std::vector<LocalElem>& pt, const CoeffMap& embed) const {
  if ((int)pt.size() < m_) throw Error(Errc::invalid_argument, "point has too few coordinates");
  const LocalFieldPtr& G = m_ ? pt[0].field() : (embed ? embed(LocalElem::one(F_)).field() : F_);
  LocalElem acc = LocalElem::zero(G);
  // Powers are cached per variable; monomial counts are tiny.
  std::vector<std::vector<LocalElem>> pw(m_);
  for (const auto& [e, c] : t_) {
    LocalElem term = embed ? embed(c) : c;
    for (int i = 0; i < m_; ++i) {
      auto& row = pw[i];
      if (row.empty()) row.push_back(LocalElem::one(G));
      while ((int)row.size() <= e[i]) row.push_back(row.back() * pt[i]);
      if (e[i]) term = term * row[e[i]];
    }
    acc = acc + term;
  }
  return acc;
}

LocalPoly LocalPoly::map_coeffs(const LocalFieldPtr& G, const CoeffMap& embed) const {
  LocalPoly r(G, m_);
  for (const auto& [e, c] : t_) r.add_term(e, embed(c));
  return r;
}

std::string LocalPoly::str() const {
  if (t_.empty()) return "0";
  std::vector<std::pair<Mono, LocalElem>> terms(t_.begin(), t_.end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    if (!first) os << " + ";
    first = false;
    std::string cs = c.str();
    cs = cs.substr(0, cs.find(" + O("));
    std::vector<std::string> parts;
    if (cs != "1" || mono_degree(e) == 0) parts.push_back(cs.find('+') == std::string::npos ? cs : "(" + cs + ")");
    for (int i = 0; i < m_; ++i)
      if (e[i]) parts.push_back("u" + std::to_string(i + 1) + (e[i] > 1 ? "^" + std::to_string(e[i]) : ""));
    for (size_t k = 0; k < parts.size(); ++k) os << (k ? "*" : "") << parts[k];
  }
  return os.str();
}

LocalFrac::LocalFrac(LocalPoly n, LocalPoly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw Error(Errc::pole_at_point, "zero denominator");
}

LocalFrac::LocalFrac(LocalPoly n)
    : num_(n), den_(LocalPoly::constant(LocalElem::one(n.field()), n.nvars())) {}

LocalFrac LocalFrac::constant(const LocalElem& c, int m) { return LocalFrac(LocalPoly::constant(c, m)); }

LocalFrac LocalFrac::operator+(const LocalFrac& o) const {
  if (den_.same(o.den_)) return LocalFrac(num_ + o.num_, den_);
  return LocalFrac(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

LocalFrac LocalFrac::operator-() const { return LocalFrac(-num_, den_); }
LocalFrac LocalFrac::operator-(const LocalFrac& o) const { return *this + (-o); }
LocalFrac LocalFrac::operator*(const LocalFrac& o) const { return LocalFrac(num_ * o.num_, den_ * o.den_); }

LocalFrac LocalFrac::operator/(const LocalFrac& o) const {
  if (o.num_.is_zero()) throw Error(Errc::pole_at_point, "division by zero");
  return LocalFrac(num_ * o.den_, den_ * o.num_);
}

LocalFrac LocalFrac::pow(long long k) const {
  if (k < 0) {
    if (num_.is_zero()) throw Error(Errc::pole_at_point, "negative power of zero");
    return LocalFrac(den_.pow((int)-k), num_.pow((int)-k));
  }
  return LocalFrac(num_.pow((int)k), den_.pow((int)k));
}

RatFunc LocalFrac::leading_reduction() const {
  if (num_.is_zero()) throw Error(Errc::zero_at_point, "zero has no leading term");
  return RatFunc(num_.reduce(num_.valuation()), den_.reduce(den_.valuation()));
}

LocalFrac LocalFrac::map_coeffs(const LocalFieldPtr& G, const LocalPoly::CoeffMap& embed) const {
  return LocalFrac(num_.map_coeffs(G, embed), den_.map_coeffs(G, embed));
}

std::string LocalFrac::str() const {
  std::string n = num_.str();
  if (den_.terms().size() == 1 && den_.terms().begin()->first == Mono{} &&
      den_.terms().begin()->second.equals(LocalElem::one(field())))
    return n;
  return "(" + n + ")/(" + den_.str() + ")";
}

LocalFrac LocalFrac::parse(const std::string& s, const LocalFieldPtr& F, int m) {
  auto leaf = [&](const Token& t) -> LocalFrac {
    if (t.kind == Token::Number) return constant(LocalElem::from_int(F, std::stoll(t.text)), m);
    if (t.text == "pi") return constant(LocalElem::pi(F), m);
    if (t.text == "w") return constant(LocalElem::omega(F), m);
    if (t.text == "zeta") return constant(F->zeta(), m);
    if (t.text.size() >= 2 && (t.text[0] == 'u' || t.text[0] == 'x')) {
      int i = 0;
      try {
        i = std::stoi(t.text.substr(1));
      } catch (const std::exception&) {
        throw Error(Errc::parse_error, "unknown identifier '" + t.text + "'");
      }
      if (i < 1 || i > m) throw Error(Errc::parse_error, "variable '" + t.text + "' out of range");
      return LocalFrac(LocalPoly::var(F, m, i - 1));
    }
    throw Error(Errc::parse_error, "unknown identifier '" + t.text + "'");
  };
  ExprParser<LocalFrac> P(tokenize(s), leaf, [](const LocalFrac& b, long long k) { return b.pow(k); });
  return P.parse();
}

LocalFrac LocalFrac::lift(const RatFunc& f, const LocalFieldPtr& F) {
  const int m = f.nvars();
  auto lift_poly = [&](const Poly& p) {
    LocalPoly r(F, m);
    for (const auto& t : p.terms()) {
      LocalPoly mono = LocalPoly::constant(teichmuller(F, t.c), m);
      for (int i = 0; i < m; ++i)
        if (t.e[i]) mono = mono * LocalPoly::var(F, m, i).pow(t.e[i]);
      r = r + mono;
    }
    return r;
  };
  return LocalFrac(lift_poly(f.num()), lift_poly(f.den()));
}

}  // namespace swanlab
