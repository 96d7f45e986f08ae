#include "swanlab/ratfunc.hpp"

#include <algorithm>

#include "swanlab/errors.hpp"
#include "swanlab/expr_parser.hpp"

namespace swanlab {

int mono_degree(const Mono& a) {
  int d = 0;
  for (auto x : a) d += x;
  return d;
}

bool grlex_greater(const Mono& a, const Mono& b) {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

static Mono mono_add(const Mono& a, const Mono& b) {
  Mono r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = int16_t(a[i] + b[i]);
  return r;
}

static bool mono_divides(const Mono& a, const Mono& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(FqPtr k, int m) : k_(std::move(k)), m_(m) {
  if (m < 0 || m > kMaxVars) throw Error(Errc::invalid_argument, "variable count must be in 0..4");
}

Poly Poly::constant(FqPtr k, int m, int c) { return monomial(std::move(k), m, Mono{}, c); }

Poly Poly::var(FqPtr k, int m, int i) {
  if (i < 0 || i >= m) throw Error(Errc::invalid_argument, "variable index out of range");
  Mono e{};
  e[i] = 1;
  return monomial(std::move(k), m, e, 1);
}

Poly Poly::monomial(FqPtr k, int m, const Mono& e, int c) {
  Poly r(std::move(k), m);
  if (c != 0) r.t_.push_back({e, c});
  return r;
}

Poly Poly::from_terms(FqPtr k, int m, std::vector<PTerm> t) {
  Poly r(std::move(k), m);
  r.t_ = std::move(t);
  r.normalize();
  return r;
}

void Poly::normalize() {
  std::sort(t_.begin(), t_.end(),
            [](const PTerm& a, const PTerm& b) { return grlex_greater(a.e, b.e); });
  std::vector<PTerm> out;
  out.reserve(t_.size());
  for (const auto& t : t_) {
    if (!out.empty() && out.back().e == t.e)
      out.back().c = k_->add(out.back().c, t.c);
    else
      out.push_back(t);
    if (!out.empty() && out.back().c == 0) out.pop_back();
  }
  t_.swap(out);
}

bool Poly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && mono_degree(t_[0].e) == 0);
}

int Poly::constant_term() const {
  if (t_.empty()) return 0;
  const auto& last = t_.back();
  return mono_degree(last.e) == 0 ? last.c : 0;
}

int Poly::total_degree() const { return t_.empty() ? -1 : mono_degree(t_.front().e); }

int Poly::degree_in(int i) const {
  int d = t_.empty() ? -1 : 0;
  for (const auto& t : t_) d = std::max(d, (int)t.e[i]);
  return d;
}

int Poly::min_degree_in(int i) const {
  if (t_.empty()) return 0;
  int d = t_.front().e[i];
  for (const auto& t : t_) d = std::min(d, (int)t.e[i]);
  return d;
}

Poly Poly::operator+(const Poly& o) const {
  if (!k_) return o;
  if (!o.k_) return *this;
  Poly r(k_, std::max(m_, o.m_));
  r.t_.reserve(t_.size() + o.t_.size());
  size_t i = 0, j = 0;
  while (i < t_.size() || j < o.t_.size()) {
    if (j == o.t_.size() || (i < t_.size() && grlex_greater(t_[i].e, o.t_[j].e))) {
      r.t_.push_back(t_[i++]);
    } else if (i == t_.size() || grlex_greater(o.t_[j].e, t_[i].e)) {
      r.t_.push_back(o.t_[j++]);
    } else {
      int c = k_->add(t_[i].c, o.t_[j].c);
      if (c) r.t_.push_back({t_[i].e, c});
      ++i, ++j;
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.c = k_->neg(t.c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  std::vector<PTerm> t;
  t.reserve(t_.size() * o.t_.size());
  for (const auto& a : t_)
    for (const auto& b : o.t_) t.push_back({mono_add(a.e, b.e), k_->mul(a.c, b.c)});
  return from_terms(k_ ? k_ : o.k_, std::max(m_, o.m_), std::move(t));
}

Poly Poly::scale(int c) const {
  if (c == 0) return Poly(k_, m_);
  Poly r = *this;
  for (auto& t : r.t_) t.c = k_->mul(t.c, c);
  return r;
}

Poly Poly::mul_mono(const Mono& e, int c) const {
  if (c == 0) return Poly(k_, m_);
  Poly r = *this;
  for (auto& t : r.t_) {
    t.e = mono_add(t.e, e);
    t.c = k_->mul(t.c, c);
  }
  return r;
}

Poly Poly::pow(int k) const {
  if (k < 0) throw Error(Errc::invalid_argument, "negative power of a polynomial");
  Poly r = constant(k_, m_, 1), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (t_.size() != o.t_.size()) return false;
  for (size_t i = 0; i < t_.size(); ++i)
    if (t_[i].e != o.t_[i].e || t_[i].c != o.t_[i].c) return false;
  return true;
}

Poly Poly::divexact(const Poly& d, bool& ok) const {
  ok = true;
  if (d.is_zero()) throw Error(Errc::invalid_argument, "division by zero polynomial");
  auto cmp = [](const Mono& a, const Mono& b) { return grlex_greater(a, b); };
  std::map<Mono, int, decltype(cmp)> r(cmp);
  for (const auto& t : t_) r.emplace(t.e, t.c);
  Poly q(k_, m_);
  const PTerm& ld = d.lead();
  int inv = k_->inv(ld.c);
  while (!r.empty()) {
    auto [le, lc] = *r.begin();
    if (!mono_divides(ld.e, le)) {
      ok = false;
      return q;
    }
    Mono e{};
    for (int i = 0; i < kMaxVars; ++i) e[i] = int16_t(le[i] - ld.e[i]);
    int c = k_->mul(lc, inv);
    q.t_.push_back({e, c});  // quotient terms arrive in decreasing order
    for (const auto& t : d.t_) {
      Mono me = mono_add(t.e, e);
      int sub = k_->mul(t.c, c);
      auto it = r.find(me);
      if (it == r.end()) {
        r.emplace(me, k_->neg(sub));
      } else {
        it->second = k_->sub(it->second, sub);
        if (!it->second) r.erase(it);
      }
    }
  }
  return q;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(k_->inv(lead().c));
}

Poly Poly::derivative(int i) const {
  std::vector<PTerm> t;
  for (const auto& a : t_) {
    if (a.e[i] == 0) continue;
    int c = k_->mul(a.c, k_->from_int(a.e[i]));
    if (!c) continue;
    Mono e = a.e;
    --e[i];
    t.push_back({e, c});
  }
  return from_terms(k_, m_, std::move(t));
}

int Poly::eval(const std::vector<int>& pt) const {
  int s = 0;
  for (const auto& a : t_) {
    int v = a.c;
    for (int i = 0; i < m_ && v; ++i)
      if (a.e[i]) v = k_->mul(v, k_->pow(pt.at(i), a.e[i]));
    s = k_->add(s, v);
  }
  return s;
}

Poly Poly::eval_var(int i, int c) const {
  std::vector<PTerm> t;
  for (const auto& a : t_) {
    int v = a.e[i] ? k_->mul(a.c, k_->pow(c, a.e[i])) : a.c;
    if (!v) continue;
    Mono e = a.e;
    e[i] = 0;
    t.push_back({e, v});
  }
  return from_terms(k_, m_, std::move(t));
}

std::map<int, Poly> Poly::coeffs_in(int i) const {
  std::map<int, std::vector<PTerm>> buckets;
  for (const auto& a : t_) {
    Mono e = a.e;
    int d = e[i];
    e[i] = 0;
    buckets[d].push_back({e, a.c});
  }
  std::map<int, Poly> out;
  for (auto& [d, ts] : buckets) out.emplace(d, from_terms(k_, m_, std::move(ts)));
  return out;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
  int mm = images.empty() ? m_ : images[0].nvars();
  Poly r(k_, mm);
  std::vector<std::vector<Poly>> pw(m_);
  for (const auto& a : t_) {
    Poly term = constant(k_, mm, a.c);
    for (int i = 0; i < m_; ++i) {
      int d = a.e[i];
      if (!d) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(constant(k_, mm, 1));
      while ((int)cache.size() <= d) cache.push_back(cache.back() * images.at(i));
      term = term * cache[d];
    }
    r = r + term;
  }
  return r;
}

static std::string mono_str(const Mono& e, int m) {
  std::string s;
  for (int i = 0; i < m; ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& a : t_) {
    if (!s.empty()) s += "+";
    std::string ms = mono_str(a.e, m_);
    std::string cs = k_->to_string(a.c);
    bool compound = cs.find('+') != std::string::npos;
    if (ms.empty())
      s += compound ? "(" + cs + ")" : cs;
    else if (a.c == 1)
      s += ms;
    else
      s += (compound ? "(" + cs + ")" : cs) + "*" + ms;
  }
  return s;
}

// ---------------------------------------------------------------- gcd

static Poly exact(const Poly& a, const Poly& d) {
  bool ok;
  Poly q = a.divexact(d, ok);
  if (!ok) throw Error(Errc::invalid_argument, "internal: inexact polynomial division");
  return q;
}

static Poly content_in(const Poly& a, int v) {
  Poly c(a.field(), a.nvars());
  for (const auto& [d, co] : a.coeffs_in(v)) {
    c = gcd(c, co);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

static Poly lead_coeff_in(const Poly& a, int v) { return a.coeffs_in(v).rbegin()->second; }

// lc(b)^(deg r - deg b + 1) * r reduced modulo b in the variable v.
static Poly prem(Poly r, const Poly& b, int v) {
  int db = b.degree_in(v);
  int steps = r.degree_in(v) - db + 1;
  Poly lcb = lead_coeff_in(b, v);
  while (!r.is_zero() && r.degree_in(v) >= db) {
    int d = r.degree_in(v);
    Poly lcr = lead_coeff_in(r, v);
    Mono e{};
    e[v] = int16_t(d - db);
    r = lcb * r - (lcr * b).mul_mono(e, 1);
    --steps;
  }
  if (steps > 0 && !r.is_zero()) r = r * lcb.pow(steps);
  return r;
}

static Mono min_exponents(const Poly& a) {
  Mono e = a.lead().e;
  for (const auto& t : a.terms())
    for (int i = 0; i < kMaxVars; ++i) e[i] = std::min(e[i], t.e[i]);
  return e;
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const FqPtr& k = a.field();
  int m = std::max(a.nvars(), b.nvars());
  if (a.is_constant() || b.is_constant()) return Poly::constant(k, m, 1);
  // Monomial contents split off cheaply.
  Mono ea = min_exponents(a), eb = min_exponents(b), em{};
  bool shifted = false;
  for (int i = 0; i < kMaxVars; ++i) {
    em[i] = std::min(ea[i], eb[i]);
    shifted = shifted || ea[i] || eb[i];
  }
  if (shifted) {
    Poly ma = Poly::monomial(k, m, ea, 1), mb = Poly::monomial(k, m, eb, 1);
    Poly g = gcd(exact(a, ma), exact(b, mb));
    return g.mul_mono(em, 1);
  }
  if (a.is_monomial() || b.is_monomial()) return Poly::constant(k, m, 1);
  // A variable present in only one argument divides out through the content.
  for (int i = 0; i < kMaxVars; ++i) {
    int da = a.degree_in(i), db = b.degree_in(i);
    if (da > 0 && db == 0) return gcd(content_in(a, i), b);
    if (db > 0 && da == 0) return gcd(a, content_in(b, i));
  }
  int v = -1, best = 1 << 30;
  for (int i = 0; i < kMaxVars; ++i) {
    int da = a.degree_in(i);
    if (da > 0 && std::max(da, b.degree_in(i)) < best) best = std::max(da, b.degree_in(i)), v = i;
  }
  Poly ca = content_in(a, v), cb = content_in(b, v);
  Poly pa = exact(a, ca), pb = exact(b, cb);
  Poly c = gcd(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  // Subresultant remainder sequence keeps coefficient growth polynomial.
  Poly g = Poly::constant(k, m, 1), h = Poly::constant(k, m, 1);
  while (true) {
    int delta = pa.degree_in(v) - pb.degree_in(v);
    Poly r = prem(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Poly::constant(k, m, 1);
      break;
    }
    pa = pb;
    pb = exact(r, g * h.pow(delta));
    g = lead_coeff_in(pa, v);
    if (delta == 0) continue;
    h = delta == 1 ? g : exact(g.pow(delta), h.pow(delta - 1));
  }
  Poly res = pb.is_constant() ? pb : exact(pb, content_in(pb, v));
  return (c * res).monic();
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(FqPtr k, int m) : num_(k, m), den_(Poly::constant(k, m, 1)) {}

RatFunc::RatFunc(Poly n) : num_(std::move(n)) { den_ = Poly::constant(num_.field(), num_.nvars(), 1); }

RatFunc::RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw Error(Errc::invalid_argument, "zero denominator");
  normalize();
}

RatFunc RatFunc::constant(FqPtr k, int m, int c) { return RatFunc(Poly::constant(std::move(k), m, c)); }

RatFunc RatFunc::var(FqPtr k, int m, int i) { return RatFunc(Poly::var(std::move(k), m, i)); }

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), num_.nvars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    Poly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact(num_, g);
      den_ = exact(den_, g);
    }
  }
  int lc = den_.lead().c;
  if (lc != 1) {
    int inv = num_.field()->inv(lc);
    num_ = num_.scale(inv);
    den_ = den_.scale(inv);
  }
}

int RatFunc::constant_value() const {
  return num_.field()->div(num_.constant_term(), den_.constant_term());
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  if (den_.is_constant()) return reduced(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_constant()) return reduced(num_ + o.num_ * den_, den_);
  Poly g = gcd(den_, o.den_);
  Poly a = exact(den_, g), b = exact(o.den_, g);
  // Only factors of g can cancel against the new numerator.
  Poly n = num_ * b + o.num_ * a;
  Poly h = gcd(n, g);
  if (h.is_constant()) return reduced(n, a * o.den_);
  return reduced(exact(n, h), exact(a * o.den_, h));
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc(field(), std::max(nvars(), o.nvars()));
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  return reduced(exact(num_, g1) * exact(o.num_, g2), exact(den_, g2) * exact(o.den_, g1));
}

RatFunc RatFunc::reduced(Poly n, Poly d) {
  RatFunc r;
  r.num_ = std::move(n);
  r.den_ = std::move(d);
  if (r.num_.is_zero()) {
    r.den_ = Poly::constant(r.num_.field(), r.num_.nvars(), 1);
    return r;
  }
  int lc = r.den_.lead().c;
  if (lc != 1) {
    int inv = r.num_.field()->inv(lc);
    r.num_ = r.num_.scale(inv);
    r.den_ = r.den_.scale(inv);
  }
  return r;
}

RatFunc RatFunc::inv() const {
  if (is_zero()) throw Error(Errc::invalid_argument, "division by zero");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

RatFunc RatFunc::scale(int c) const {
  if (c == 0) return RatFunc(field(), nvars());
  RatFunc r = *this;
  r.num_ = r.num_.scale(c);
  return r;
}

RatFunc RatFunc::pow(long long k) const {
  if (k < 0) return inv().pow(-k);
  RatFunc r;
  r.num_ = num_.pow((int)k);
  r.den_ = den_.pow((int)k);
  return r;
}

RatFunc RatFunc::derivative(int i) const {
  Poly n = num_.derivative(i) * den_ - num_ * den_.derivative(i);
  return RatFunc(n, den_ * den_);
}

bool RatFunc::regular_at(const std::vector<int>& pt) const { return den_.eval(pt) != 0; }

int RatFunc::eval(const std::vector<int>& pt) const {
  int d = den_.eval(pt);
  if (d == 0) throw Error(Errc::pole_at_point, "denominator vanishes at point");
  return field()->div(num_.eval(pt), d);
}

bool RatFunc::regular_along(int i, int c) const { return !den_.eval_var(i, c).is_zero(); }

RatFunc RatFunc::eval_var(int i, int c) const {
  Poly d = den_.eval_var(i, c);
  if (d.is_zero()) throw Error(Errc::pole_at_point, "denominator vanishes on x" + std::to_string(i + 1) + " = const");
  return RatFunc(num_.eval_var(i, c), d);
}

RatFunc RatFunc::compose(const std::vector<RatFunc>& images) const {
  const FqPtr& k = field();
  int mm = images.empty() ? nvars() : images[0].nvars();
  // Clear denominators of the images with their product so the substitution stays polynomial.
  auto sub = [&](const Poly& P) {
    RatFunc r(k, mm);
    std::vector<std::vector<RatFunc>> pw(nvars());
    for (const auto& t : P.terms()) {
      RatFunc term = RatFunc::constant(k, mm, t.c);
      for (int i = 0; i < nvars(); ++i) {
        int d = t.e[i];
        if (!d) continue;
        auto& cache = pw[i];
        if (cache.empty()) cache.push_back(RatFunc::constant(k, mm, 1));
        while ((int)cache.size() <= d) cache.push_back(cache.back() * images.at(i));
        term = term * cache[d];
      }
      r = r + term;
    }
    return r;
  };
  return sub(num_) / sub(den_);
}

std::string RatFunc::str() const {
  if (den_.is_constant()) return num_.str();
  std::string n = num_.str();
  const auto& nt = num_.terms();
  bool nsimple = nt.size() == 1 && n.find('+') == std::string::npos;
  std::string d = den_.str();
  bool dsimple = den_.terms().size() == 1 && d.find('*') == std::string::npos;
  return (nsimple ? n : "(" + n + ")") + "/" + (dsimple ? d : "(" + d + ")");
}

RatFunc RatFunc::parse(const std::string& s, FqPtr k, int m) {
  auto toks = tokenize(s);
  auto leaf = [&](const Token& t) -> RatFunc {
    if (t.kind == Token::Number) {
      long long v = 0;
      for (char ch : t.text) v = (v * 10 + (ch - '0')) % k->p();
      return RatFunc::constant(k, m, k->from_int(v));
    }
    if (t.text == "w") {
      if (k->f() == 1) throw Error(Errc::parse_error, "'w' needs a residue field of degree > 1");
      return RatFunc::constant(k, m, k->gen());
    }
    if (t.text.size() >= 2 && t.text[0] == 'x') {
      int i = std::atoi(t.text.c_str() + 1);
      if (i >= 1 && i <= m && t.text == "x" + std::to_string(i)) return RatFunc::var(k, m, i - 1);
    }
    throw Error(Errc::parse_error, "unknown identifier '" + t.text + "'");
  };
  auto pw = [](const RatFunc& b, long long e) { return b.pow(e); };
  try {
    return ExprParser<RatFunc>(std::move(toks), leaf, pw).parse();
  } catch (const Error& e) {
    if (e.errc() == Errc::invalid_argument) throw Error(Errc::parse_error, e.what());
    throw;
  }
}

}  // namespace swanlab
