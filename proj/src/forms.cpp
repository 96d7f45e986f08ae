#include "swanlab/forms.hpp"

#include <algorithm>
#include <cctype>

#include "swanlab/errors.hpp"
#include "swanlab/expr_parser.hpp"

namespace swanlab {

namespace {

// Rewrites "x<n>" to "<stem><n - shift>" in a printed polynomial.
std::string rename_vars(const std::string& s, const std::string& stem, int shift) {
  if (stem == "x" && shift == 0) return s;
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'x' && i + 1 < s.size() && std::isdigit((unsigned char)s[i + 1])) {
      size_t j = i + 1;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) ++j;
      out += stem + std::to_string(std::stoi(s.substr(i + 1, j - i - 1)) - shift);
      i = j - 1;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string coeff_times(const RatFunc& f, const std::string& basis, const std::string& stem, int shift) {
  std::string s;
  const Poly& n = f.num();
  if (!(n.is_constant() && n.constant_term() == 1)) {
    std::string ns = rename_vars(n.str(), stem, shift);
    bool compound = n.terms().size() > 1 || ns.find('+') != std::string::npos;
    s += (compound ? "(" + ns + ")" : ns) + "*";
  }
  s += basis;
  if (!f.den().is_constant()) {
    std::string ds = rename_vars(f.den().str(), stem, shift);
    bool simple = f.den().terms().size() == 1 && ds.find('*') == std::string::npos;
    s += "/" + (simple ? ds : "(" + ds + ")");
  }
  return s;
}

std::string join_terms(const std::vector<std::string>& t) {
  if (t.empty()) return "0";
  std::string s;
  for (const auto& x : t) s += (s.empty() ? "" : " + ") + x;
  return s;
}

std::string form1_str(const Form1& w, const std::vector<std::string>& names, const std::string& stem, int shift) {
  std::vector<std::string> t;
  for (int i = 0; i < w.nvars(); ++i)
    if (!w[i].is_zero()) t.push_back(coeff_times(w[i], names[i], stem, shift));
  return join_terms(t);
}

std::string form2_str(const Form2& w, const std::vector<std::string>& names, const std::string& stem, int shift) {
  std::vector<std::string> t;
  for (int i = 0; i < w.nvars(); ++i)
    for (int j = i + 1; j < w.nvars(); ++j) {
      RatFunc f = w.get(i, j);
      if (!f.is_zero()) t.push_back(coeff_times(f, names[i] + "^" + names[j], stem, shift));
    }
  return join_terms(t);
}

std::vector<std::string> d_names(const std::string& var, int m) {
  std::vector<std::string> v;
  for (int i = 0; i < m; ++i) v.push_back("d" + var + std::to_string(i + 1));
  return v;
}

// Value of a parsed expression: a function, a 1-form and a 2-form part.
struct FormExpr {
  RatFunc f0;
  Form1 w1;
  Form2 w2;

  bool pure_function() const { return w1.is_zero() && w2.is_zero(); }
  FormExpr operator+(const FormExpr& o) const { return {f0 + o.f0, w1 + o.w1, w2 + o.w2}; }
  FormExpr operator-(const FormExpr& o) const { return {f0 - o.f0, w1 - o.w1, w2 - o.w2}; }
  FormExpr operator-() const { return {-f0, -w1, -w2}; }
  FormExpr scaled(const RatFunc& g) const { return {f0 * g, w1 * g, w2 * g}; }
  FormExpr operator*(const FormExpr& o) const {
    if (pure_function()) return o.scaled(f0);
    if (o.pure_function()) return scaled(o.f0);
    throw Error(Errc::parse_error, "products of forms must be written with dxI^dxJ");
  }
  FormExpr operator/(const FormExpr& o) const {
    if (!o.pure_function()) throw Error(Errc::parse_error, "division by a form");
    if (o.f0.is_zero()) throw Error(Errc::parse_error, "division by zero");
    return scaled(o.f0.inv());
  }
};

int parse_dx(const std::string& s, int m) {
  if (s.size() < 3 || s.rfind("dx", 0) != 0) return -1;
  for (size_t i = 2; i < s.size(); ++i)
    if (!std::isdigit((unsigned char)s[i])) return -1;
  int i = std::stoi(s.substr(2));
  if (i < 1 || i > m || s != "dx" + std::to_string(i)) return -1;
  return i - 1;
}

FormExpr parse_form(const std::string& s, const FqPtr& k, int m) {
  auto leaf = [&](const Token& t) -> FormExpr {
    FormExpr v{RatFunc(k, m), Form1(k, m), Form2(k, m)};
    auto caret = t.text.find('^');
    if (t.kind == Token::Ident && caret != std::string::npos) {
      int a = parse_dx(t.text.substr(0, caret), m), b = parse_dx(t.text.substr(caret + 1), m);
      if (a < 0 || b < 0) throw Error(Errc::parse_error, "unknown basis form '" + t.text + "'");
      if (a != b) v.w2.set(a, b, RatFunc::constant(k, m, 1));
      return v;
    }
    if (t.kind == Token::Ident && t.text.rfind("dx", 0) == 0) {
      int a = parse_dx(t.text, m);
      if (a < 0) throw Error(Errc::parse_error, "unknown basis form '" + t.text + "'");
      v.w1 = Form1::dx(k, m, a);
      return v;
    }
    v.f0 = RatFunc::parse(t.text, k, m);
    return v;
  };
  auto pw = [](const FormExpr& b, long long e) {
    if (!b.pure_function()) throw Error(Errc::parse_error, "powers of forms");
    return FormExpr{b.f0.pow(e), b.w1, b.w2};
  };
  try {
    return ExprParser<FormExpr>(tokenize(s, true), leaf, pw).parse();
  } catch (const Error& e) {
    if (e.errc() == Errc::invalid_argument || e.errc() == Errc::pole_at_point) throw Error(Errc::parse_error, e.what());
    throw;
  }
}

void check_same(const FqPtr& a, const FqPtr& b, int ma, int mb) {
  if (!a || !b || !a->same(*b) || ma != mb) throw Error(Errc::invalid_argument, "forms over different rings");
}

// Laurent monomial as a rational function.
RatFunc laurent(const FqPtr& k, int m, const std::array<int, kMaxVars>& e, int c) {
  Mono num{}, den{};
  for (int i = 0; i < m; ++i) {
    if (e[i] >= 0) num[i] = (int16_t)e[i];
    else den[i] = (int16_t)-e[i];
  }
  return RatFunc(Poly::monomial(k, m, num, c), Poly::monomial(k, m, den, 1));
}

// Terms c x^mu of f * x^shift as Laurent monomials; f must have a monomial denominator.
std::vector<std::pair<std::array<int, kMaxVars>, int>> laurent_terms(const RatFunc& f, const Mono& shift) {
  if (!f.den().is_monomial()) throw Error(Errc::unsupported_coefficients, "Cartier needs monomial denominators");
  const Mono& de = f.den().lead().e;
  std::vector<std::pair<std::array<int, kMaxVars>, int>> out;
  for (const auto& t : f.num().terms()) {
    std::array<int, kMaxVars> mu{};
    for (int i = 0; i < kMaxVars; ++i) mu[i] = t.e[i] + shift[i] - de[i];
    out.push_back({mu, t.c});
  }
  return out;
}

// C(c x^mu) when x^mu is a p-th power; false otherwise.
bool cartier_root(const FqPtr& k, int m, const std::array<int, kMaxVars>& mu, int c, RatFunc& out) {
  int p = k->p();
  std::array<int, kMaxVars> r{};
  for (int i = 0; i < m; ++i) {
    if (((mu[i] % p) + p) % p) return false;
    r[i] = mu[i] / p;
  }
  out = laurent(k, m, r, k->root_p(c));
  return true;
}

Poly homogeneous_part(const Poly& P, int deg) {
  std::vector<PTerm> t;
  for (const auto& a : P.terms())
    if (mono_degree(a.e) == deg) t.push_back(a);
  return Poly::from_terms(P.field(), P.nvars(), t);
}

// Row-reduce sparse vectors keyed by (slot, monomial); returns the rank.
int sparse_rank(const FqPtr& k, std::vector<std::map<std::pair<int, Mono>, int>> rows) {
  using Row = std::map<std::pair<int, Mono>, int>;
  std::map<std::pair<int, Mono>, Row> basis;  // pivot = smallest key of the row
  for (auto& r : rows) {
    while (!r.empty()) {
      auto it = basis.find(r.begin()->first);
      if (it == basis.end()) {
        auto piv = r.begin()->first;
        basis.emplace(piv, std::move(r));
        break;
      }
      const Row& b = it->second;
      int c = k->div(r.begin()->second, b.begin()->second);
      for (const auto& [key, v] : b) {
        int nv = k->sub(r[key], k->mul(c, v));
        if (nv) r[key] = nv;
        else r.erase(key);
      }
    }
  }
  return (int)basis.size();
}

// Product of the distinct denominators occurring in the family.
Poly common_denominator(const FqPtr& k, int m, const std::vector<RatFunc>& coeffs) {
  std::vector<Poly> dens;
  for (const auto& f : coeffs) {
    if (f.is_zero() || f.den().is_constant()) continue;
    if (std::find(dens.begin(), dens.end(), f.den()) == dens.end()) dens.push_back(f.den());
  }
  Poly L = Poly::constant(k, m, 1);
  for (const auto& d : dens) L = L * d;
  return L;
}

void add_row_entries(std::map<std::pair<int, Mono>, int>& row, int slot, const Poly& P) {
  for (const auto& t : P.terms()) row[{slot, t.e}] = t.c;
}

}  // namespace

// ---------------------------------------------------------------- Form1

Form1::Form1(FqPtr k, int m) : k_(k), m_(m), c_(m, RatFunc(k, m)) {}

Form1 Form1::dx(FqPtr k, int m, int i) {
  Form1 w(k, m);
  w.c_.at(i) = RatFunc::constant(k, m, 1);
  return w;
}

Form1 Form1::parse(const std::string& s, FqPtr k, int m) {
  FormExpr v = parse_form(s, k, m);
  if (!v.f0.is_zero() || !v.w2.is_zero()) throw Error(Errc::parse_error, "expected a 1-form");
  return v.w1;
}

bool Form1::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const RatFunc& f) { return f.is_zero(); });
}

bool Form1::is_constant() const {
  return std::all_of(c_.begin(), c_.end(), [](const RatFunc& f) { return f.is_constant(); });
}

Form1 Form1::operator+(const Form1& o) const {
  check_same(k_, o.k_, m_, o.m_);
  Form1 r(k_, m_);
  for (int i = 0; i < m_; ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Form1 Form1::operator-(const Form1& o) const { return *this + (-o); }

Form1 Form1::operator-() const {
  Form1 r = *this;
  for (auto& f : r.c_) f = -f;
  return r;
}

Form1 Form1::operator*(const RatFunc& g) const {
  Form1 r = *this;
  for (auto& f : r.c_) f = f * g;
  return r;
}

Form1 Form1::scale(int c) const {
  Form1 r = *this;
  for (auto& f : r.c_) f = f.scale(c);
  return r;
}

bool Form1::operator==(const Form1& o) const { return m_ == o.m_ && c_ == o.c_; }

std::vector<int> Form1::at(const std::vector<int>& pt) const {
  std::vector<int> v;
  for (const auto& f : c_) v.push_back(f.eval(pt));
  return v;
}

Form1 Form1::map_coeffs(const std::vector<RatFunc>& images) const {
  Form1 r = *this;
  for (auto& f : r.c_) f = f.compose(images);
  return r;
}

std::string Form1::str(const std::string& var) const { return form1_str(*this, d_names(var, m_), var, 0); }

// ---------------------------------------------------------------- Form2

Form2::Form2(FqPtr k, int m) : k_(k), m_(m), c_(m * m, RatFunc(k, m)) {}

Form2 Form2::dxdx(FqPtr k, int m, int i, int j) {
  Form2 w(k, m);
  w.set(i, j, RatFunc::constant(k, m, 1));
  return w;
}

Form2 Form2::parse(const std::string& s, FqPtr k, int m) {
  FormExpr v = parse_form(s, k, m);
  if (!v.f0.is_zero() || !v.w1.is_zero()) throw Error(Errc::parse_error, "expected a 2-form");
  return v.w2;
}

RatFunc Form2::get(int i, int j) const {
  if (i == j) return RatFunc(k_, m_);
  return i < j ? c_.at(i * m_ + j) : -c_.at(j * m_ + i);
}

void Form2::set(int i, int j, RatFunc f) {
  if (i == j) throw Error(Errc::invalid_argument, "dx_i ^ dx_i");
  if (i < j) c_.at(i * m_ + j) = std::move(f);
  else c_.at(j * m_ + i) = -f;
}

void Form2::add(int i, int j, const RatFunc& f) {
  if (i == j) return;
  set(i, j, get(i, j) + f);
}

bool Form2::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const RatFunc& f) { return f.is_zero(); });
}

Form2 Form2::operator+(const Form2& o) const {
  check_same(k_, o.k_, m_, o.m_);
  Form2 r(k_, m_);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
  return r;
}

Form2 Form2::operator-(const Form2& o) const { return *this + (-o); }

Form2 Form2::operator-() const {
  Form2 r = *this;
  for (auto& f : r.c_) f = -f;
  return r;
}

Form2 Form2::operator*(const RatFunc& g) const {
  Form2 r = *this;
  for (auto& f : r.c_) f = f * g;
  return r;
}

Form2 Form2::scale(int c) const {
  Form2 r = *this;
  for (auto& f : r.c_) f = f.scale(c);
  return r;
}

bool Form2::operator==(const Form2& o) const { return m_ == o.m_ && c_ == o.c_; }

Form2 Form2::map_coeffs(const std::vector<RatFunc>& images) const {
  Form2 r = *this;
  for (auto& f : r.c_) f = f.compose(images);
  return r;
}

std::string Form2::str(const std::string& var) const { return form2_str(*this, d_names(var, m_), var, 0); }

// ---------------------------------------------------------------- calculus

Form1 d(const RatFunc& f) {
  int m = f.nvars();
  Form1 w(f.field(), m);
  for (int i = 0; i < m; ++i) w.set(i, f.derivative(i));
  return w;
}

Form2 d(const Form1& w) {
  int m = w.nvars();
  Form2 r(w.field(), m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) r.set(i, j, w[j].derivative(i) - w[i].derivative(j));
  return r;
}

Form2 wedge(const Form1& a, const Form1& b) {
  check_same(a.field(), b.field(), a.nvars(), b.nvars());
  int m = a.nvars();
  Form2 r(a.field(), m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) r.set(i, j, a[i] * b[j] - a[j] * b[i]);
  return r;
}

Form1 dlog(const RatFunc& f) {
  if (f.is_zero()) throw Error(Errc::invalid_argument, "dlog of zero");
  return d(f) * f.inv();
}

Form1 pullback(const Form1& w, const std::vector<RatFunc>& images) {
  if ((int)images.size() != w.nvars()) throw Error(Errc::invalid_argument, "pullback needs one image per variable");
  int mm = images.at(0).nvars();
  Form1 r(w.field(), mm);
  for (int i = 0; i < w.nvars(); ++i)
    if (!w[i].is_zero()) r = r + d(images[i]) * w[i].compose(images);
  return r;
}

Form2 pullback(const Form2& w, const std::vector<RatFunc>& images) {
  if ((int)images.size() != w.nvars()) throw Error(Errc::invalid_argument, "pullback needs one image per variable");
  int mm = images.at(0).nvars();
  std::vector<Form1> dimg;
  for (const auto& g : images) dimg.push_back(d(g));
  Form2 r(w.field(), mm);
  for (int i = 0; i < w.nvars(); ++i)
    for (int j = i + 1; j < w.nvars(); ++j) {
      RatFunc f = w.get(i, j);
      if (!f.is_zero()) r = r + wedge(dimg[i], dimg[j]) * f.compose(images);
    }
  return r;
}

int contract(const Form1& beta, const std::vector<int>& P0, const TangentVec& v) {
  const Fq& k = *beta.field();
  auto b = beta.at(P0);
  int s = 0;
  for (int i = 0; i < beta.nvars(); ++i) s = k.add(s, k.mul(b[i], v.at(i)));
  return s;
}

int contract2(const Form2& alpha, const std::vector<int>& P0, const TangentVec& v, const TangentVec& w) {
  const Fq& k = *alpha.field();
  int s = 0;
  for (int i = 0; i < alpha.nvars(); ++i)
    for (int j = i + 1; j < alpha.nvars(); ++j) {
      int a = alpha.get(i, j).eval(P0);
      if (!a) continue;
      int minor = k.sub(k.mul(v.at(i), w.at(j)), k.mul(v.at(j), w.at(i)));
      s = k.add(s, k.mul(a, minor));
    }
  return s;
}

// ---------------------------------------------------------------- Cartier

// A closed form splits by Laurent exponent mu of the coefficients of dlog x_i;
// groups with mu not divisible by p are exact, the others are p-th powers times dlog forms.
Form1 cartier(const Form1& w) {
  if (!d(w).is_zero()) throw Error(Errc::not_closed, "Cartier operator needs a closed form");
  const FqPtr& k = w.field();
  int m = w.nvars();
  Form1 r(k, m);
  for (int i = 0; i < m; ++i) {
    if (w[i].is_zero()) continue;
    Mono sh{};
    sh[i] = 1;
    RatFunc acc(k, m);
    for (const auto& [mu, c] : laurent_terms(w[i], sh)) {
      RatFunc t;
      if (cartier_root(k, m, mu, c, t)) acc = acc + t;
    }
    r.set(i, acc / RatFunc::var(k, m, i));
  }
  return r;
}

Form2 cartier(const Form2& w) {
  const FqPtr& k = w.field();
  int m = w.nvars();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c) {
        RatFunc dw = w.get(b, c).derivative(a) - w.get(a, c).derivative(b) + w.get(a, b).derivative(c);
        if (!dw.is_zero()) throw Error(Errc::not_closed, "Cartier operator needs a closed form");
      }
  Form2 r(k, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RatFunc f = w.get(i, j);
      if (f.is_zero()) continue;
      Mono sh{};
      sh[i] = 1;
      sh[j] = 1;
      RatFunc acc(k, m);
      for (const auto& [mu, c] : laurent_terms(f, sh)) {
        RatFunc t;
        if (cartier_root(k, m, mu, c, t)) acc = acc + t;
      }
      r.set(i, j, acc / (RatFunc::var(k, m, i) * RatFunc::var(k, m, j)));
    }
  return r;
}

// ---------------------------------------------------------------- residues

bool regular_along(const Form1& w, int j) {
  for (int i = 0; i < w.nvars(); ++i)
    if (!w[i].regular_along(j)) return false;
  return true;
}

bool regular_along(const Form2& w, int j) {
  for (int a = 0; a < w.nvars(); ++a)
    for (int b = a + 1; b < w.nvars(); ++b)
      if (!w.get(a, b).regular_along(j)) return false;
  return true;
}

RatFunc log_residue(const Form1& w, int j) {
  const FqPtr& k = w.field();
  int m = w.nvars();
  for (int i = 0; i < m; ++i)
    if (i != j && !w[i].regular_along(j))
      throw Error(Errc::pole_order_too_high, "coefficient of dx" + std::to_string(i + 1) + " has a pole along the divisor");
  RatFunc g = w[j] * RatFunc::var(k, m, j);
  if (!g.regular_along(j)) throw Error(Errc::pole_order_too_high, "pole of order > 1 along the divisor");
  return g.eval_var(j, 0);
}

Form1 log_residue(const Form2& w, int j) {
  const FqPtr& k = w.field();
  int m = w.nvars();
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (a != j && b != j && !w.get(a, b).regular_along(j))
        throw Error(Errc::pole_order_too_high, "component without the divisor has a pole along it");
  Form1 g(k, m);
  RatFunc xj = RatFunc::var(k, m, j);
  for (int i = 0; i < m; ++i) {
    if (i == j) continue;
    RatFunc gi = w.get(i, j) * xj;
    if (!gi.regular_along(j)) throw Error(Errc::pole_order_too_high, "pole of order > 1 along the divisor");
    g.set(i, gi.eval_var(j, 0));
  }
  return g;
}

std::vector<Poly> taylor(const RatFunc& f, int deg) {
  const FqPtr& k = f.field();
  int d0 = f.den().constant_term();
  if (!d0) throw Error(Errc::pole_at_origin, "denominator vanishes at the origin");
  int inv = k->inv(d0);
  std::vector<Poly> F;
  for (int n = 0; n <= deg; ++n) {
    Poly acc = homogeneous_part(f.num(), n);
    for (int i = 1; i <= n; ++i) acc = acc - homogeneous_part(f.den(), i) * F[n - i];
    F.push_back(acc.scale(inv));
  }
  return F;
}

// ---------------------------------------------------------------- psi / phi

RatFunc ProjLinear::in_chart(int i0) const {
  int m = (int)a.size();
  RatFunc r = RatFunc::constant(k, m, a.at(i0));
  for (int j = 0; j < m; ++j)
    if (j != i0 && a[j]) r = r + RatFunc::var(k, m, j).scale(a[j]);
  return r;
}

bool ProjLinear::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

std::string ProjLinear::str() const {
  std::vector<std::string> t;
  for (size_t j = 0; j < a.size(); ++j) {
    if (!a[j]) continue;
    std::string v = "x" + std::to_string(j + 1) + "^(1)";
    std::string cs = k->to_string(a[j]);
    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
    t.push_back(a[j] == 1 ? v : cs + "*" + v);
  }
  return join_terms(t);
}

int ProjOneForm::get(int i, int j) const {
  if (i == j) return 0;
  return i < j ? a.at(i * m + j) : k->neg(a.at(j * m + i));
}

Form1 ProjOneForm::in_chart(int i0) const {
  Form1 r(k, m);
  auto X = [&](int i) { return i == i0 ? RatFunc::constant(k, m, 1) : RatFunc::var(k, m, i); };
  auto dX = [&](int i) { return i == i0 ? Form1(k, m) : Form1::dx(k, m, i); };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int c = get(i, j);
      if (c) r = r + (dX(i) * X(j) - dX(j) * X(i)).scale(c);
    }
  return r;
}

bool ProjOneForm::is_zero() const {
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (get(i, j)) return false;
  return true;
}

std::string ProjOneForm::str() const {
  std::vector<std::string> t;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      int c = get(i, j);
      if (!c) continue;
      std::string xi = "x" + std::to_string(i + 1) + "^(1)", xj = "x" + std::to_string(j + 1) + "^(1)";
      std::string body = "(" + xj + ")^2 d(" + xi + "/" + xj + ")";
      std::string cs = k->to_string(c);
      if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
      t.push_back(c == 1 ? body : cs + "*" + body);
    }
  return join_terms(t);
}

ProjLinear psi(const FqPtr& k, const std::vector<int>& beta0) { return ProjLinear{k, beta0}; }

ProjOneForm phi(const FqPtr& k, int m, const std::vector<int>& alpha0) {
  if ((int)alpha0.size() != m * m) throw Error(Errc::invalid_argument, "phi expects an m*m coefficient table");
  ProjOneForm r{k, m, std::vector<int>(m * m, 0)};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) r.a[i * m + j] = alpha0[i * m + j];
  return r;
}

std::vector<int> constant_coeffs(const Form1& beta, const std::vector<int>& P0) { return beta.at(P0); }

std::vector<int> constant_coeffs(const Form2& alpha, const std::vector<int>& P0) {
  int m = alpha.nvars();
  std::vector<int> a(m * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) a[i * m + j] = alpha.get(i, j).eval(P0);
  return a;
}

// ---------------------------------------------------------------- projective sections

std::vector<LogdiffElem> logdiff_basis(LogdiffKind kind, const FqPtr& k, int n) {
  if (n < 1 || n > kMaxVars) throw Error(Errc::invalid_argument, "dimension must be in 1..4");
  std::vector<LogdiffElem> out;
  auto u = [&](int i) { return RatFunc::var(k, n, i); };
  switch (kind) {
    case LogdiffKind::one_logH:
      for (int i = 0; i < n; ++i) out.push_back({Form1::dx(k, n, i), Form2(k, n), false});
      break;
    case LogdiffKind::one_2H:
      for (int i = 0; i < n; ++i) out.push_back({Form1::dx(k, n, i), Form2(k, n), false});
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          out.push_back({Form1::dx(k, n, j) * u(i) - Form1::dx(k, n, i) * u(j), Form2(k, n), false});
      break;
    case LogdiffKind::two_2H_logH:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back({Form1(k, n), Form2::dxdx(k, n, i, j), true});
      break;
  }
  return out;
}

namespace {

// u_i = 1/t_0 and u_j = t_j/t_0 with t_0 in slot i-1.
std::vector<RatFunc> chart_images(const FqPtr& k, int n, int i) {
  if (i < 1 || i > n) throw Error(Errc::invalid_argument, "chart index must be in 1..n");
  RatFunc t0 = RatFunc::var(k, n, i - 1);
  std::vector<RatFunc> img;
  for (int s = 0; s < n; ++s) img.push_back(s == i - 1 ? t0.inv() : RatFunc::var(k, n, s) / t0);
  return img;
}

}  // namespace

RatFunc logdiff_residue(const Form1& w, int i, int twist) {
  int n = w.nvars();
  Form1 pb = pullback(w, chart_images(w.field(), n, i)) * RatFunc::var(w.field(), n, i - 1).pow(twist);
  return log_residue(pb, i - 1);
}

Form1 logdiff_residue(const Form2& w, int i, int twist) {
  int n = w.nvars();
  Form2 pb = pullback(w, chart_images(w.field(), n, i)) * RatFunc::var(w.field(), n, i - 1).pow(twist);
  return log_residue(pb, i - 1);
}

// ---------------------------------------------------------------- ranks

int rank_of(const std::vector<Form1>& fam) {
  if (fam.empty()) return 0;
  const FqPtr& k = fam[0].field();
  int m = fam[0].nvars();
  std::vector<RatFunc> all;
  for (const auto& w : fam)
    for (int i = 0; i < m; ++i) all.push_back(w[i]);
  RatFunc L(common_denominator(k, m, all));
  std::vector<std::map<std::pair<int, Mono>, int>> rows;
  for (const auto& w : fam) {
    std::map<std::pair<int, Mono>, int> row;
    for (int i = 0; i < m; ++i) add_row_entries(row, i, (w[i] * L).num());
    rows.push_back(std::move(row));
  }
  return sparse_rank(k, std::move(rows));
}

int rank_of(const std::vector<Form2>& fam) {
  if (fam.empty()) return 0;
  const FqPtr& k = fam[0].field();
  int m = fam[0].nvars();
  std::vector<RatFunc> all;
  for (const auto& w : fam)
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) all.push_back(w.get(i, j));
  RatFunc L(common_denominator(k, m, all));
  std::vector<std::map<std::pair<int, Mono>, int>> rows;
  for (const auto& w : fam) {
    std::map<std::pair<int, Mono>, int> row;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) add_row_entries(row, i * m + j, (w.get(i, j) * L).num());
    rows.push_back(std::move(row));
  }
  return sparse_rank(k, std::move(rows));
}

int rank_of(const std::vector<RatFunc>& fam) {
  if (fam.empty()) return 0;
  const FqPtr& k = fam[0].field();
  RatFunc L(common_denominator(k, fam[0].nvars(), fam));
  std::vector<std::map<std::pair<int, Mono>, int>> rows;
  for (const auto& f : fam) {
    std::map<std::pair<int, Mono>, int> row;
    add_row_entries(row, 0, (f * L).num());
    rows.push_back(std::move(row));
  }
  return sparse_rank(k, std::move(rows));
}

// ---------------------------------------------------------------- blowup

namespace {

struct ChartLayout {
  int slots;
  int offset;  // slot / variable position of the image of x_i is i + offset
  bool first_is_z;
};

ChartLayout layout(int m, BlowupChart chart) {
  if (chart == BlowupChart::geometric) return {m, 0, true};
  if (m + 1 > kMaxVars) throw Error(Errc::invalid_argument, "arithmetic chart supports at most 3 variables");
  return {m + 1, 1, false};
}

// c x^mu -> c u^mu' (the z-power is the caller's weight).
RatFunc chart_monomial(const FqPtr& k, const ChartLayout& L, const Mono& mu, int c, int m) {
  Mono e{};
  for (int i = 0; i < m; ++i) {
    if (L.first_is_z && i == 0) continue;
    e[i + L.offset] = mu[i];
  }
  return RatFunc(Poly::monomial(k, L.slots, e, c));
}

// dx_i / z in the chart.
Form1 chart_dx(const FqPtr& k, const ChartLayout& L, int i) {
  if (L.first_is_z && i == 0) return Form1::dx(k, L.slots, 0);
  int s = i + L.offset;
  Form1 r = Form1::dx(k, L.slots, s);
  r.set(0, RatFunc::var(k, L.slots, s));
  return r;
}

std::string graded_str(const std::map<int, std::string>& parts) {
  if (parts.empty()) return "0";
  std::string s;
  for (const auto& [w, t] : parts) s += (s.empty() ? "" : " + ") + std::string("z^") + std::to_string(w) + "*(" + t + ")";
  return s;
}

std::vector<std::string> graded_names(int slots, BlowupChart chart) {
  std::vector<std::string> v{"dlog(z)"};
  int shift = chart == BlowupChart::geometric ? 0 : 1;
  for (int s = 1; s < slots; ++s) v.push_back("du" + std::to_string(s + 1 - shift));
  return v;
}

}  // namespace

int GradedForm1::order() const {
  for (const auto& [w, f] : parts)
    if (!f.is_zero()) return w;
  return -1;
}

RatFunc GradedForm1::residue(int twist) const {
  for (const auto& [w, f] : parts)
    if (w < twist && !f.is_zero()) throw Error(Errc::pole_order_too_high, "component of weight " + std::to_string(w) + " below the twist");
  auto it = parts.find(twist);
  if (it == parts.end()) return RatFunc(k, slots);
  return it->second[0];
}

std::string GradedForm1::str() const {
  std::map<int, std::string> s;
  int shift = chart == BlowupChart::geometric ? 0 : 1;
  for (const auto& [w, f] : parts) s[w] = form1_str(f, graded_names(slots, chart), "u", shift);
  return graded_str(s);
}

int GradedForm2::order() const {
  for (const auto& [w, f] : parts)
    if (!f.is_zero()) return w;
  return -1;
}

Form1 GradedForm2::residue(int twist) const {
  for (const auto& [w, f] : parts)
    if (w < twist && !f.is_zero()) throw Error(Errc::pole_order_too_high, "component of weight " + std::to_string(w) + " below the twist");
  Form1 g(k, slots);
  auto it = parts.find(twist);
  if (it == parts.end()) return g;
  for (int i = 1; i < slots; ++i) g.set(i, -it->second.get(0, i));
  return g;
}

std::string GradedForm2::str() const {
  std::map<int, std::string> s;
  int shift = chart == BlowupChart::geometric ? 0 : 1;
  for (const auto& [w, f] : parts) s[w] = form2_str(f, graded_names(slots, chart), "u", shift);
  return graded_str(s);
}

GradedForm1 blowup_pullback(const Form1& beta, int depth, BlowupChart chart) {
  const FqPtr& k = beta.field();
  int m = beta.nvars();
  ChartLayout L = layout(m, chart);
  GradedForm1 out{k, L.slots, chart, {}};
  for (int i = 0; i < m; ++i) {
    if (beta[i].is_zero()) continue;
    auto T = taylor(beta[i], depth);
    Form1 D = chart_dx(k, L, i);
    for (int deg = 0; deg <= depth; ++deg)
      for (const auto& t : T[deg].terms()) {
        auto it = out.parts.try_emplace(deg + 1, Form1(k, L.slots)).first;
        it->second = it->second + D * chart_monomial(k, L, t.e, t.c, m);
      }
  }
  for (auto it = out.parts.begin(); it != out.parts.end();) it = it->second.is_zero() ? out.parts.erase(it) : std::next(it);
  return out;
}

GradedForm2 blowup_pullback(const Form2& alpha, int depth, BlowupChart chart) {
  const FqPtr& k = alpha.field();
  int m = alpha.nvars();
  ChartLayout L = layout(m, chart);
  GradedForm2 out{k, L.slots, chart, {}};
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b) {
      RatFunc f = alpha.get(a, b);
      if (f.is_zero()) continue;
      auto T = taylor(f, depth);
      Form2 D = wedge(chart_dx(k, L, a), chart_dx(k, L, b));
      for (int deg = 0; deg <= depth; ++deg)
        for (const auto& t : T[deg].terms()) {
          auto it = out.parts.try_emplace(deg + 2, Form2(k, L.slots)).first;
          it->second = it->second + D * chart_monomial(k, L, t.e, t.c, m);
        }
    }
  for (auto it = out.parts.begin(); it != out.parts.end();) it = it->second.is_zero() ? out.parts.erase(it) : std::next(it);
  return out;
}

}  // namespace swanlab
