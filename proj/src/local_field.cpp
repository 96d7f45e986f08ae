#include "swanlab/local_field.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

#include "swanlab/errors.hpp"

namespace swanlab {

namespace {

int64_t mod_norm(int64_t a, int64_t P) {
  a %= P;
  return a < 0 ? a + P : a;
}

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

int64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients of Phi_{p^s}(1 + x), low first, including the leading 1.
std::vector<int64_t> cyclotomic_shifted(int p, int s) {
  int ps1 = 1;
  for (int i = 1; i < s; ++i) ps1 *= p;
  int deg = (p - 1) * ps1;
  std::vector<int64_t> c(deg + 1, 0);
  for (int k = 0; k < p; ++k)
    for (int j = 0; j <= k * ps1; ++j) c[j] += binom(k * ps1, j);
  return c;
}

bool is_prime_small(int p) { return p == 2 || p == 3 || p == 5 || p == 7; }

}  // namespace

// ---------------------------------------------------------------- LocalField

LocalField::LocalField(int p, int f, std::vector<UVec> eis, std::string tag, int cap)
    : p_(p), f_(f), e_((int)eis.size()), tag_(std::move(tag)) {
  if (!is_prime_small(p)) throw Error(Errc::invalid_argument, "p must be one of 2, 3, 5, 7");
  if (f < 1 || f > 4) throw Error(Errc::invalid_argument, "unramified degree must be in 1..4");
  if (e_ < 1) throw Error(Errc::invalid_argument, "Eisenstein polynomial needs degree >= 1");
  int g = std::__gcd(e_ * p, p - 1);
  ep_num_ = e_ * p / g;
  ep_den_ = (p - 1) / g;
  int fit = 0;
  {
    __int128 v = 1;
    while (v * p < ((__int128)1 << 62)) {
      v *= p;
      ++fit;
    }
  }
  default_prec_ = (4 * ep_num_ + ep_den_ - 1) / ep_den_ + 16;
  int want = 2 * default_prec_ + 8;
  cap_ = cap > 0 ? std::min(cap, fit) : std::min(fit, ceil_div(want, e_) + 2);
  max_prec_ = std::min(want, e_ * cap_);
  default_prec_ = std::min(default_prec_, max_prec_);
  ppow_.assign(cap_ + 1, 1);
  for (int i = 1; i <= cap_; ++i) ppow_[i] = ppow_[i - 1] * p;
  P_ = ppow_[cap_];
  residue_ = Fq::make(p, f);
  for (int c : Fq::table_polynomial(p, f)) gmod_.push_back(c);
  for (auto& c : eis) {
    c.resize(f, 0);
    for (auto& x : c) x = mod_norm(x, P_);
  }
  eis_ = std::move(eis);
  for (int i = 0; i < e_; ++i)
    for (int j = 0; j < f; ++j)
      if (eis_[i][j] % p != 0) throw Error(Errc::invalid_argument, "polynomial is not Eisenstein");
  UVec g0(f);
  bool unit = false;
  for (int j = 0; j < f; ++j) {
    g0[j] = eis_[0][j] / p;
    if (g0[j] % p) unit = true;
  }
  if (!unit) throw Error(Errc::invalid_argument, "Eisenstein constant term must have valuation 1");
  gamma_inv_ = uinv(g0);
}

LocalFieldPtr LocalField::make(int p, int f, std::vector<UVec> eis, std::string tag, int cap) {
  auto F = std::make_shared<LocalField>(p, f, std::move(eis), std::move(tag), cap);
  F->self_ = F;
  F->find_roots_of_unity(F);
  if (F->tag_.empty()) F->tag_ = F->text();
  return F;
}

LocalFieldPtr LocalField::make_cyclotomic(int p, int s) {
  if (!is_prime_small(p) || s < 1) throw Error(Errc::invalid_argument, "bad cyclotomic parameters");
  auto c = cyclotomic_shifted(p, s);
  std::vector<UVec> eis;
  for (size_t i = 0; i + 1 < c.size(); ++i) eis.push_back({c[i]});
  int ps = 1;
  for (int i = 0; i < s; ++i) ps *= p;
  std::string tag = (p == 2 && s == 2) ? "Q2i" : "Q" + std::to_string(p) + "z" + std::to_string(ps);
  return make(p, 1, std::move(eis), tag);
}

void LocalField::find_roots_of_unity(const LocalFieldPtr& me) {
  // Cyclotomic presentation: zeta = 1 + pi.
  if (eisenstein_over_Zp()) {
    for (int s = 1; s <= 4; ++s) {
      auto c = cyclotomic_shifted(p_, s);
      if ((int)c.size() - 1 != e_) continue;
      bool ok = true;
      for (int i = 0; i < e_; ++i)
        if (eis_[i][0] != mod_norm(c[i], P_)) ok = false;
      if (ok) {
        auto z = LocalElem::one(me) + LocalElem::pi(me);
        zeta_s_ = s;
        zeta_ = z.coeffs();
        zeta_prec_ = z.precision();
        return;
      }
    }
  }
  if (p_ == 2) {
    zeta_s_ = 1;
    auto z = LocalElem::from_int(me, -1);
    zeta_ = z.coeffs();
    zeta_prec_ = z.precision();
    return;
  }
  if (e_ % (p_ - 1) != 0) return;
  // zeta_p = 1 + pi^{v0} u where u is a simple root of h(u) = Phi_p(1 + pi^{v0} u) / pi^e.
  int v0 = e_ / (p_ - 1);
  LocalElem up = LocalElem::from_int(me, p_).mul_pi_pow(-e_);
  std::vector<LocalElem> h(p_);
  for (int k = 0; k < p_ - 1; ++k)
    h[k] = LocalElem::from_int(me, binom(p_, k + 1) / p_) * up * LocalElem::pi(me).pow((long long)k * v0);
  h[p_ - 1] = LocalElem::one(me);
  const Fq& K = *residue_;
  int ub = up.residue();
  for (int u = 1; u < K.q(); ++u) {
    if (K.add(K.pow(u, p_ - 1), ub) != 0) continue;
    int target = max_prec_;
    for (const auto& c : h) target = std::min(target, c.precision());
    auto root = hensel_lift(h, LocalElem::lift_residue(me, u), target);
    auto z = LocalElem::one(me) + LocalElem::pi(me).pow(v0) * root;
    zeta_s_ = 1;
    zeta_ = z.coeffs();
    zeta_prec_ = z.precision();
    return;
  }
}

int LocalField::eprime() const {
  if (ep_den_ != 1) throw Error(Errc::invalid_argument, "e' is not an integer for this field");
  return ep_num_;
}

LocalElem LocalField::zeta() const {
  if (zeta_s_ == 0) throw Error(Errc::missing_root_of_unity, "field contains no nontrivial p-power root of unity");
  return LocalElem::from_coeffs(self(), zeta_, zeta_prec_);
}

bool LocalField::eisenstein_over_Zp() const {
  for (const auto& c : eis_)
    for (int j = 1; j < f_; ++j)
      if (c[j] != 0) return false;
  return true;
}

std::string LocalField::text() const {
  std::ostringstream os;
  os << p_;
  if (f_ > 1) os << "^" << f_;
  os << "/";
  for (int i = 0; i < e_; ++i) {
    if (i) os << ",";
    int last = f_ - 1;
    while (last > 0 && eis_[i][last] == 0) --last;
    for (int j = 0; j <= last; ++j) {
      if (j) os << ":";
      int64_t c = eis_[i][j];
      os << (c > P_ / 2 ? c - P_ : c);
    }
  }
  return os.str();
}

LocalFieldPtr LocalField::parse(const std::string& text_in) {
  std::string t = text_in;
  t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
  auto slash = t.find('/');
  if (slash != std::string::npos && slash + 1 < t.size() && t[slash + 1] == 'Q') {
    // "p/alias": the prefix must agree with the alias.
    auto F = parse(t.substr(slash + 1));
    if (std::to_string(F->p()) != t.substr(0, slash))
      throw Error(Errc::parse_error, "prime prefix does not match field alias '" + t + "'");
    return F;
  }
  static const std::map<std::string, std::pair<int, int>> cyclo = {
      {"Q2i", {2, 2}}, {"Q2z4", {2, 2}}, {"Q2z8", {2, 3}}, {"Q3z3", {3, 1}},
      {"Q3z9", {3, 2}}, {"Q5z5", {5, 1}}, {"Q7z7", {7, 1}}};
  if (auto it = cyclo.find(t); it != cyclo.end()) return make_cyclotomic(it->second.first, it->second.second);
  if (t == "Q2" || t == "Q3" || t == "Q5" || t == "Q7") {
    int p = t[1] - '0';
    return make(p, 1, {{-p}}, t);
  }
  if (t == "Q4") return make(2, 2, {{-2}}, t);
  if (t == "Q8") return make(2, 3, {{-2}}, t);
  if (t == "Q9") return make(3, 2, {{-3}}, t);
  if (t == "Q2c") return make(2, 1, {{-2}, {0}, {0}}, t);
  if (t == "Q3q") return make(3, 1, {{3}, {0}, {0}, {0}}, t);
  if (slash == std::string::npos) throw Error(Errc::parse_error, "unknown field '" + text_in + "'");
  try {
    std::string head = t.substr(0, slash), body = t.substr(slash + 1);
    int p, f = 1;
    auto caret = head.find('^');
    if (caret == std::string::npos) {
      p = std::stoi(head);
    } else {
      p = std::stoi(head.substr(0, caret));
      f = std::stoi(head.substr(caret + 1));
    }
    std::vector<UVec> eis;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
      UVec c;
      std::stringstream cs(item);
      std::string comp;
      while (std::getline(cs, comp, ':')) c.push_back(std::stoll(comp));
      if (c.empty()) throw Error(Errc::parse_error, "empty coefficient");
      eis.push_back(c);
    }
    return make(p, f, std::move(eis));
  } catch (const Error& e) {
    throw Error(Errc::parse_error, e.what());
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "malformed field descriptor '" + text_in + "'");
  }
}

UVec LocalField::uadd(const UVec& a, const UVec& b) const {
  UVec r(f_);
  for (int j = 0; j < f_; ++j) r[j] = addmod(a[j], b[j]);
  return r;
}

UVec LocalField::usub(const UVec& a, const UVec& b) const {
  UVec r(f_);
  for (int j = 0; j < f_; ++j) r[j] = addmod(a[j], negmod(b[j]));
  return r;
}

UVec LocalField::umul(const UVec& a, const UVec& b) const {
  if (f_ == 1) return {mulmod(a[0], b[0])};
  std::vector<int64_t> r(2 * f_ - 1, 0);
  for (int i = 0; i < f_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < f_; ++j)
      if (b[j]) r[i + j] = addmod(r[i + j], mulmod(a[i], b[j]));
  }
  for (int d = 2 * f_ - 2; d >= f_; --d) {
    int64_t c = r[d];
    if (!c) continue;
    for (int j = 0; j < f_; ++j) r[d - f_ + j] = addmod(r[d - f_ + j], negmod(mulmod(c, gmod_[j])));
  }
  r.resize(f_);
  return r;
}

UVec LocalField::uscalar(int64_t c) const {
  UVec r(f_, 0);
  r[0] = mod_norm(c, P_);
  return r;
}

UVec LocalField::uinv(const UVec& a) const {
  std::vector<int> d(f_);
  for (int j = 0; j < f_; ++j) d[j] = (int)(a[j] % p_);
  int code = residue_->from_digits(d);
  if (code == 0) throw Error(Errc::non_integral, "inverse of a non-unit");
  int ic = residue_->inv(code);
  UVec z(f_);
  for (int j = 0; j < f_; ++j) z[j] = residue_->digit(ic, j);
  UVec two = uscalar(2);
  for (int it = 0; (1 << it) <= 2 * cap_; ++it) z = umul(z, usub(two, umul(a, z)));
  return z;
}

// ---------------------------------------------------------------- LocalElem

static void check_same(const LocalElem& a, const LocalElem& b) {
  if (!a.field() || !b.field()) throw Error(Errc::invalid_argument, "uninitialized local element");
  if (a.field() != b.field() && !a.field()->same(*b.field()))
    throw Error(Errc::invalid_argument, "elements of different local fields");
}

void LocalElem::reduce() {
  const int e = F_->e(), f = F_->f();
  if (N_ > F_->max_precision()) N_ = F_->max_precision();
  for (int i = 0; i < e; ++i) {
    int c = std::min(ceil_div(N_ - i, e), F_->cap());
    int64_t m = F_->ppow(c);
    for (int j = 0; j < f; ++j) a_[i * f + j] = mod_norm(a_[i * f + j], m);
  }
}

LocalElem LocalElem::zero(const LocalFieldPtr& F, int N) {
  LocalElem x;
  x.F_ = F;
  x.N_ = N < 0 ? F->max_precision() : N;
  x.a_.assign(F->e() * F->f(), 0);
  x.reduce();
  return x;
}

LocalElem LocalElem::from_int(const LocalFieldPtr& F, long long n, int N) {
  LocalElem x = zero(F, N);
  x.a_[0] = mod_norm(n, F->modulus());
  x.reduce();
  return x;
}

LocalElem LocalElem::pi(const LocalFieldPtr& F) {
  LocalElem x = zero(F);
  if (F->e() == 1) {
    // pi = -c0 lives in the unramified part.
    for (int j = 0; j < F->f(); ++j) x.a_[j] = F->negmod(F->eisenstein()[0][j]);
  } else {
    x.a_[F->f()] = 1;
  }
  x.reduce();
  return x;
}

LocalElem LocalElem::omega(const LocalFieldPtr& F) {
  LocalElem x = zero(F);
  if (F->f() == 1) throw Error(Errc::invalid_argument, "no unramified generator when f = 1");
  x.a_[1] = 1;
  x.reduce();
  return x;
}

LocalElem LocalElem::from_unr(const LocalFieldPtr& F, const UVec& u, int N) {
  LocalElem x = zero(F, N);
  for (int j = 0; j < F->f() && j < (int)u.size(); ++j) x.a_[j] = mod_norm(u[j], F->modulus());
  x.reduce();
  return x;
}

LocalElem LocalElem::from_coeffs(const LocalFieldPtr& F, std::vector<int64_t> a, int N) {
  LocalElem x;
  x.F_ = F;
  x.N_ = N;
  a.resize(F->e() * F->f(), 0);
  for (auto& c : a) c = mod_norm(c, F->modulus());
  x.a_ = std::move(a);
  x.reduce();
  return x;
}

LocalElem LocalElem::lift_residue(const LocalFieldPtr& F, int code, int N) {
  UVec u(F->f());
  for (int j = 0; j < F->f(); ++j) u[j] = F->residue()->digit(code, j);
  return from_unr(F, u, N);
}

int64_t LocalElem::coeff(int i, int j) const { return a_.at(i * F_->f() + j); }

UVec LocalElem::unr(int i) const {
  int f = F_->f();
  return UVec(a_.begin() + i * f, a_.begin() + (i + 1) * f);
}

bool LocalElem::is_zero() const {
  for (auto c : a_)
    if (c) return false;
  return true;
}

int LocalElem::valuation() const {
  const int e = F_->e(), f = F_->f(), p = F_->p();
  int best = N_;
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) {
      int64_t c = a_[i * f + j];
      if (!c) continue;
      int v = 0;
      while (c % p == 0) {
        c /= p;
        ++v;
      }
      best = std::min(best, i + e * v);
    }
  return best;
}

std::string LocalElem::valuation_str() const {
  if (is_zero()) return ">=" + std::to_string(N_);
  return std::to_string(valuation());
}

int LocalElem::residue() const {
  const int f = F_->f(), p = F_->p();
  std::vector<int> d(f);
  for (int j = 0; j < f; ++j) d[j] = (int)(a_[j] % p);
  return F_->residue()->from_digits(d);
}

LocalElem LocalElem::operator+(const LocalElem& o) const {
  check_same(*this, o);
  LocalElem r = *this;
  r.N_ = std::min(N_, o.N_);
  for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = F_->addmod(a_[k], o.a_[k]);
  r.reduce();
  return r;
}

LocalElem LocalElem::operator-() const {
  LocalElem r = *this;
  for (auto& c : r.a_) c = F_->negmod(c);
  r.reduce();
  return r;
}

LocalElem LocalElem::operator-(const LocalElem& o) const { return *this + (-o); }

LocalElem LocalElem::operator*(const LocalElem& o) const {
  check_same(*this, o);
  const LocalField& K = *F_;
  const int e = K.e(), f = K.f();
  LocalElem r;
  r.F_ = F_;
  long long n1 = (long long)N_ + o.valuation(), n2 = (long long)o.N_ + valuation();
  r.N_ = (int)std::min<long long>({n1, n2, K.max_precision()});
  std::vector<UVec> C(2 * e - 1, UVec(f, 0));
  for (int i = 0; i < e; ++i) {
    UVec A = unr(i);
    bool az = std::all_of(A.begin(), A.end(), [](int64_t c) { return c == 0; });
    if (az) continue;
    for (int j = 0; j < e; ++j) {
      UVec B = o.unr(j);
      if (std::all_of(B.begin(), B.end(), [](int64_t c) { return c == 0; })) continue;
      C[i + j] = K.uadd(C[i + j], K.umul(A, B));
    }
  }
  for (int d = 2 * e - 2; d >= e; --d) {
    const UVec& c = C[d];
    if (std::all_of(c.begin(), c.end(), [](int64_t x) { return x == 0; })) continue;
    for (int k = 0; k < e; ++k) C[d - e + k] = K.usub(C[d - e + k], K.umul(c, K.eisenstein()[k]));
  }
  r.a_.assign(e * f, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) r.a_[i * f + j] = C[i][j];
  r.reduce();
  return r;
}

LocalElem LocalElem::div_pi_once() const {
  const LocalField& K = *F_;
  const int e = K.e(), f = K.f(), p = K.p();
  if (N_ <= 0) throw Error(Errc::precision_exhausted, "no digits left to divide by pi");
  UVec A0 = unr(0);
  for (auto& c : A0) {
    if (c % p) throw Error(Errc::non_integral, "quotient by pi is not integral");
    c /= p;
  }
  UVec t = K.umul(A0, K.pi_inv_helper());
  LocalElem r = *this;
  r.N_ = N_ - 1;
  std::fill(r.a_.begin(), r.a_.end(), 0);
  for (int i = 0; i + 1 < e; ++i)
    for (int j = 0; j < f; ++j) r.a_[i * f + j] = a_[(i + 1) * f + j];
  for (int j = 0; j < f; ++j) r.a_[(e - 1) * f + j] = K.addmod(r.a_[(e - 1) * f + j], K.negmod(t[j]));
  for (int rr = 0; rr + 1 < e; ++rr) {
    UVec s = K.umul(t, K.eisenstein()[rr + 1]);
    for (int j = 0; j < f; ++j) r.a_[rr * f + j] = K.addmod(r.a_[rr * f + j], K.negmod(s[j]));
  }
  r.reduce();
  return r;
}

LocalElem LocalElem::mul_pi_pow(int k) const {
  if (k == 0) return *this;
  if (k > 0) return *this * pi(F_).pow(k);
  LocalElem r = *this;
  if (!is_zero() && valuation() < -k) throw Error(Errc::non_integral, "quotient by pi^" + std::to_string(-k) + " is not integral");
  if (is_zero()) {
    if (N_ + k < 0) throw Error(Errc::precision_exhausted, "no digits left after division");
    return zero(F_, N_ + k);
  }
  for (int i = 0; i < -k; ++i) r = r.div_pi_once();
  return r;
}

LocalElem LocalElem::unit_part() const {
  if (is_zero()) throw Error(Errc::precision_exhausted, "unit part of an element that is zero to precision");
  return mul_pi_pow(-valuation());
}

LocalElem LocalElem::inv() const {
  if (is_zero()) throw Error(Errc::precision_exhausted, "inverse of an element that is zero to precision");
  if (valuation() > 0) throw Error(Errc::non_integral, "inverse of a non-unit is not integral");
  int ic = F_->residue()->inv(residue());
  LocalElem z = lift_residue(F_, ic);
  LocalElem two = from_int(F_, 2);
  for (int it = 0; it < 12; ++it) {
    LocalElem err = *this * z - one(F_);
    if (err.is_zero()) break;
    z = z * (two - *this * z);
  }
  return z.with_precision(N_);
}

LocalElem LocalElem::operator/(const LocalElem& o) const {
  check_same(*this, o);
  if (o.is_zero()) throw Error(Errc::precision_exhausted, "divisor is zero to known precision");
  int v = o.valuation();
  LocalElem u = o.mul_pi_pow(-v);
  LocalElem r = *this * u.inv();
  if (!r.is_zero() && r.valuation() < v) throw Error(Errc::non_integral, "quotient is not integral");
  if (r.N_ - v <= 0 && r.is_zero()) throw Error(Errc::precision_exhausted, "quotient has no significant digits");
  return r.mul_pi_pow(-v);
}

LocalElem LocalElem::pow(long long k) const {
  if (k < 0) return inv().pow(-k);
  LocalElem r = one(F_), b = *this;
  while (k) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

LocalElem LocalElem::with_precision(int n) const {
  if (n >= N_) return *this;
  LocalElem r = *this;
  r.N_ = std::max(n, 0);
  r.reduce();
  return r;
}

LocalElem LocalElem::extended(int n) const {
  LocalElem r = *this;
  r.N_ = std::min(n, F_->max_precision());
  r.reduce();
  return r;
}

std::string LocalElem::str() const {
  const int e = F_->e(), f = F_->f();
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) {
      int64_t c = a_[i * f + j];
      if (!c) continue;
      if (any) os << " + ";
      any = true;
      os << c;
      if (i) os << "*pi" << (i > 1 ? "^" + std::to_string(i) : "");
      if (j) os << "*w" << (j > 1 ? "^" + std::to_string(j) : "");
    }
  if (!any) os << "0";
  os << " + O(pi^" << N_ << ")";
  return os.str();
}

// ---------------------------------------------------------------- algorithms

LocalElem poly_eval(const std::vector<LocalElem>& poly, const LocalElem& x) {
  LocalElem r = LocalElem::zero(x.field());
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) r = r * x + *it;
  return r;
}

LocalElem hensel_lift(const std::vector<LocalElem>& poly, const LocalElem& approx, int target) {
  const auto& F = approx.field();
  target = std::min(target, F->max_precision());
  std::vector<LocalElem> dpoly;
  for (size_t i = 1; i < poly.size(); ++i) dpoly.push_back(poly[i] * LocalElem::from_int(F, (long long)i));
  LocalElem x = approx.extended(F->max_precision());
  LocalElem g = poly_eval(poly, x), dg = poly_eval(dpoly, x);
  if (g.is_zero() && g.precision() >= target) return x.with_precision(target);
  if (dg.is_zero() || !(g.valuation() > 2 * dg.valuation()))
    throw Error(Errc::hensel_criterion_failed, "v(f(a)) > 2 v(f'(a)) does not hold");
  for (int it = 0; it < 64; ++it) {
    if (g.valuation() >= target) break;
    x = x - g / dg;
    g = poly_eval(poly, x);
    dg = poly_eval(dpoly, x);
  }
  if (g.valuation() < target || x.precision() < target)
    throw Error(Errc::precision_exhausted, "Hensel iteration could not reach the target precision");
  return x.with_precision(target);
}

LocalElem teichmuller(const LocalFieldPtr& F, int code, int N) {
  if (N < 0) N = F->max_precision();
  if (code == 0) return LocalElem::zero(F, N);
  const int q = F->q();
  LocalElem x = LocalElem::lift_residue(F, code);
  LocalElem qq = LocalElem::from_int(F, q), one = LocalElem::one(F);
  for (int it = 0; it < 64; ++it) {
    LocalElem g = x.pow(q) - x;
    if (g.is_zero()) break;
    x = x - g / (qq * x.pow(q - 1) - one);
  }
  return x.with_precision(N);
}

LocalFieldPtr subfield(const LocalFieldPtr& F, Subfield s) {
  std::call_once(F->sub_once_, [&] {
    F->unr_sub_ = LocalField::make(F->p(), F->f(), {{-F->p()}}, "", F->cap());
    F->prime_sub_ = LocalField::make(F->p(), 1, {{-F->p()}}, "", F->cap());
  });
  return s == Subfield::unramified ? F->unr_sub_ : F->prime_sub_;
}

LocalElem determinant(const std::vector<std::vector<LocalElem>>& M) {
  const int n = (int)M.size();
  const auto& F = M.at(0).at(0).field();
  std::vector<LocalElem> dp(1 << n, LocalElem::zero(F));
  dp[0] = LocalElem::one(F);
  std::vector<char> seen(1 << n, 0);
  seen[0] = 1;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (!seen[mask]) continue;
    int r = __builtin_popcount(mask);
    if (r == n) continue;
    for (int c = 0; c < n; ++c) {
      if (mask & (1 << c)) continue;
      int above = __builtin_popcount(mask >> (c + 1));
      LocalElem t = dp[mask] * M[r][c];
      int nm = mask | (1 << c);
      dp[nm] = (above & 1) ? dp[nm] - t : dp[nm] + t;
      seen[nm] = 1;
    }
  }
  return dp[(1 << n) - 1];
}

namespace {

LocalElem relative_matrix_op(const LocalElem& x, bool want_norm) {
  // K over U: multiplication by x on the basis 1, pi, ..., pi^{e-1}.
  const auto& F = x.field();
  const int e = F->e();
  auto U = subfield(F, Subfield::unramified);
  int c = ceil_div(x.precision() - e + 1, e);
  if (e == 1) c = x.precision();
  std::vector<std::vector<LocalElem>> M(e, std::vector<LocalElem>(e));
  LocalElem y = x;
  LocalElem pi = LocalElem::pi(F);
  for (int i = 0; i < e; ++i) {
    for (int r = 0; r < e; ++r) M[r][i] = LocalElem::from_unr(U, y.unr(r), c);
    if (i + 1 < e) y = y * pi;
  }
  if (want_norm) return determinant(M);
  LocalElem t = LocalElem::zero(U, c);
  for (int i = 0; i < e; ++i) t = t + M[i][i];
  return t;
}

LocalElem unramified_matrix_op(const LocalElem& x, bool want_norm) {
  // U over Q_p: multiplication by x on the basis 1, w, ..., w^{f-1}.
  const auto& U = x.field();
  const int f = U->f();
  auto Qp = subfield(U, Subfield::prime);
  int c = x.precision();
  std::vector<std::vector<LocalElem>> M(f, std::vector<LocalElem>(f));
  UVec y = x.unr(0);
  UVec w(f, 0);
  if (f > 1) w[1] = 1;
  for (int j = 0; j < f; ++j) {
    for (int r = 0; r < f; ++r) M[r][j] = LocalElem::from_int(Qp, y[r], c);
    if (j + 1 < f) y = U->umul(y, w);
  }
  if (want_norm) return determinant(M);
  LocalElem t = LocalElem::zero(Qp, c);
  for (int j = 0; j < f; ++j) t = t + M[j][j];
  return t;
}

}  // namespace

LocalElem norm(const LocalElem& x, Subfield down_to) {
  LocalElem u = relative_matrix_op(x, true);
  return down_to == Subfield::unramified ? u : unramified_matrix_op(u, true);
}

LocalElem trace(const LocalElem& x, Subfield down_to) {
  LocalElem u = relative_matrix_op(x, false);
  return down_to == Subfield::unramified ? u : unramified_matrix_op(u, false);
}

LocalElem include_from(const LocalFieldPtr& F, const LocalElem& y) {
  if (y.field()->e() != 1 || y.field()->p() != F->p() || F->f() % y.field()->f() != 0 ||
      (y.field()->f() != 1 && y.field()->f() != F->f()))
    throw Error(Errc::invalid_argument, "element is not in the stored tower");
  return LocalElem::from_unr(F, y.unr(0), std::min(F->max_precision(), y.precision() * F->e()));
}

LocalElem frobenius(const LocalElem& x, int k) {
  const auto& F = x.field();
  if (!F->eisenstein_over_Zp()) throw Error(Errc::unsupported_coefficients, "Frobenius needs Eisenstein coefficients in Z_p");
  const int f = F->f(), e = F->e();
  k %= f;
  if (k < 0) k += f;
  if (k == 0 || f == 1) return x;
  std::call_once(F->frob_once_, [&] {
    auto U = subfield(F, Subfield::unramified);
    std::vector<LocalElem> g;
    for (auto c : F->unr_modulus()) g.push_back(LocalElem::from_int(U, c));
    int wp = F->residue()->frob(F->residue()->gen());
    F->sigma_omega_ = hensel_lift(g, LocalElem::lift_residue(U, wp), U->max_precision()).unr(0);
  });
  LocalElem r = x;
  for (int step = 0; step < k; ++step) {
    std::vector<int64_t> out(e * f, 0);
    for (int i = 0; i < e; ++i) {
      UVec acc(f, 0), pw = F->uscalar(1);
      UVec a = r.unr(i);
      for (int j = 0; j < f; ++j) {
        UVec t = F->umul(F->uscalar(a[j]), pw);
        acc = F->uadd(acc, t);
        pw = F->umul(pw, F->sigma_omega_);
      }
      for (int j = 0; j < f; ++j) out[i * f + j] = acc[j];
    }
    r = LocalElem::from_coeffs(F, out, r.precision());
  }
  return r;
}

LocalElem Embedding::operator()(const LocalElem& x) const {
  const int e = src->e(), fs = src->f(), fd = dst->f();
  std::vector<int64_t> out(e * fd, 0);
  for (int i = 0; i < e; ++i) {
    UVec acc(fd, 0), pw = dst->uscalar(1);
    UVec a = x.unr(i);
    for (int j = 0; j < fs; ++j) {
      acc = dst->uadd(acc, dst->umul(dst->uscalar(a[j]), pw));
      if (j + 1 < fs) pw = dst->umul(pw, theta);
    }
    for (int j = 0; j < fd; ++j) out[i * fd + j] = acc[j];
  }
  return LocalElem::from_coeffs(dst, out, x.precision());
}

Embedding unramified_extension(const LocalFieldPtr& K, int d) {
  const int p = K->p(), f2 = K->f() * d;
  if (d < 1 || f2 > 4) throw Error(Errc::invalid_argument, "unramified extension beyond residue degree 4");
  std::string tag = K->tag() + "u" + std::to_string(d);
  Embedding E;
  E.src = K;
  if (K->f() == 1) {
    E.dst = LocalField::make(p, f2, K->eisenstein(), tag, K->cap());
    return E;
  }
  auto U2 = LocalField::make(p, f2, {{-p}}, "", K->cap());
  const Fq& k2 = *U2->residue();
  const auto& g = K->unr_modulus();
  int root = -1;
  for (int t = 0; t < k2.q() && root < 0; ++t) {
    int s = 0;
    for (int j = (int)g.size() - 1; j >= 0; --j) s = k2.add(k2.mul(s, t), k2.from_int(g[j]));
    if (s == 0) root = t;
  }
  std::vector<LocalElem> gp;
  for (auto c : g) gp.push_back(LocalElem::from_int(U2, c));
  E.theta = hensel_lift(gp, LocalElem::lift_residue(U2, root), U2->max_precision()).unr(0);
  std::vector<UVec> eis;
  for (const auto& c : K->eisenstein()) {
    UVec acc(f2, 0), pw = U2->uscalar(1);
    for (int j = 0; j < K->f(); ++j) {
      acc = U2->uadd(acc, U2->umul(U2->uscalar(c[j]), pw));
      pw = U2->umul(pw, E.theta);
    }
    eis.push_back(acc);
  }
  E.dst = LocalField::make(p, f2, std::move(eis), tag, K->cap());
  return E;
}

}  // namespace swanlab
