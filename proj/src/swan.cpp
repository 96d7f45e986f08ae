#include "swanlab/swan.hpp"

#include <atomic>

#include "swanlab/errors.hpp"

namespace swanlab {

namespace {

std::atomic<long long> g_dbna_checks{0};

RatFunc cst(const FqPtr& F, int m, int c) { return RatFunc::constant(F, m, c); }

bool is_closed(const Form2& a) {
  const int m = a.nvars();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int l = j + 1; l < m; ++l) {
        RatFunc c = a.get(j, l).derivative(i) - a.get(i, l).derivative(j) + a.get(i, j).derivative(l);
        if (!c.is_zero()) return false;
      }
  return true;
}

RefinedSwan finish(RefinedSwan r) {
  check_dbna(r);
  return r;
}

int eprime_checked(const LocalFieldPtr& k) {
  if (k->root_of_unity_exponent() < 1) throw Error(Errc::missing_root_of_unity, k->text() + " does not contain zeta_p");
  return k->eprime();
}

// p-th root of a residue rational function all of whose exponents are divisible by p.
std::optional<RatFunc> root_p(const RatFunc& f) {
  const FqPtr& F = f.field();
  const int p = F->p(), m = f.nvars();
  auto root_poly = [&](const Poly& P) -> std::optional<Poly> {
    std::vector<PTerm> out;
    for (const auto& t : P.terms()) {
      Mono e{};
      for (int i = 0; i < m; ++i) {
        if (t.e[i] % p) return std::nullopt;
        e[i] = (int16_t)(t.e[i] / p);
      }
      out.push_back({e, F->root_p(t.c)});
    }
    return Poly::from_terms(F, m, std::move(out));
  };
  auto n = root_poly(f.num()), d = root_poly(f.den());
  if (!n || !d) return std::nullopt;
  return RatFunc(*n, *d);
}

bool is_pth_power(const RatFunc& f) { return d(f).is_zero(); }

// b = pi^j * y with y a Gauss unit; returns j and the reduction of y.
struct PiSplit {
  int j = 0;
  RatFunc ybar;
  bool y_constant = true;
};

PiSplit split_pi(const LocalFrac& b) {
  PiSplit s;
  s.j = b.valuation();
  s.ybar = b.leading_reduction();
  s.y_constant = s.ybar.is_constant();
  return s;
}

struct TermRsw {
  int level = 0;
  Form2 alpha;
  Form1 beta;
};

// rsw of a single (a, b)_p over k with a a 1-unit or a unit; nullopt when the shape is not recognised.
std::optional<TermRsw> term_rsw(const LocalFrac& a, const LocalFrac& b, const LocalFieldPtr& k, int m) {
  const FqPtr& F = k->residue();
  const int ep = eprime_checked(k);
  const RatFunc C = cst(F, m, cbar(k));
  TermRsw r{0, Form2(F, m), Form1(F, m)};
  if (a.valuation() != 0 || b.num().is_zero()) return std::nullopt;
  LocalFrac am1 = a - LocalFrac::constant(LocalElem::one(k), m);
  PiSplit bs = split_pi(b);
  if (am1.num().is_zero()) return r;  // a = 1
  const int v = am1.valuation();
  if (v == 0) {
    // {x a1, pi^j y} = j [0, cbar dlog x] at level e' plus the 1-unit part; {x, y} is tame.
    RatFunc xbar = a.leading_reduction();
    r.level = ep;
    r.beta = dlog(xbar) * C.scale(F->from_int(bs.j));
    if (!r.beta.is_zero()) return r;
    return term_rsw(a / LocalFrac::lift(xbar, k), b, k, m);
  }
  const int n = ep - v;
  if (n <= 0) return r;
  RatFunc xbar = am1.leading_reduction();
  r.level = n;
  // j {1 + x pi^v, pi} + {1 + x pi^v, y}
  if (bs.j % F->p()) r.beta = d(xbar) * C.scale(F->from_int(bs.j));
  if (!bs.y_constant) {
    Form1 w = dlog(bs.ybar) * xbar;
    r.alpha = r.alpha + d(w) * C;
    r.beta = r.beta + (w * C).scale(F->from_int(n));
  }
  return r;
}

LocalElem embed(const LocalFieldPtr& to, const LocalElem& x) {
  return x.field()->same(*to) ? x : include_from(to, x);
}

}  // namespace

// ---- RefinedSwan ----

bool RefinedSwan::same(const RefinedSwan& o) const {
  if (n != o.n || alpha != o.alpha) return false;
  Form1 diff = beta - o.beta;
  if (mod_log || o.mod_log) return diff.is_constant();
  return diff.is_zero();
}

nlohmann::json to_json(const RefinedSwan& r) {
  return {{"n", r.n}, {"alpha", r.alpha.str()}, {"beta", r.beta.str()}, {"pi_tag", r.pi_tag}, {"mod_log", r.mod_log}};
}

void check_dbna(const RefinedSwan& r) {
  ++g_dbna_checks;
  if (r.n == 0) {
    if (!r.is_zero()) throw Error(Errc::hypothesis_violated, "level 0 carries a nonzero rsw");
    return;
  }
  if (!is_closed(r.alpha)) throw Error(Errc::hypothesis_violated, "d(alpha) != 0 for " + r.alpha.str());
  const FqPtr& F = r.beta.field();
  if (d(r.beta) != r.alpha.scale(F->from_int(r.n)))
    throw Error(Errc::hypothesis_violated, "d(beta) != n alpha at level " + std::to_string(r.n));
}

long long dbna_check_count() { return g_dbna_checks.load(); }

int cbar(const LocalFieldPtr& k) {
  const int S = k->root_of_unity_exponent();
  if (S < 1) throw Error(Errc::missing_root_of_unity, k->text() + " does not contain zeta_p");
  const int p = k->p();
  LocalElem z = k->zeta();
  for (int i = 1; i < S; ++i) z = z.pow(p);
  LocalElem lp = (z - LocalElem::one(k)).pow(p);
  if (lp.valuation() != k->eprime()) throw Error(Errc::invalid_argument, "v((zeta_p - 1)^p) differs from e'");
  return k->residue()->inv(lp.unit_part().residue());
}

int ubar(const LocalFieldPtr& k) { return LocalElem::from_int(k, k->p()).unit_part().residue(); }

// ---- shapes ----

RefinedSwan rsw_of_symbol(const ClassShape& sh) {
  const auto& k = sh.k;
  if (sh.kind == ClassShape::Kind::rsw_exist) {
    const int m = (int)sh.betas.size();
    Form1 beta(k->residue(), m);
    for (int i = 0; i < m; ++i) beta.set(i, cst(k->residue(), m, sh.betas[i]));
    return construct_with_rsw(beta, sh.n, sh.t, k).rsw;
  }
  const int ep = eprime_checked(k);
  const FqPtr& F = k->residue();
  const int m = sh.x.nvars();
  const RatFunc C = cst(F, m, cbar(k));
  RefinedSwan r{sh.n, Form2(F, m), Form1(F, m), k->tag(), false};
  switch (sh.kind) {
    case ClassShape::Kind::unit_unit: {
      if (sh.n <= 0 || sh.n >= ep) throw Error(Errc::out_of_range_level, "unit-unit shapes need 0 < n < e'");
      if (sh.y.is_zero() || sh.x.is_zero()) throw Error(Errc::zero_at_point, "shape entries must be nonzero");
      Form1 w = dlog(sh.y) * sh.x;
      r.alpha = d(w) * C;
      r.beta = (w * C).scale(F->from_int(sh.n));
      break;
    }
    case ClassShape::Kind::unit_pi:
      if (sh.n <= 0 || sh.n >= ep) throw Error(Errc::out_of_range_level, "unit-pi shapes need 0 < n < e'");
      r.beta = d(sh.x) * C;
      break;
    case ClassShape::Kind::x_pi:
      if (sh.n != 0 && sh.n != ep) throw Error(Errc::out_of_range_level, "x-pi shapes live at level e'");
      if (sh.x.is_zero()) throw Error(Errc::zero_at_point, "shape entries must be nonzero");
      r.n = ep;
      r.beta = dlog(sh.x) * C;
      break;
    default:
      break;
  }
  if (r.is_zero()) throw Error(Errc::out_of_range_level, "shape degenerates: rsw vanishes at level " + std::to_string(r.n));
  return finish(r);
}

BrauerClass symbol_of_shape(const ClassShape& sh) {
  const auto& k = sh.k;
  if (sh.kind == ClassShape::Kind::rsw_exist) {
    const int m = (int)sh.betas.size();
    Form1 beta(k->residue(), m);
    for (int i = 0; i < m; ++i) beta.set(i, cst(k->residue(), m, sh.betas[i]));
    return construct_with_rsw(beta, sh.n, sh.t, k).cls;
  }
  const int ep = eprime_checked(k);
  const int m = sh.x.nvars();
  BrauerClass A;
  A.field = k;
  A.m = m;
  LocalFrac one = LocalFrac::constant(LocalElem::one(k), m), pi = LocalFrac::constant(LocalElem::pi(k), m);
  LocalFrac x = LocalFrac::lift(sh.x, k);
  switch (sh.kind) {
    case ClassShape::Kind::unit_unit:
      A.terms.push_back({one + x * LocalFrac::constant(LocalElem::pi(k).pow(ep - sh.n), m), LocalFrac::lift(sh.y, k), 1});
      break;
    case ClassShape::Kind::unit_pi:
      A.terms.push_back({one + x * LocalFrac::constant(LocalElem::pi(k).pow(ep - sh.n), m), pi, 1});
      break;
    case ClassShape::Kind::x_pi:
      A.terms.push_back({x, pi, 1});
      break;
    default:
      break;
  }
  return A;
}

ClassRsw rsw_of_class(const BrauerClass& A) {
  const LocalFieldPtr& k = A.field;
  const FqPtr& F = k->residue();
  const int m = A.m;
  std::vector<TermRsw> rs;
  for (const auto& t : A.terms) {
    if (t.s != 1) throw Error(Errc::unsupported_shape, "no shape formula for symbols of order p^" + std::to_string(t.s));
    auto r = term_rsw(t.a, t.b, k, m);
    if (!r) {
      r = term_rsw(t.b, t.a, k, m);
      if (!r) throw Error(Errc::unsupported_shape, "unrecognised symbol shape (" + t.a.str() + ", " + t.b.str() + ")");
      r->alpha = -r->alpha;
      r->beta = -r->beta;
    }
    rs.push_back(*r);
  }
  ClassRsw out;
  int L = 0, Lz = 0;
  for (const auto& r : rs) {
    if (r.alpha.is_zero() && r.beta.is_zero())
      Lz = std::max(Lz, r.level);
    else
      L = std::max(L, r.level);
  }
  // A term whose leading formula vanishes has an unknown level below its nominal one.
  if (Lz > L) out.possible_cancellation = true;
  out.rsw = RefinedSwan{L, Form2(F, m), Form1(F, m), k->tag(), false};
  bool any = false;
  for (const auto& r : rs)
    if (r.level == L && L > 0) {
      out.rsw.alpha = out.rsw.alpha + r.alpha;
      out.rsw.beta = out.rsw.beta + r.beta;
      any = true;
    }
  if (any && out.rsw.is_zero()) out.possible_cancellation = true;
  if (A.cores && L > 0) {
    const int eps = A.cores->epsilon;
    if (L % eps) throw Error(Errc::unsupported_shape, "level over k' is not divisible by [k':k]");
    const int n = L / eps;
    // rsw_n(cores C') = [eps w^n alpha', w^n beta'] for N pi', then (a/w)^n to return to pi.
    LocalElem pib = include_from(k, LocalElem::pi(A.cores->base));
    int abar = pib.mul_pi_pow(-eps).residue();
    RatFunc an = cst(F, m, F->pow(abar, n));
    out.rsw.n = n;
    out.rsw.alpha = (out.rsw.alpha * an).scale(F->from_int(eps));
    out.rsw.beta = out.rsw.beta * an;
    out.rsw.pi_tag = A.cores->base->tag();
  }
  if (!out.possible_cancellation) check_dbna(out.rsw);
  return out;
}

ConstructedClass construct_with_rsw(const Form1& beta, int n, int t, const LocalFieldPtr& k) {
  const int p = k->p(), e = k->e(), m = beta.nvars();
  const FqPtr& F = k->residue();
  if (t < 0) throw Error(Errc::invalid_argument, "t must be nonnegative");
  std::vector<int> b(m);
  for (int i = 0; i < m; ++i) {
    if (!beta[i].is_constant()) throw Error(Errc::invalid_argument, "beta must have constant coefficients");
    b[i] = beta[i].constant_value();
  }
  // 0 < n < e' + t e with e' = e p / (p - 1) possibly fractional.
  if (n <= 0 || (long long)n * k->eprime_den() >= k->eprime_num() + (long long)t * e * k->eprime_den())
    throw Error(Errc::out_of_range_level, "construction needs 0 < n < e' + t e");

  LocalFieldPtr kp = k;
  int eps = 1;
  if (k->root_of_unity_exponent() < t + 1) {
    if (k->root_of_unity_exponent() >= 1 || t > 0 || e > 1) {
      if (k->root_of_unity_exponent() >= 1 || (e == 1 && t > 0)) throw Error(Errc::coprimality_violated, "[k(mu_{p^{t+1}}) : k] is divisible by p");
      throw Error(Errc::invalid_argument, "corestriction is implemented from unramified bases only");
    }
    eps = p - 1;
    if (k->f() == 1) {
      kp = LocalField::make_cyclotomic(p, 1);
    } else {
      std::vector<UVec> eis;
      long long c = 1;
      for (int i = 0; i < p - 1; ++i) {  // Phi_p(1 + x): coefficient of x^i is binom(p, i + 1)
        c = c * (p - i) / (i + 1);
        UVec u(k->f(), 0);
        u[0] = c;
        eis.push_back(u);
      }
      kp = LocalField::make(p, k->f(), eis, k->tag() + "z" + std::to_string(p), k->cap());
    }
  }

  ConstructedClass out;
  out.cls.field = kp;
  out.cls.m = m;
  if (eps > 1) out.cls.cores = Corestriction{k, eps};
  out.rsw = RefinedSwan{n, Form2(F, m), beta, k->tag(), false};
  const long long nte = (long long)n - (long long)t * e;
  const bool pdiv = nte % p == 0;
  LocalElem zp = kp->zeta();
  for (int i = 1; i < kp->root_of_unity_exponent(); ++i) zp = zp.pow(p);
  LocalElem lam_p = (zp - LocalElem::one(kp)).pow(p);
  LocalElem pin = embed(kp, LocalElem::pi(k)).pow(n);
  LocalElem coef = LocalElem::from_int(kp, p).pow(t) * lam_p / pin;
  long long denom = pdiv ? eps : eps * nte;
  coef = coef * LocalElem::from_int(kp, denom).inv();
  LocalFrac one = LocalFrac::constant(LocalElem::one(kp), m);
  for (int i = 0; i < m; ++i) {
    if (b[i] == 0) continue;
    LocalFrac ui(LocalPoly::var(kp, m, i));
    LocalFrac a = one + ui * LocalFrac::constant(coef * teichmuller(kp, b[i]), m);
    LocalFrac second = pdiv ? LocalFrac::constant(embed(kp, LocalElem::pi(k)), m) : ui;
    out.cls.terms.push_back({a, second, t + 1});
  }
  if (t == 0 && !out.cls.is_zero()) {
    ClassRsw chk = rsw_of_class(out.cls);
    if (!chk.rsw.same(out.rsw))
      throw Error(Errc::hypothesis_violated, "constructed class recomputes to " + chk.rsw.beta.str() + " at level " +
                                                 std::to_string(chk.rsw.n));
  }
  check_dbna(out.rsw);
  return out;
}

// ---- transformations ----

RefinedSwan basechange_rsw(const RefinedSwan& r, int e_rel, const RatFunc& abar, const std::string& new_tag) {
  if (r.n < 1) throw Error(Errc::invalid_argument, "base change needs n >= 1");
  if (e_rel < 1) throw Error(Errc::invalid_argument, "ramification index must be positive");
  if (abar.is_zero()) throw Error(Errc::zero_at_point, "abar must be a unit");
  const FqPtr& F = r.beta.field();
  RatFunc an = abar.pow(-(long long)r.n);
  RefinedSwan o;
  o.n = e_rel * r.n;
  o.alpha = (r.alpha + wedge(r.beta, dlog(abar))) * an;
  o.beta = (r.beta * an).scale(F->from_int(e_rel));
  o.pi_tag = new_tag.empty() ? r.pi_tag + "'" : new_tag;
  o.mod_log = r.mod_log;
  return finish(o);
}

PMultiple multiply_by_p_rsw(const RefinedSwan& r, const LocalFieldPtr& k) {
  const int e = k->e();
  if (!k->eprime_integral()) throw Error(Errc::invalid_argument, "e' is not an integer for " + k->text());
  const int ep = k->eprime();
  const FqPtr& F = r.beta.field();
  const int m = r.beta.nvars();
  if (r.n < ep - 1) throw Error(Errc::below_threshold, "multiplication by p needs n >= e' - 1");
  PMultiple out;
  out.level = r.n - e;
  out.rsw = RefinedSwan{std::max(0, r.n - e), Form2(F, m), Form1(F, m), r.pi_tag, r.mod_log};
  if (r.n == ep - 1) {
    out.bound_only = true;
    return out;
  }
  const RatFunc U = cst(F, m, ubar(k));
  out.rsw.alpha = r.alpha * U;
  out.rsw.beta = r.beta * U;
  if (r.n == ep) {
    if (!d(r.beta).is_zero()) throw Error(Errc::hypothesis_violated, "Cartier correction needs d(beta) = 0");
    out.rsw.alpha = out.rsw.alpha + cartier(r.alpha);
    out.rsw.beta = out.rsw.beta + cartier(r.beta);
  }
  check_dbna(out.rsw);
  return out;
}

// ---- blowup descent ----

Form1 quadratic_companion(const Form2& alpha, const std::vector<int>& P0) {
  const FqPtr& F = alpha.field();
  const int m = alpha.nvars();
  Form1 q(F, m);
  auto y = [&](int i) { return RatFunc::var(F, m, i) - cst(F, m, P0.empty() ? 0 : P0[i]); };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < i; ++j) {
      RatFunc a = alpha.get(i, j);
      if (a.is_zero()) continue;
      q = q + Form1::dx(F, m, i) * (a * y(j)) - Form1::dx(F, m, j) * (a * y(i));
    }
  return q;
}

DescentResult blowup_descend(const RefinedSwan& r, const std::vector<int>& P0, std::optional<int> s_hint) {
  const FqPtr& F = r.beta.field();
  const int m = r.beta.nvars(), p = F->p(), n = r.n;
  if ((int)P0.size() != m) throw Error(Errc::invalid_argument, "P0 needs one coordinate per variable");
  if (n < 1) throw Error(Errc::invalid_argument, "descent needs n >= 1");
  std::vector<int> b0, a0;
  try {
    b0 = constant_coeffs(r.beta, P0);
    a0 = constant_coeffs(r.alpha, P0);
  } catch (const Error& e) {
    throw Error(Errc::pole_at_point, std::string("rsw is not regular at P0: ") + e.what());
  }
  DescentResult out;
  out.rsw = RefinedSwan{0, Form2(F, m), Form1(F, m), r.pi_tag, false};
  out.g = Poly(F, m);
  out.end_alpha = Form1(F, m);
  out.end_beta = RatFunc(F, m);
  bool b0_zero = true, a0_zero = true;
  for (int c : b0) b0_zero &= c == 0;
  for (int c : a0) a0_zero &= c == 0;

  if (n == 1) {
    out.regime = DescentResult::Regime::endgame;
    out.level_exact = true;
    for (int i = 0; i < m; ++i) out.g = out.g + Poly::var(F, m, i).scale(b0[i]);
    // F / X_1 = b_1 + sum_{j >= 2} b_j t_j in the chart of X_1.
    RatFunc fb = cst(F, m, b0[0]);
    for (int j = 1; j < m; ++j) fb = fb + RatFunc::var(F, m, j).scale(b0[j]);
    out.end_beta = fb;
    out.end_alpha = -d(fb);
    check_dbna(out.rsw);
    return out;
  }
  if (p == 2 && n == 2 && r.beta.is_zero() && !r.mod_log) {
    out.regime = DescentResult::Regime::endgame_quadratic;
    out.level_exact = true;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (a0[i * m + j]) out.g = out.g + (Poly::var(F, m, i) * Poly::var(F, m, j)).scale(a0[i * m + j]);
    check_dbna(out.rsw);
    return out;
  }

  // downby2: level n = n0 - 2s with p | n0 and beta = s Q(alpha) around P0; drops to n - 2.
  if (b0_zero || r.mod_log) {
    Form1 Q = quadratic_companion(r.alpha, P0);
    auto fits = [&](int s) {
      if ((n + 2 * s) % p) return false;
      Form1 diff = r.beta - Q.scale(F->from_int(s));
      return r.mod_log ? diff.is_constant() : diff.is_zero();
    };
    std::optional<int> s;
    if (s_hint) {
      if (!fits(*s_hint)) throw Error(Errc::hypothesis_violated, "beta is not s Q(alpha) for the given s");
      s = s_hint;
    } else {
      for (int c = 0; c < p && !s; ++c)
        if (fits(c)) s = c;
    }
    if (s && n - 2 >= 0) {
      out.regime = DescentResult::Regime::downby2;
      out.s = *s;
      out.level_exact = !a0_zero;
      out.rsw.n = n - 2;
      out.rsw.mod_log = true;
      if (!a0_zero && out.rsw.n > 0) {
        Form2 aE(F, m);
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j)
            if (a0[i * m + j]) aE.set(i, j, cst(F, m, a0[i * m + j]));
        out.rsw.alpha = aE;
        out.rsw.beta = quadratic_companion(aE, {}).scale(F->from_int(*s + 1));
      }
      check_dbna(out.rsw);
      return out;
    }
  }

  // downby1: beta_E = sum b_i du_i at level <= n - 1.
  out.regime = DescentResult::Regime::downby1;
  out.rsw.n = n - 1;
  out.level_exact = !b0_zero && !r.mod_log;
  out.alpha_known = (n - 1) % p != 0;
  out.rsw.mod_log = r.mod_log;
  for (int i = 0; i < m; ++i)
    if (b0[i]) out.rsw.beta = out.rsw.beta + Form1::dx(F, m, i).scale(b0[i]);
  check_dbna(out.rsw);
  return out;
}

// ---- Kummer conductors ----

int kummer_conductor(const LocalFrac& a0) {
  const LocalFieldPtr& k = a0.field();
  const int p = k->p(), m = a0.nvars();
  const int ep = eprime_checked(k);
  const FqPtr& F = k->residue();
  if (a0.num().is_zero()) throw Error(Errc::unclassifiable, "zero has no Kummer class");
  const int v = a0.valuation();
  if (v % p) return ep + 1;
  // Strip pi^v, a p-th power.
  auto strip = [&](const LocalPoly& P) {
    const int w = P.valuation();
    LocalPoly q(k, m);
    for (const auto& [e, c] : P.terms()) {
      LocalPoly mono = LocalPoly::constant(c.mul_pi_pow(-w), m);
      for (int i = 0; i < m; ++i)
        for (int t = 0; t < e[i]; ++t) mono = mono * LocalPoly::var(k, m, i);
      q = q + mono;
    }
    return q;
  };
  LocalFrac a(strip(a0.num()), strip(a0.den()));
  const LocalFrac one = LocalFrac::constant(LocalElem::one(k), m);
  RatFunc xbar = a.leading_reduction();
  if (!is_pth_power(xbar)) return ep;
  a = a / LocalFrac::lift(*root_p(xbar), k).pow(p);
  for (int guard = 0; guard < 64; ++guard) {
    LocalFrac am1 = a - one;
    if (am1.num().is_zero()) throw Error(Errc::unclassifiable, "generator is a p-th power to working precision");
    const int mm = am1.valuation();
    if (mm >= ep) throw Error(Errc::unclassifiable, "1 + x pi^m with m >= e' is outside the four shapes");
    RatFunc x = am1.leading_reduction();
    if (mm % p) return ep + 1 - mm;
    if (!is_pth_power(x)) return ep - mm;
    // a = (1 + y pi^{m/p})^p * (higher unit); divide and continue.
    LocalFrac y = LocalFrac::lift(*root_p(x), k) * LocalFrac::constant(LocalElem::pi(k).pow(mm / p), m);
    a = a / (one + y).pow(p);
  }
  throw Error(Errc::unclassifiable, "normalisation did not terminate");
}

bool in_modified_fil(const RefinedSwan& r, int n) {
  if (r.n <= n) return true;
  if (r.n == n + 1) return r.beta.is_zero() && !r.mod_log;
  return false;
}

}  // namespace swanlab
