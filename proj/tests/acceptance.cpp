// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact (rational or finite field).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "swanlab/disc_lab.hpp"
#include "swanlab/errors.hpp"
#include "swanlab/swan.hpp"

using namespace swanlab;

namespace {

// Pinned thresholds.
constexpr int kMinClassesP2 = 20;
constexpr int kMinClassesP3 = 10;
constexpr int kMinFiltrationCentres = 5;
constexpr long long kMinDbna = 200;
constexpr int kMinOrderP2Classes = 10;
constexpr int kMinBlowupForms = 50;
constexpr int kMaxDescentSteps = 3;
constexpr int kMaxEprime = 6;
constexpr int kMinOraclePairs = 500;
constexpr double kSecondsP2 = 300.0;
constexpr double kSecondsP3 = 600.0;

using Rng = std::mt19937_64;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string failure;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) failure = what;
    pass = pass && ok;
  }
};

void report(int id, const Outcome& o) {
  std::printf("criterion %2d %s: %s%s%s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
              o.failure.empty() ? "" : "; first failure: ", o.failure.c_str());
  std::fflush(stdout);
}

// Every rsw seen by the run, for the independent d(beta) = n alpha recheck.
std::vector<RefinedSwan> g_seen;

LabOptions lab(int jobs = 4) {
  LabOptions o;
  o.jobs = jobs;
  return o;
}

// Tr_{F_q/F_p} through the Frobenius orbit, read as an integer.
int trace_oracle(const FqPtr& F, int x) {
  int s = 0, y = x;
  for (int i = 0; i < F->f(); ++i) {
    s = F->add(s, y);
    y = F->pow(y, F->p());
  }
  auto dg = F->digits(s);
  for (size_t j = 1; j < dg.size(); ++j)
    if (dg[j] != 0) throw Error(Errc::hypothesis_violated, "trace left F_p");
  return dg.empty() ? 0 : dg[0];
}

// (1/p) Tr(beta(v)) with the constant coefficients of beta carried into the point field.
QZ linear_oracle(const Form1& beta, const PointField& pf, const TangentVec& v) {
  const FqPtr& G = pf.K->residue();
  std::vector<int> zero(beta.nvars(), 0);
  auto b = beta.at(zero);
  int s = 0;
  for (size_t i = 0; i < v.size(); ++i) s = G->add(s, G->mul(pf.residue_map(b[i]), v[i]));
  return QZ(trace_oracle(G, s), G->p());
}

Form1 random_constant_form(const FqPtr& F, int m, Rng& rng) {
  for (;;) {
    Form1 b(F, m);
    bool nz = false;
    for (int i = 0; i < m; ++i) {
      int c = (int)(rng() % F->q());
      nz = nz || c != 0;
      b.set(i, RatFunc::constant(F, m, c));
    }
    if (nz) return b;
  }
}

// The symbols of a constructed class give back the prescribed rsw.
void recheck_from_symbols(Outcome& o, const ConstructedClass& cc, const std::string& tag) {
  auto side = rsw_of_class(cc.cls);
  g_seen.push_back(side.rsw);
  o.require(!side.possible_cancellation && side.rsw.same(cc.rsw), tag + " rsw from symbols differs for " + cc.cls.str());
}

struct SweptClass {
  ConstructedClass cc;
  LocalFieldPtr k;
  int n = 0, m = 0;
};

// ---- 1: linear law for p = 2 -------------------------------------------------------------------------------
Outcome criterion1(std::vector<SweptClass>& out) {
  Outcome o;
  auto t0 = Clock::now();
  Rng rng(101);
  int classes = 0;
  long long entries = 0;
  for (const char* tag : {"Q2", "Q2i"}) {
    auto k = LocalField::parse(tag);
    const int want = std::string(tag) == "Q2" ? 8 : 16;
    for (int c = 0; c < want; ++c) {
      const int m = 1 + c % 2;
      const int n = 1 + (int)(rng() % (k->eprime() - 1));
      auto beta = random_constant_form(k->residue(), m, rng);
      auto cc = construct_with_rsw(beta, n, 0, k);
      g_seen.push_back(cc.rsw);
      recheck_from_symbols(o, cc, std::string(tag));
      auto pf = (c % 3 == 2) ? PointField::unramified(k, 2) : PointField::of(k);
      auto P = random_center(pf, m, 3, rng());
      auto T = sweep(cc.cls, P, n, pf, lab());
      const std::string at = std::string(tag) + " n=" + std::to_string(n) + " beta=" + beta.str() + " at " + P.str();
      o.require((long long)T.entries.size() == (long long)std::pow(pf.K->residue()->q(), m), at + " incomplete shell");
      for (const auto& e : T.entries) {
        const bool exact = e.diff.inv && e.diff.inv->kind == InvValue::Kind::exact;
        o.require(exact, at + " undecided entry");
        if (exact) o.require(e.diff.inv->value == linear_oracle(beta, pf, e.v), at + " entry mismatch");
        ++entries;
      }
      ++classes;
      out.push_back({cc, k, n, m});
    }
  }
  const double sec = seconds_since(t0);
  o.require(classes >= kMinClassesP2, "too few classes");
  o.require(sec < kSecondsP2, "time limit");
  o.detail = std::to_string(classes) + " classes over Q2 and Q2(i), " + std::to_string(entries) +
             " entries equal (1/2)Tr(beta(v)) exactly, " + std::to_string((int)sec) + " s (limit " +
             std::to_string((int)kSecondsP2) + " s)";
  return o;
}

// ---- 2: kernel law for p = 3 -------------------------------------------------------------------------------
Outcome criterion2(std::vector<SweptClass>& out) {
  Outcome o;
  auto t0 = Clock::now();
  Rng rng(202);
  auto k = LocalField::parse("Q3z3");
  int classes = 0;
  for (int c = 0; c < 12; ++c) {
    const int m = 1 + c % 2;
    const int n = 1 + c % 2;
    auto beta = random_constant_form(k->residue(), m, rng);
    auto cc = construct_with_rsw(beta, n, 0, k);
    g_seen.push_back(cc.rsw);
    recheck_from_symbols(o, cc, "Q3z3");
    auto pf = (c % 4 == 3) ? PointField::unramified(k, 2) : PointField::of(k);
    auto P = random_center(pf, m, 3, rng());
    auto T = sweep(cc.cls, P, n, pf, lab());
    const std::string at = "Q3z3 n=" + std::to_string(n) + " beta=" + beta.str() + " at " + P.str();
    std::set<TangentVec> trivial, kernel;
    for (const auto& e : T.entries) {
      o.require(e.diff.inv.has_value(), at + " undecided entry");
      if (e.diff.inv && e.diff.inv->value.is_zero()) trivial.insert(e.v);
      if (linear_oracle(beta, pf, e.v).is_zero()) kernel.insert(e.v);
    }
    o.require(trivial == kernel, at + " kernel mismatch");
    ++classes;
    out.push_back({cc, k, n, m});
  }
  const double sec = seconds_since(t0);
  o.require(classes >= kMinClassesP3, "too few classes");
  o.require(sec < kSecondsP3, "time limit");
  o.detail = std::to_string(classes) + " classes over Q3(zeta_3), trivial set = ker(Tr o beta) exactly, " +
             std::to_string((int)sec) + " s (limit " + std::to_string((int)kSecondsP3) + " s)";
  return o;
}

// ---- 3: evaluation filtration -------------------------------------------------------------------------------
Outcome criterion3(const std::vector<SweptClass>& classes) {
  Outcome o;
  Rng rng(303);
  int checked = 0;
  for (const auto& sc : classes) {
    std::vector<SampleCenter> S;
    for (int d : {1, 2}) {
      auto pf = PointField::unramified(sc.k, d);
      for (int i = 0; i < kMinFiltrationCentres; ++i) S.push_back({random_center(pf, sc.m, 3, rng()), pf});
    }
    auto fr = empirical_filtration(sc.cc.cls, S, sc.n + 2, lab());
    const std::string at = sc.k->tag() + " n=" + std::to_string(sc.n) + " " + sc.cc.rsw.beta.str();
    o.require(!fr.undecided, at + " undecided");
    o.require(fr.estimate == sc.n, at + " estimate " + std::to_string(fr.estimate));
    o.require(fr.witness_radius == sc.n, at + " witness radius");
    for (auto [r, cst] : fr.constancy)
      if (r == sc.n + 1) o.require(cst, at + " not constant at radius n+1");
    ++checked;
  }
  auto Q2 = LocalField::parse("Q2");
  auto ctl = BrauerClass::parse("1 + 4*u1, 2, 2", Q2, 1);
  std::vector<SampleCenter> S;
  for (int d : {1, 2}) {
    auto pf = PointField::unramified(Q2, d);
    for (int i = 0; i < kMinFiltrationCentres; ++i) S.push_back({random_center(pf, 1, 3, rng()), pf});
  }
  auto fr = empirical_filtration(ctl, S, 2, lab());
  o.require(fr.estimate == 0 && !fr.undecided, "control estimate " + std::to_string(fr.estimate));
  for (auto [r, cst] : fr.constancy)
    if (r == 1) o.require(cst, "control not constant on residue discs");
  o.detail = std::to_string(checked) + " classes return exactly n on " + std::to_string(2 * kMinFiltrationCentres) +
             " centres over F_q and F_q^2; tame control (1+4u1, 2)_2 returns 0";
  return o;
}

// ---- 4: surjectivity probes -------------------------------------------------------------------------------
void pairwise_distinct(Outcome& o, const ProbeReport& pr, const BrauerClass& A, const std::string& at) {
  std::vector<Evaluation> ev;
  for (const auto& [pt, v] : pr.values) ev.push_back(evaluate(A, pt, pr.pf, kDefaultOracleBudget));
  for (size_t i = 0; i < ev.size(); ++i)
    for (size_t j = i + 1; j < ev.size(); ++j) {
      auto dv = difference(ev[i], ev[j], kDefaultOracleBudget);
      o.require(dv.inv && dv.inv->kind == InvValue::Kind::exact && !dv.inv->value.is_zero(),
                at + " trivial difference between witnesses");
    }
}

Outcome criterion4() {
  Outcome o;
  auto Q2 = LocalField::parse("Q2");
  auto flag = construct_with_rsw(Form1::parse("dx1", Q2->residue(), 1), 1, 0, Q2);
  auto b1 = surjectivity_probe(flag.cls, flag.rsw, 0, Point::parse("(1)", Q2), PointField::of(Q2), lab());
  o.require(b1.part == "B1" && b1.found && b1.radius == 1 && (int)b1.values.size() == 2, "Q2 B1 probe");
  pairwise_distinct(o, b1, flag.cls, "Q2 B1");

  auto k3 = LocalField::parse("Q3z3");
  auto c3 = construct_with_rsw(Form1::parse("dx1 + dx2", k3->residue(), 2), 2, 0, k3);
  auto p3 = surjectivity_probe(c3.cls, c3.rsw, 0, Point::parse("(1, 1)", k3), PointField::of(k3), lab());
  o.require(p3.part == "B1" && p3.found && p3.radius == 2 && (int)p3.values.size() == 3, "Q3z3 B1 probe");
  pairwise_distinct(o, p3, c3.cls, "Q3z3 B1");

  auto Q2i = LocalField::parse("Q2i");
  const int n = 4;
  auto c4 = construct_with_rsw(Form1::parse("dx1 + dx2", Q2i->residue(), 2), n, 1, Q2i);
  g_seen.push_back(c4.rsw);
  auto p4 = surjectivity_probe(c4.cls, c4.rsw, 1, Point::parse("(1, 1)", Q2i), PointField::of(Q2i), lab());
  std::set<std::string> vals;
  for (const auto& [pt, v] : p4.values) vals.insert(v);
  o.require(p4.part == "B4i" && p4.found && p4.radius == n - Q2i->e(), "Q2(i) order-4 probe radius");
  o.require(vals == std::set<std::string>{"0", "1/4", "1/2", "3/4"}, "Q2(i) order-4 values");
  pairwise_distinct(o, p4, c4.cls, "Q2(i) B4i");
  o.detail = "p values at radius n over Q2 and Q3(zeta_3); 4 values {0,1/4,1/2,3/4} on B(P, n-e) over Q2(i), "
             "witness differences pairwise nontrivial";
  return o;
}

// ---- 6: multiplication by p -------------------------------------------------------------------------------
Outcome criterion6() {
  Outcome o;
  Rng rng(606);
  int checked = 0;
  for (const char* tag : {"Q2i", "Q2z8", "Q3z9"}) {
    auto k = LocalField::parse(tag);
    const int e = k->e(), ep = k->eprime();
    for (int n = ep - 1; n < ep + e; ++n) {
      auto beta = random_constant_form(k->residue(), 2, rng);
      ConstructedClass cc;
      try {
        cc = construct_with_rsw(beta, n, 1, k);
      } catch (const Error&) {
        continue;
      }
      g_seen.push_back(cc.rsw);
      auto pm = multiply_by_p_rsw(cc.rsw, k);
      if (pm.bound_only || pm.rsw.n < 1) continue;
      g_seen.push_back(pm.rsw);
      auto side = rsw_of_class(multiply_by_p(cc.cls));
      g_seen.push_back(side.rsw);
      const std::string at = std::string(tag) + " n=" + std::to_string(n) + " beta=" + beta.str();
      o.require(!side.possible_cancellation, at + " symbol side undetermined");
      o.require(side.rsw.n == pm.rsw.n, at + " levels differ");
      o.require(side.rsw.same(pm.rsw), at + " forms differ");
      ++checked;
    }
  }
  o.require(checked >= kMinOrderP2Classes, "only " + std::to_string(checked) + " classes");
  o.detail = std::to_string(checked) + " order-p^2 classes: rsw(pC) from symbols equals multiply_by_p_rsw(rsw(C))";
  return o;
}

// ---- 7: logarithmic sections and blowup residues ------------------------------------------------------------------
Poly rand_poly(const FqPtr& k, int m, Rng& rng, int terms, int deg) {
  std::vector<PTerm> t;
  for (int i = 0; i < terms; ++i) {
    Mono e{};
    for (int j = 0; j < m; ++j) e[j] = int16_t(rng() % (deg + 1));
    t.push_back({e, int(rng() % k->q())});
  }
  return Poly::from_terms(k, m, t);
}

RatFunc rand_regular(const FqPtr& k, int m, Rng& rng) {
  Poly n = rand_poly(k, m, rng, 3, 2);
  if (rng() % 2) return RatFunc(n);
  Poly d = rand_poly(k, m, rng, 2, 1);
  if (d.constant_term() == 0) d = d + Poly::constant(k, m, 1);
  return RatFunc(n, d);
}

Outcome criterion7() {
  Outcome o;
  int dims = 0, residues = 0;
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    auto k = Fq::make(p, f);
    for (int n = 1; n <= 4; ++n) {
      const std::string at = "F_" + std::to_string(k->q()) + " n=" + std::to_string(n);
      std::vector<Form1> w1, w2;
      std::vector<Form2> w3;
      for (auto& e : logdiff_basis(LogdiffKind::one_logH, k, n)) w1.push_back(e.w1);
      for (auto& e : logdiff_basis(LogdiffKind::one_2H, k, n)) w2.push_back(e.w1);
      for (auto& e : logdiff_basis(LogdiffKind::two_2H_logH, k, n)) w3.push_back(e.w2);
      o.require((int)w1.size() == n && rank_of(w1) == n, at + " Omega^1(log H)");
      o.require((int)w2.size() == n * (n + 1) / 2 && rank_of(w2) == n * (n + 1) / 2, at + " Omega^1(2H)");
      o.require((int)w3.size() == n * (n - 1) / 2 && (w3.empty() || rank_of(w3) == n * (n - 1) / 2),
                at + " Omega^2(2H)(log H)");
      dims += 3;
      // rho(d(X_i/X_0)) = -X_i|_H in the chart X_1 = 1 (t_0 = X_0/X_1 in slot 0, t_j = X_j/X_1).
      for (int i = 0; i < n; ++i) {
        RatFunc want = i == 0 ? RatFunc::constant(k, n, k->neg(1)) : -RatFunc::var(k, n, i);
        o.require(logdiff_residue(Form1::dx(k, n, i), 1, 1) == want, at + " residue of d(X_i/X_0)");
        ++residues;
      }
    }
  }
  Rng rng(707);
  int forms = 0;
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
    auto F = Fq::make(p, f);
    for (int m = 2; m <= 3; ++m)
      for (int it = 0; it < 3; ++it) {
        // Blowup chart x_1 = z, x_i = z u_i substituted literally.
        RatFunc z = RatFunc::var(F, m, 0);
        std::vector<RatFunc> img;
        for (int i = 0; i < m; ++i) img.push_back(i == 0 ? z : z * RatFunc::var(F, m, i));
        std::vector<int> P0(m, 0);
        Form1 beta(F, m);
        Form2 alpha(F, m);
        for (int i = 0; i < m; ++i) {
          beta.set(i, rand_regular(F, m, rng));
          for (int j = i + 1; j < m; ++j) alpha.set(i, j, rand_regular(F, m, rng));
        }
        const std::string at = "F_" + std::to_string(F->q()) + " m=" + std::to_string(m);
        RatFunc rb = blowup_pullback(beta).residue(1);
        o.require(rb == psi(F, constant_coeffs(beta, P0)).in_chart(0), at + " residue vs psi");
        o.require(rb == log_residue(pullback(beta, img) * z.inv(), 0), at + " residue vs substitution (1-form)");
        Form1 ra = blowup_pullback(alpha).residue(2);
        o.require(ra == phi(F, m, constant_coeffs(alpha, P0)).in_chart(0), at + " residue vs phi");
        o.require(ra == log_residue(pullback(alpha, img) * z.pow(-2), 0), at + " residue vs substitution (2-form)");
        forms += 2;
      }
  }
  o.require(forms >= kMinBlowupForms, "too few forms");
  o.detail = std::to_string(dims) + " dimension counts (n, n(n+1)/2, n(n-1)/2 for n <= 4), " + std::to_string(residues) +
             " residue identities, " + std::to_string(forms) + " random forms against psi/phi and substitution";
  return o;
}

// ---- 8: descent coherence -------------------------------------------------------------------------------
Outcome criterion8() {
  Outcome o;
  Rng rng(808);
  int chains = 0;
  for (auto [p, f, m, n0] : std::vector<std::tuple<int, int, int, int>>{{2, 1, 2, 8}, {2, 2, 3, 8}, {3, 1, 3, 9}, {3, 2, 2, 9}}) {
    auto F = Fq::make(p, f);
    for (int it = 0; it < 3; ++it) {
      Form2 alpha(F, m);
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) alpha.set(i, j, RatFunc::constant(F, m, (int)(rng() % F->q())));
      if (alpha.is_zero()) alpha.set(0, 1, RatFunc::constant(F, m, 1));
      const Form1 Q = quadratic_companion(alpha, {});
      RefinedSwan cur{n0, alpha, Form1(F, m), "pi", false};
      const std::string at = "F_" + std::to_string(F->q()) + " alpha=" + alpha.str();
      for (int s = 1; s <= kMaxDescentSteps; ++s) {
        auto dr = blowup_descend(cur, std::vector<int>(m, 0));
        g_seen.push_back(dr.rsw);
        o.require(dr.regime == DescentResult::Regime::downby2, at + " regime");
        RefinedSwan closed{n0 - 2 * s, alpha, Q.scale(F->from_int(s)), "pi", true};
        o.require(dr.rsw.same(closed), at + " step " + std::to_string(s) + " differs from the closed form");
        cur = dr.rsw;
      }
      ++chains;
    }
  }
  // n = 1 endgame: inv_trace of the Artin-Schreier element against the measured sweep.
  auto Q2 = LocalField::parse("Q2");
  int endgames = 0;
  for (auto [beta_s, m, c] : std::vector<std::tuple<const char*, int, const char*>>{
           {"dx1", 1, "(1)"}, {"dx1", 1, "(3)"}, {"dx1 + dx2", 2, "(1, 1)"}, {"dx2", 2, "(3, 5)"}}) {
    auto cc = construct_with_rsw(Form1::parse(beta_s, Q2->residue(), m), 1, 0, Q2);
    auto pf = PointField::of(Q2);
    auto P = Point::parse(c, Q2);
    auto dr = blowup_descend(cc.rsw, P.reduction());
    o.require(dr.regime == DescentResult::Regime::endgame, std::string(beta_s) + " endgame regime");
    auto T = sweep(cc.cls, P, 1, pf, lab());
    const FqPtr& G = Q2->residue();
    std::vector<int> zero(m, 0);
    const QZ base = artin_schreier_inv(FqElem(G, dr.g.eval(zero)));
    for (const auto& e : T.entries) {
      const QZ want = artin_schreier_inv(FqElem(G, dr.g.eval(e.v))) - base;
      o.require(e.diff.inv && e.diff.inv->value == want, std::string(beta_s) + " at " + c + " endgame mismatch");
    }
    ++endgames;
  }
  o.detail = std::to_string(chains) + " descent chains of " + std::to_string(kMaxDescentSteps) +
             " steps match beta = s Q(alpha) at level n - 2s; " + std::to_string(endgames) +
             " n = 1 endgames reproduce the Q2 sweep differences";
  return o;
}

// ---- 9: Kummer conductors -------------------------------------------------------------------------------
Outcome criterion9() {
  Outcome o;
  int cases = 0, fields = 0;
  for (const char* tag : {"Q2", "Q4", "Q3z3", "Q2i", "Q5z5", "Q2c", "Q3q"}) {
    auto k = LocalField::parse(tag);
    if (!k->eprime_integral() || k->eprime() > kMaxEprime) continue;
    const int p = k->p(), ep = k->eprime();
    ++fields;
    auto disguise = LocalFrac::parse("(1 + u2*pi)^" + std::to_string(p) + " * u2^" + std::to_string(p), k, 2);
    auto check = [&](const std::string& a, int want) {
      const std::string at = std::string(tag) + " " + a;
      o.require(kummer_conductor(LocalFrac::parse(a, k, 2)) == want, at);
      o.require(kummer_conductor(LocalFrac::parse(a, k, 2) * disguise) == want, at + " times a p-th power");
      ++cases;
    };
    check("pi*u1", ep + 1);
    check("u1", ep);
    for (int m = 1; m < ep; ++m) check("1 + u1*pi^" + std::to_string(m), m % p ? ep + 1 - m : ep - m);
  }
  o.detail = std::to_string(cases) + " generators over " + std::to_string(fields) +
             " fields with e' <= 6 give e'+1, e', e'+1-m, e'-np (each also after a p-th power twist)";
  return o;
}

// ---- 10: oracle soundness -------------------------------------------------------------------------------
QZ hilbert_closed_form(long long x, long long y) {
  auto split = [](long long n, int& v) {
    v = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++v;
    }
    return n;
  };
  auto eps = [](long long u) { return (int)((((u - 1) / 2) % 2 + 2) % 2); };
  auto omega = [](long long u) {
    long long r = ((u % 8) + 8) % 8;
    return (int)(((r * r - 1) / 8) % 2);
  };
  int a, b;
  long long u = split(x, a), v = split(y, b);
  return QZ((eps(u) * eps(v) + a * omega(v) + b * omega(u)) % 2, 2);
}

LocalElem random_unit(const LocalFieldPtr& F, Rng& rng) {
  for (;;) {
    std::vector<int64_t> a(F->e() * F->f());
    for (auto& c : a) c = (int64_t)(rng() % (uint64_t)F->modulus());
    auto x = LocalElem::from_coeffs(F, a, F->default_precision());
    if (x.is_unit()) return x;
  }
}

LocalElem random_nonzero(const LocalFieldPtr& F, Rng& rng) { return random_unit(F, rng).mul_pi_pow((int)(rng() % 3)); }

Outcome criterion10() {
  Outcome o;
  auto Q2 = LocalField::parse("Q2");
  int table = 0;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (long long u : {1, 3, 5, 7})
        for (long long v : {1, 3, 5, 7}) {
          const long long x = u << a, y = v << b;
          auto h = hilbert2(LocalElem::from_int(Q2, x), LocalElem::from_int(Q2, y));
          o.require(h.kind == InvValue::Kind::exact && h.value == hilbert_closed_form(x, y),
                    "(" + std::to_string(x) + ", " + std::to_string(y) + ")_2");
          ++table;
        }
  Rng rng(1010);
  int pairs = 0;
  for (const char* tag : {"Q2", "Q2i", "Q2c"}) {
    auto K = LocalField::parse(tag);
    auto one = LocalElem::one(K);
    for (int it = 0; it < 170; ++it) {
      auto x = random_nonzero(K, rng), y = random_nonzero(K, rng), z = random_nonzero(K, rng);
      const std::string at = std::string(tag) + " pair " + std::to_string(it);
      QZ xy = hilbert2(x, y).value, xz = hilbert2(x, z).value;
      o.require(hilbert2(x, y * z).value == xy + xz, at + " bilinearity");
      o.require(hilbert2(y, x).value == -xy, at + " antisymmetry");
      o.require(hilbert2(x, -x).value.is_zero(), at + " (x, -x)");
      auto w = one - x;
      if (!w.is_zero() && w.valuation() < 6) o.require(hilbert2(x, w).value.is_zero(), at + " (x, 1 - x)");
      ++pairs;
    }
  }
  int norms = 0;
  auto Q2i = LocalField::parse("Q2i");
  for (int it = 0; it < 40; ++it) {
    auto a = random_nonzero(Q2i, rng), c0 = random_unit(Q2i, rng), c1 = random_nonzero(Q2i, rng);
    auto b = c0 * c0 - a * c1 * c1;
    if (b.is_zero()) continue;
    o.require(norm_triviality(a, b), "Q2(i) norm rejected");
    ++norms;
  }
  auto K3 = LocalField::parse("Q3z3");
  for (int it = 0; it < 20; ++it) {
    auto a = random_nonzero(K3, rng);
    std::vector<LocalElem> c = {random_unit(K3, rng), random_nonzero(K3, rng), random_nonzero(K3, rng)};
    std::vector<std::vector<LocalElem>> M = {{c[0], a * c[2], a * c[1]}, {c[1], c[0], a * c[2]}, {c[2], c[1], c[0]}};
    auto b = determinant(M);
    if (b.is_zero()) continue;
    o.require(norm_triviality(a, b), "Q3(zeta_3) norm rejected");
    ++norms;
  }
  int refs = 0;
  for (const char* tag : {"Q2", "Q2i", "Q3z3", "Q5z5"}) {
    auto K = LocalField::parse(tag);
    o.require(!norm_triviality(unramified_reference(K, 1), LocalElem::pi(K)), std::string(tag) + " accepted the non-norm");
    ++refs;
  }
  o.require(pairs >= kMinOraclePairs, "too few pairs");
  o.detail = std::to_string(table) + " Q2 pairs match the closed form, " + std::to_string(pairs) +
             " random pairs satisfy bilinearity/antisymmetry/Steinberg, " + std::to_string(norms) +
             " constructed norms accepted, " + std::to_string(refs) + " unramified non-norms rejected";
  return o;
}

// ---- 5: d(beta) = n alpha on everything produced ------------------------------------------------------------------
Outcome criterion5() {
  Outcome o;
  // Shape formulas against the symbol classifier over a grid of fields, levels and residue functions.
  int shapes = 0;
  for (const char* tag : {"Q2", "Q2i", "Q3z3", "Q2z8", "Q5z5"}) {
    auto k = LocalField::parse(tag);
    auto F = k->residue();
    for (int n = 1; n < k->eprime(); ++n)
      for (const char* x : {"x1", "x1 + x2^2", "1 + x1*x2"}) {
        ClassShape sh;
        sh.kind = ClassShape::Kind::unit_unit;
        sh.k = k;
        sh.x = RatFunc::parse(x, F, 2);
        sh.y = RatFunc::parse("x2", F, 2);
        sh.n = n;
        RefinedSwan r;
        try {
          r = rsw_of_symbol(sh);
        } catch (const Error& e) {
          if (e.errc() == Errc::out_of_range_level) continue;  // the shape degenerates at this level
          throw;
        }
        g_seen.push_back(r);
        auto side = rsw_of_class(symbol_of_shape(sh));
        g_seen.push_back(side.rsw);
        o.require(side.possible_cancellation || side.rsw.same(r), std::string(tag) + " shape " + x + " disagrees");
        ++shapes;
      }
  }
  long long rechecked = 0;
  for (const auto& r : g_seen) {
    if (r.mod_log) continue;  // beta is only a class modulo exact forms there
    o.require(d(r.beta) == r.alpha.scale(r.alpha.field()->from_int(r.n)), "d(beta) != n alpha at level " + std::to_string(r.n));
    ++rechecked;
  }
  const long long count = dbna_check_count();
  o.require(count >= kMinDbna, "only " + std::to_string(count) + " checked instances");
  o.detail = std::to_string(count) + " produced values passed the library guard, " + std::to_string(rechecked) +
             " rechecked independently, " + std::to_string(shapes) + " shape formulas agree with the classifier";
  return o;
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    Outcome o;
    o.pass = false;
    o.detail = "aborted";
    o.failure = e.what();
    return o;
  }
}

}  // namespace

int main() {
  std::vector<SweptClass> swept;
  std::map<int, Outcome> res;
  res[1] = guarded([&] { return criterion1(swept); });
  report(1, res[1]);
  res[2] = guarded([&] { return criterion2(swept); });
  report(2, res[2]);
  res[3] = guarded([&] { return criterion3(swept); });
  report(3, res[3]);
  res[4] = guarded(criterion4);
  report(4, res[4]);
  res[6] = guarded(criterion6);
  res[7] = guarded(criterion7);
  res[8] = guarded(criterion8);
  res[9] = guarded(criterion9);
  res[10] = guarded(criterion10);
  res[5] = guarded(criterion5);
  for (int id = 5; id <= 10; ++id) report(id, res[id]);
  int failed = 0;
  for (auto& [id, o] : res) failed += !o.pass;
  std::printf("acceptance: %d/10 criteria passed\n", 10 - failed);
  return failed ? 1 : 0;
}
