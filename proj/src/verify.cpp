#include "swanlab/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "swanlab/disc_lab.hpp"
#include "swanlab/errors.hpp"

namespace swanlab {

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

long long SuiteReport::passed() const {
  long long s = 0;
  for (const auto& c : checks) s += c.passed;
  return s;
}

long long SuiteReport::total() const {
  long long s = 0;
  for (const auto& c : checks) s += c.total;
  return s;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["total"] = total();
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json k = {{"name", c.name}, {"passed", c.passed}, {"total", c.total}};
    if (!c.ok()) k["first_failure"] = c.first_failure;
    j["checks"].push_back(k);
  }
  return j;
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.ok() ? "PASS " : "FAIL ") << suite << "/" << c.name << " " << c.passed << "/" << c.total;
    if (!c.ok()) os << " first failure: " << c.first_failure;
    os << "\n";
  }
  os << suite << ": " << passed() << " passed, " << (total() - passed()) << " failed\n";
  return os.str();
}

namespace {

class Recorder {
 public:
  explicit Recorder(std::string suite) { rep_.suite = std::move(suite); }

  // Runs fn as one instance of check `name`; an exception counts as a failure.
  void run(const std::string& name, const std::string& what, const std::function<bool()>& fn) {
    CheckResult& c = slot(name);
    ++c.total;
    std::string why;
    bool ok = false;
    try {
      ok = fn();
      if (!ok) why = what;
    } catch (const std::exception& e) {
      why = what + " (" + e.what() + ")";
    }
    if (ok)
      ++c.passed;
    else if (c.first_failure.empty())
      c.first_failure = why;
  }
  SuiteReport take() { return std::move(rep_); }

 private:
  CheckResult& slot(const std::string& name) {
    for (auto& c : rep_.checks)
      if (c.name == name) return c;
    rep_.checks.push_back({name, 0, 0, ""});
    return rep_.checks.back();
  }
  SuiteReport rep_;
};

using Rng = std::mt19937_64;

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
  if (rng() % 3) return RatFunc(n);
  Poly d = rand_poly(k, m, rng, 2, 1) + Poly::constant(k, m, 1 + int(rng() % (k->q() - 1)));
  if (d.constant_term() == 0) d = d + Poly::constant(k, m, 1);
  return RatFunc(n, d);
}

std::string fq_label(int p, int f) { return "F_" + std::to_string(p) + (f > 1 ? "^" + std::to_string(f) : ""); }

SuiteReport suite_forms(const VerifyOptions& opt) {
  Recorder R("forms");
  Rng rng(opt.seed * 1000003 + 1);
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto k = Fq::make(p, f);
    for (int n = 1; n <= 4; ++n) {
      const std::string at = fq_label(p, f) + " n=" + std::to_string(n);
      const std::pair<LogdiffKind, int> kinds[] = {{LogdiffKind::one_logH, n},
                                                   {LogdiffKind::one_2H, n * (n + 1) / 2},
                                                   {LogdiffKind::two_2H_logH, n * (n - 1) / 2}};
      for (auto [kind, want] : kinds)
        R.run("logdiff-dimension", at, [&, kind = kind, want = want] {
          auto b = logdiff_basis(kind, k, n);
          if ((int)b.size() != want) return false;
          std::vector<Form1> w1;
          std::vector<Form2> w2;
          for (auto& e : b) (e.two ? (void)w2.push_back(e.w2) : (void)w1.push_back(e.w1));
          return (kind == LogdiffKind::two_2H_logH ? rank_of(w2) : rank_of(w1)) == want;
        });
      // rho(d(X_i/X_0)) = -X_i restricted to H, read in the chart X_1 = 1.
      for (int i = 0; i < n; ++i)
        R.run("logdiff-residue", at + " i=" + std::to_string(i + 1), [&] {
          RatFunc want = i == 0 ? RatFunc::constant(k, n, k->neg(1)) : -RatFunc::var(k, n, i);
          return logdiff_residue(Form1::dx(k, n, i), 1, 1) == want;
        });
    }
  }
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
    auto F = Fq::make(p, f);
    for (int m = 2; m <= 3; ++m)
      for (int it = 0; it < 4; ++it) {
        const std::string at = fq_label(p, f) + " m=" + std::to_string(m);
        std::vector<int> P0(m, 0);
        Form1 beta(F, m);
        Form2 alpha(F, m);
        for (int i = 0; i < m; ++i) {
          beta.set(i, rand_regular(F, m, rng));
          for (int j = i + 1; j < m; ++j) alpha.set(i, j, rand_regular(F, m, rng));
        }
        R.run("blowup-residue-psi", at, [&] {
          return blowup_pullback(beta).residue(1) == psi(F, constant_coeffs(beta, P0)).in_chart(0);
        });
        R.run("blowup-residue-phi", at, [&] {
          return blowup_pullback(alpha).residue(2) == phi(F, m, constant_coeffs(alpha, P0)).in_chart(0);
        });
        R.run("d-squared", at, [&] { return d(d(beta[0] * beta[m - 1])).is_zero() && d(d(beta[1])).is_zero(); });
      }
  }
  return R.take();
}

SuiteReport suite_swan(const VerifyOptions& opt) {
  Recorder R("swan");
  Rng rng(opt.seed * 1000003 + 2);
  const long long before = dbna_check_count();
  for (const char* tag : {"Q2", "Q2i", "Q3z3", "Q2z8"}) {
    auto k = LocalField::parse(tag);
    auto F = k->residue();
    const int ep = k->eprime();
    for (int n = 1; n < ep; ++n)
      for (int it = 0; it < 2; ++it) {
        const std::string at = std::string(tag) + " n=" + std::to_string(n);
        ClassShape sh;
        sh.kind = ClassShape::Kind::unit_unit;
        sh.k = k;
        sh.n = n;
        // x depends on x1 linearly so that d(x dlog y) does not vanish.
        Poly tail = rand_poly(F, 1, rng, 2, 2);
        sh.x = RatFunc::var(F, 2, 0) * RatFunc::constant(F, 2, 1 + (int)(rng() % (F->q() - 1))) +
               RatFunc(tail).compose({RatFunc::var(F, 2, 1)});
        sh.y = RatFunc::var(F, 2, 1) * RatFunc::constant(F, 2, 1 + (int)(rng() % (F->q() - 1)));
        R.run("shape-dbna", at, [&] {
          auto r = rsw_of_symbol(sh);
          check_dbna(r);
          return true;
        });
        Form1 beta(F, 2);
        beta.set(0, RatFunc::constant(F, 2, 1 + (int)(rng() % (F->q() - 1))));
        beta.set(1, RatFunc::constant(F, 2, (int)(rng() % F->q())));
        R.run("construct-certified", at, [&] {
          auto cc = construct_with_rsw(beta, n, 0, k);
          return cc.rsw.n == n && cc.rsw.alpha.is_zero() && cc.rsw.beta == beta;
        });
      }
  }
  // rsw(p C) from the symbols of p C against multiply_by_p_rsw(rsw(C)).
  for (auto [tag, t] : {std::pair{"Q2i", 1}, {"Q2z8", 1}, {"Q2z8", 2}}) {
    auto k = LocalField::parse(tag);
    auto F = k->residue();
    const int e = k->e(), ep = k->eprime();
    for (int n = 1; n < ep + t * e; ++n) {
      auto cc = construct_with_rsw(Form1::parse("dx1 + dx2", F, 2), n, t, k);
      BrauerClass pc = cc.cls;
      RefinedSwan r = cc.rsw;
      bool defined = true;
      for (int i = 0; i < t && defined; ++i) {
        pc = multiply_by_p(pc);
        if (r.n < ep - 1) {
          defined = false;
          break;
        }
        auto pm = multiply_by_p_rsw(r, k);
        if (pm.bound_only) defined = false;
        r = pm.rsw;
      }
      if (!defined || r.n < 1) continue;
      R.run("multiply-by-p", std::string(tag) + " t=" + std::to_string(t) + " n=" + std::to_string(n),
            [&] { return rsw_of_class(pc).rsw.same(r); });
    }
  }
  const long long used = dbna_check_count() - before;
  R.run("dbna-instances", "no instance checked", [&] { return used > 0; });
  return R.take();
}

QZ hilbert_Q2(long long x, long long y) {
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

QZ inv_of(const LocalElem& a, const LocalElem& b, int s, long long budget) {
  LocalSymbolSum S{a.field(), {{a, b, s}}, std::nullopt};
  InvValue v = invariant(S, budget);
  if (v.kind != InvValue::Kind::exact) throw Error(Errc::undecided, "unnormalised value");
  return v.value;
}

SuiteReport suite_brauer(const VerifyOptions& opt) {
  Recorder R("brauer");
  Rng rng(opt.seed * 1000003 + 3);
  const long long B = opt.oracle_budget > 0 ? opt.oracle_budget : kDefaultOracleBudget;
  auto Q2 = LocalField::parse("Q2");
  std::vector<long long> vals;
  for (int a = 0; a <= 1; ++a)
    for (long long u : {1, 3, 5, 7}) vals.push_back(u << a);
  for (long long x : vals)
    for (long long y : vals)
      R.run("hilbert2-closed-form", std::to_string(x) + "," + std::to_string(y), [&] {
        return hilbert2(LocalElem::from_int(Q2, x), LocalElem::from_int(Q2, y), B).value == hilbert_Q2(x, y);
      });
  for (auto [tag, s] : {std::pair{"Q2i", 1}, {"Q3z3", 1}, {"Q2i", 2}}) {
    auto K = LocalField::parse(tag);
    for (int it = 0; it < 10; ++it) {
      auto x = random_nonzero(K, rng), y = random_nonzero(K, rng), z = random_nonzero(K, rng);
      const std::string at = std::string(tag) + " s=" + std::to_string(s);
      R.run("bilinearity", at, [&] { return inv_of(x, y * z, s, B) == inv_of(x, y, s, B) + inv_of(x, z, s, B); });
      R.run("antisymmetry", at, [&] { return inv_of(x, y, s, B) == -inv_of(y, x, s, B); });
      R.run("steinberg", at, [&] {
        auto one = LocalElem::one(K);
        bool ok = inv_of(x, -x, s, B).is_zero();
        if (!(one - x).is_zero() && (one - x).valuation() < 4) ok = ok && inv_of(x, one - x, s, B).is_zero();
        return ok;
      });
    }
  }
  auto Q2i = LocalField::parse("Q2i");
  for (int it = 0; it < 10; ++it) {
    auto a = random_nonzero(Q2i, rng), c0 = random_unit(Q2i, rng), c1 = random_nonzero(Q2i, rng);
    auto b = c0 * c0 - a * c1 * c1;
    if (b.is_zero()) continue;
    R.run("norms-trivial", "Q2i", [&] { return norm_triviality(a, b, B); });
  }
  for (auto [tag, s] : {std::pair{"Q3z3", 1}, {"Q2i", 1}}) {
    auto K = LocalField::parse(tag);
    R.run("unramified-non-norm", tag, [&] { return !norm_triviality(unramified_reference(K, s), LocalElem::pi(K), B); });
  }
  return R.take();
}

SuiteReport suite_discs(const VerifyOptions& opt) {
  Recorder R("discs");
  LabOptions lo;
  lo.jobs = opt.jobs;
  lo.seed = opt.seed;
  if (opt.oracle_budget > 0) lo.oracle_budget = opt.oracle_budget;
  auto Q2 = LocalField::parse("Q2");
  auto flag = construct_with_rsw(Form1::parse("dx1", Q2->residue(), 1), 1, 0, Q2);
  auto pf = PointField::of(Q2);
  R.run("flagship-match", "Q2 (1+2u1,u1)_2 at (1)", [&] {
    auto T = sweep(flag.cls, Point::parse("(1)", Q2), 1, pf, lo);
    predict_linear(T, flag.rsw.beta);
    return T.verdict == Verdict::match;
  });
  R.run("corrupted-prediction-fails", "beta replaced by 0", [&] {
    auto T = sweep(flag.cls, Point::parse("(1)", Q2), 1, pf, lo);
    predict_linear(T, Form1(Q2->residue(), 1));
    return T.verdict == Verdict::fail;
  });
  Rng rng(opt.seed * 1000003 + 4);
  for (const char* tag : {"Q2i", "Q3z3"}) {
    auto k = LocalField::parse(tag);
    auto F = k->residue();
    for (int n = 1; n < k->eprime(); ++n) {
      Form1 beta(F, 2);
      beta.set(0, RatFunc::constant(F, 2, 1 + (int)(rng() % (F->q() - 1))));
      beta.set(1, RatFunc::constant(F, 2, (int)(rng() % F->q())));
      const uint64_t cseed = rng();
      R.run("linear-prediction", std::string(tag) + " n=" + std::to_string(n), [&] {
        auto cc = construct_with_rsw(beta, n, 0, k);
        auto pk = PointField::of(k);
        auto T = sweep(cc.cls, random_center(pk, 2, 3, cseed), n, pk, lo);
        predict_linear(T, cc.rsw.beta);
        return T.verdict == Verdict::match;
      });
    }
  }
  std::vector<SampleCenter> S;
  for (int d : {1, 2}) {
    auto pd = PointField::unramified(Q2, d);
    for (int i = 0; i < 3; ++i) S.push_back({random_center(pd, 1, 3, rng()), pd});
  }
  R.run("filtration-flagship", "estimate 1", [&] { return empirical_filtration(flag.cls, S, 3, lo).estimate == 1; });
  R.run("filtration-tame-control", "estimate 0",
        [&] { return empirical_filtration(BrauerClass::parse("1 + 4*u1, 2, 2", Q2, 1), S, 2, lo).estimate == 0; });
  return R.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"forms", "swan", "brauer", "discs"};
  return names;
}

std::vector<SuiteReport> run_suites(const std::string& name, const VerifyOptions& opt) {
  std::vector<SuiteReport> out;
  auto one = [&](const std::string& s) {
    if (s == "forms") out.push_back(suite_forms(opt));
    if (s == "swan") out.push_back(suite_swan(opt));
    if (s == "brauer") out.push_back(suite_brauer(opt));
    if (s == "discs") out.push_back(suite_discs(opt));
  };
  if (name == "all") {
    for (const auto& s : suite_names()) one(s);
  } else if (std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end()) {
    one(name);
  } else {
    throw Error(Errc::unknown_suite, name);
  }
  return out;
}

}  // namespace swanlab
