#include "swanlab/disc_lab.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "swanlab/errors.hpp"

namespace swanlab {

namespace {

template <class Fn>
void parallel_for(size_t n, int jobs, Fn fn) {
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < n;) fn(i);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < std::min<long long>(jobs, (long long)n); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

std::string field_name(const LocalFieldPtr& K) { return K->tag().empty() ? K->text() : K->tag(); }

LocalElem teich(const LocalFieldPtr& K, int code) { return teichmuller(K, code, K->default_precision()); }

nlohmann::json tangent_json(const TangentVec& v) { return nlohmann::json(v); }

std::string csv_quote(const std::string& s) {
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

nlohmann::json entry_json(const SweepEntry& e) {
  nlohmann::json j;
  j["tangent"] = tangent_json(e.v);
  j["point"] = e.Q.str();
  if (e.diff.inv) {
    j["inv"] = e.diff.inv->str();
    j["certificate"] = e.diff.inv->certificate;
  } else {
    j["inv"] = nullptr;
    j["certificate"] = "error: " + e.diff.error;
  }
  j["predicted"] = e.predicted ? nlohmann::json(e.predicted->str()) : nlohmann::json(nullptr);
  return j;
}

// Value of a form with constant or base-field coefficients at P0, read in the residue field of pf.K.
std::vector<int> form1_at(const Form1& w, const Point& P, const PointField& pf) {
  const int m = w.nvars();
  std::vector<int> out(m, 0);
  if (w.is_constant()) {
    for (int i = 0; i < m; ++i) out[i] = pf.residue_map(w[i].is_zero() ? 0 : w[i].constant_value());
    return out;
  }
  if (pf.embed) throw Error(Errc::unsupported_shape, "forms with non-constant coefficients need base-field points");
  return w.at(P.reduction());
}

int form2_pair(const Form2& a, const Point& P, const PointField& pf, const TangentVec& v, const TangentVec& w) {
  const FqPtr& F = pf.K->residue();
  const int m = a.nvars();
  std::vector<int> P0 = P.reduction();
  int acc = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      RatFunc c = a.get(i, j);
      if (c.is_zero()) continue;
      int cv;
      if (c.is_constant())
        cv = pf.residue_map(c.constant_value());
      else if (!pf.embed)
        cv = c.eval(P0);
      else
        throw Error(Errc::unsupported_shape, "forms with non-constant coefficients need base-field points");
      acc = F->add(acc, F->mul(cv, F->sub(F->mul(v[i], w[j]), F->mul(v[j], w[i]))));
    }
  return acc;
}

bool any_nonzero(const std::vector<int>& v) {
  return std::any_of(v.begin(), v.end(), [](int c) { return c != 0; });
}

int dot(const FqPtr& F, const std::vector<int>& a, const TangentVec& v) {
  int acc = 0;
  for (size_t i = 0; i < a.size(); ++i) acc = F->add(acc, F->mul(a[i], v[i]));
  return acc;
}

// x / p in Q/Z -> x in F_p; nullopt when the value is not p-torsion or not exact.
std::optional<int> ptorsion_digit(const DiffValue& d, int p) {
  if (!d.inv || d.inv->kind != InvValue::Kind::exact) return std::nullopt;
  const QZ& v = d.inv->value;
  if (v.is_zero()) return 0;
  if (v.den != p) return std::nullopt;
  return (int)v.num;
}

// Points P + sum_{j=r}^{top} pi^j [v_j]: all classes of B(P, r) modulo pi^{top+1}.
std::vector<Point> disc_points(const Point& P, int r, int top, long long budget) {
  std::vector<Point> cur = {P};
  for (int j = r; j <= top; ++j) {
    std::vector<Point> next;
    for (const auto& Q : cur) {
      auto reps = disc_representatives(Q, j, budget);
      if ((long long)(next.size() + reps.size()) > budget)
        throw Error(Errc::budget_exceeded, "disc enumeration exceeds the budget");
      for (auto& R : reps) next.push_back(std::move(R));
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Evaluation> evaluate_all(const BrauerClass& A, const std::vector<Point>& pts, const PointField& pf,
                                     const LabOptions& opt) {
  std::vector<Evaluation> ev(pts.size());
  parallel_for(pts.size(), opt.jobs, [&](size_t i) { ev[i] = evaluate(A, pts[i], pf, opt.oracle_budget); });
  return ev;
}

struct Distinct {
  std::vector<size_t> reps;
  bool undecided = false;
};
// Greedy selection of points with pairwise nontrivial differences.
Distinct distinct_values(const std::vector<Evaluation>& ev, long long budget, size_t target) {
  Distinct d;
  for (size_t i = 0; i < ev.size() && d.reps.size() < target; ++i) {
    if (!ev[i].inv) {
      d.undecided = true;
      continue;
    }
    bool fresh = true;
    for (size_t j : d.reps) {
      DiffValue df = difference(ev[i], ev[j], budget);
      if (!df.inv) {
        d.undecided = true;
        fresh = false;
        break;
      }
      if (df.inv->is_trivial()) {
        fresh = false;
        break;
      }
    }
    if (fresh) d.reps.push_back(i);
  }
  return d;
}

}  // namespace

// ---- points ----

PointField PointField::of(const LocalFieldPtr& k) { return PointField{k, k, nullptr, 1}; }

PointField PointField::unramified(const LocalFieldPtr& k, int d) {
  if (d == 1) return of(k);
  Embedding E = unramified_extension(k, d);
  return PointField{k, E.dst, [E](const LocalElem& x) { return E(x); }, d};
}

int PointField::residue_map(int code) const {
  if (!embed || code == 0) return code;
  return embed(teich(base, code)).residue();
}

Point Point::parse(const std::string& text, const LocalFieldPtr& K) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '(' || c == ')'; }), s.end());
  Point P;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    LocalFrac f = LocalFrac::parse(tok, K, 1);
    std::vector<LocalElem> z = {LocalElem::zero(K)};
    LocalElem n = f.num().eval(z), d = f.den().eval(z);
    auto constant = [](const LocalPoly& q) {
      return std::all_of(q.terms().begin(), q.terms().end(), [](const auto& t) { return t.first[0] == 0; });
    };
    if (!constant(f.num()) || !constant(f.den()))
      throw Error(Errc::parse_error, "point coordinates must be constants: " + tok);
    LocalElem x = n / d;
    if (!x.is_zero() && x.valuation() < 0) throw Error(Errc::invalid_argument, "point coordinates must be integral");
    P.x.push_back(x.with_precision(K->default_precision()));
  }
  if (P.x.empty()) throw Error(Errc::parse_error, "empty point");
  return P;
}

std::vector<int> Point::reduction() const {
  std::vector<int> r;
  for (const auto& c : x) r.push_back(c.is_zero() ? 0 : c.residue());
  return r;
}

std::string Point::str() const {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + x[i].str();
  return s + ")";
}

bool Disc::contains(const Point& Q) const {
  if (Q.dim() != center.dim()) return false;
  for (int i = 0; i < Q.dim(); ++i) {
    LocalElem d = Q.x[i] - center.x[i];
    if (!d.is_zero() && d.valuation() < radius) return false;
  }
  return true;
}

TangentVec tangent_vector(const Point& P, const Point& Q, int r) {
  if (r < 1) throw Error(Errc::invalid_argument, "radius must be at least 1");
  if (!Disc{P, r}.contains(Q)) throw Error(Errc::not_in_disc, Q.str() + " is not in B(" + P.str() + ", " + std::to_string(r) + ")");
  TangentVec v;
  for (int i = 0; i < P.dim(); ++i) {
    LocalElem d = Q.x[i] - P.x[i];
    v.push_back(d.is_zero() ? 0 : d.mul_pi_pow(-r).residue());
  }
  return v;
}

std::vector<TangentVec> all_tangents(const FqPtr& F, int m, long long budget) {
  long long total = 1;
  for (int i = 0; i < m; ++i) {
    total *= F->q();
    if (total > budget) throw Error(Errc::budget_exceeded, "q^m exceeds the enumeration budget");
  }
  std::vector<TangentVec> out;
  for (long long idx = 0; idx < total; ++idx) {
    TangentVec v(m);
    long long t = idx;
    for (int i = 0; i < m; ++i) {
      v[i] = (int)(t % F->q());
      t /= F->q();
    }
    out.push_back(v);
  }
  return out;
}

std::vector<Point> disc_representatives(const Point& P, int r, long long budget) {
  if (r < 1) throw Error(Errc::invalid_argument, "radius must be at least 1");
  const LocalFieldPtr& K = P.field();
  std::vector<Point> out;
  for (const auto& v : all_tangents(K->residue(), P.dim(), budget)) {
    Point Q = P;
    for (int i = 0; i < P.dim(); ++i)
      if (v[i]) Q.x[i] = Q.x[i] + teich(K, v[i]).mul_pi_pow(r);
    out.push_back(std::move(Q));
  }
  return out;
}

Point random_center(const PointField& pf, int m, int depth, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const LocalFieldPtr& K = pf.K;
  const int q = K->q();
  Point P;
  for (int i = 0; i < m; ++i) {
    LocalElem x = teich(K, 1 + (int)(rng() % (uint64_t)(q - 1)));
    for (int j = 1; j < depth; ++j) x = x + teich(K, (int)(rng() % (uint64_t)q)).mul_pi_pow(j);
    P.x.push_back(x);
  }
  return P;
}

// ---- evaluation ----

Evaluation evaluate(const BrauerClass& A, const Point& Q, const PointField& pf, long long budget) {
  Evaluation ev;
  try {
    ev.sym = specialize(A, Q.x, pf.embed);
    ev.inv = invariant(*ev.sym, budget);
  } catch (const Error& e) {
    ev.error = e.code();
  } catch (const std::exception& e) {
    ev.error = std::string("internal: ") + e.what();
  }
  return ev;
}

DiffValue difference(const Evaluation& Q, const Evaluation& P, long long budget) {
  DiffValue d;
  if (!Q.inv || !P.inv) {
    d.error = !Q.inv ? Q.error : P.error;
    return d;
  }
  if (Q.inv->kind == InvValue::Kind::exact && P.inv->kind == InvValue::Kind::exact) {
    d.inv = InvValue::of(Q.inv->value - P.inv->value, Q.inv->certificate);
    return d;
  }
  try {
    d.inv = invariant(class_difference(*Q.sym, *P.sym), budget);
  } catch (const Error& e) {
    d.error = e.code();
  }
  return d;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::match:
      return "MATCH";
    case Verdict::kernel_match:
      return "KERNEL-MATCH";
    case Verdict::fail:
      return "FAIL";
    default:
      return "UNDECIDED";
  }
}

int verdict_exit_code(Verdict v) {
  switch (v) {
    case Verdict::match:
    case Verdict::kernel_match:
      return 0;
    case Verdict::fail:
      return 1;
    default:
      return 3;
  }
}

// ---- sweeps ----

bool SweepTable::all_decided() const {
  return std::all_of(entries.begin(), entries.end(), [](const SweepEntry& e) { return e.diff.inv.has_value(); });
}

bool SweepTable::constant() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SweepEntry& e) { return !e.diff.inv || e.diff.inv->is_trivial(); });
}

nlohmann::json SweepTable::to_json() const {
  nlohmann::json j;
  j["field"] = field_name(pf.K);
  j["base"] = field_name(pf.base);
  j["class"] = cls;
  j["center"] = center.str();
  j["radius"] = radius;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) j["entries"].push_back(entry_json(e));
  j["prediction"] = prediction;
  j["verdict"] = verdict_name(verdict);
  return j;
}

std::string SweepTable::to_csv() const {
  std::string out = "tangent,inv,predicted,certificate\n";
  for (const auto& e : entries) {
    std::string t;
    for (size_t i = 0; i < e.v.size(); ++i) t += (i ? " " : "") + std::to_string(e.v[i]);
    out += t + "," + (e.diff.inv ? e.diff.inv->str() : "") + "," + (e.predicted ? e.predicted->str() : "") + "," +
           csv_quote(e.diff.inv ? e.diff.inv->certificate : "error: " + e.diff.error) + "\n";
  }
  return out;
}

SweepTable sweep(const BrauerClass& A, const Point& P, int r, const PointField& pf, const LabOptions& opt) {
  if (P.dim() != A.m) throw Error(Errc::invalid_argument, "point dimension differs from the class");
  SweepTable T;
  T.pf = pf;
  T.cls = A.str();
  T.center = P;
  T.radius = r;
  auto tangents = all_tangents(pf.K->residue(), A.m, opt.enum_budget);
  auto reps = disc_representatives(P, r, opt.enum_budget);
  Evaluation center = evaluate(A, P, pf, opt.oracle_budget);
  std::vector<SweepEntry> entries(reps.size());
  parallel_for(reps.size(), opt.jobs, [&](size_t i) {
    entries[i].v = tangents[i];
    entries[i].Q = reps[i];
    entries[i].diff = difference(evaluate(A, reps[i], pf, opt.oracle_budget), center, opt.oracle_budget);
  });
  T.entries = std::move(entries);
  return T;
}

void predict_linear(SweepTable& T, const Form1& beta) {
  const FqPtr& F = T.pf.K->residue();
  const int p = F->p();
  std::vector<int> b = form1_at(beta, T.center, T.pf);
  for (auto& e : T.entries) e.predicted = QZ(F->trace(dot(F, b, e.v)), p);
  T.prediction = "(1/" + std::to_string(p) + ") Tr(" + beta.str() + ")";
  T.verdict = judge(T);
}

Verdict judge(const SweepTable& T) {
  bool exact = true, kernel = true;
  for (const auto& e : T.entries) {
    if (!e.diff.inv || !e.predicted) return Verdict::undecided;
    const InvValue& m = *e.diff.inv;
    if (m.kind != InvValue::Kind::exact || m.value != *e.predicted) exact = false;
    if (m.is_trivial() != e.predicted->is_zero()) kernel = false;
  }
  if (exact) return Verdict::match;
  return kernel ? Verdict::kernel_match : Verdict::fail;
}

// ---- quadratic sweep ----

nlohmann::json QuadReport::to_json() const {
  nlohmann::json j;
  j["field"] = field_name(pf.K);
  j["base"] = field_name(pf.base);
  j["class"] = cls;
  j["center"] = center.str();
  j["n"] = n;
  j["s"] = s;
  j["gamma"] = gamma ? tangent_json(*gamma) : nlohmann::json(nullptr);
  j["rows"] = nlohmann::json::array();
  for (size_t i = 0; i < rows.size(); ++i) {
    nlohmann::json row;
    row["t_s"] = tangent_json(row_tangents[i]);
    row["entries"] = nlohmann::json::array();
    for (const auto& e : rows[i]) row["entries"].push_back(entry_json(e));
    if (i < gamma_rows.size()) {
      row["gamma_entries"] = nlohmann::json::array();
      for (const auto& e : gamma_rows[i]) row["gamma_entries"].push_back(entry_json(e));
    }
    j["rows"].push_back(row);
  }
  j["verdict"] = verdict_name(verdict);
  j["detail"] = detail;
  return j;
}

QuadReport quadratic_sweep(const BrauerClass& A, const RefinedSwan& rsw, const Point& P, int s, int t,
                           const PointField& pf, const LabOptions& opt) {
  const LocalFieldPtr& k = pf.base;
  const int n = rsw.n;
  if (!rsw.beta.is_zero() || rsw.mod_log) throw Error(Errc::hypothesis_violated, "quadratic sweeps need beta = 0");
  if (n <= 2) throw Error(Errc::hypothesis_violated, "quadratic sweeps need n > 2");
  if (s < 1 || 2 * s >= n) throw Error(Errc::hypothesis_violated, "need 1 <= s < n/2");
  if (t < 0) throw Error(Errc::invalid_argument, "t must be nonnegative");
  if (s > 1) {
    bool coprime = t == 0 || k->root_of_unity_exponent() >= t + 1;
    bool in_range = (long long)n * k->eprime_den() < k->eprime_num() + (long long)(2 + t * k->e()) * k->eprime_den();
    if (!coprime || !in_range) throw Error(Errc::hypothesis_violated, "need 2 < n < e' + 2 + t e with coprime degree");
  }
  check_dbna(rsw);
  const FqPtr& F = pf.K->residue();
  const int p = F->p(), r = n - s;

  QuadReport Rp;
  Rp.pf = pf;
  Rp.cls = A.str();
  Rp.center = P;
  Rp.n = n;
  Rp.s = s;
  auto Qs = disc_representatives(P, s, opt.enum_budget);
  auto tangents = all_tangents(F, A.m, opt.enum_budget);

  // Flat job list: (row, shell) points, evaluated in parallel, then differenced against each Q.
  struct Job {
    size_t row;
    bool gamma_shell;
    Point R;
    TangentVec w;
  };
  std::vector<Job> jobs;
  for (size_t i = 0; i < Qs.size(); ++i) {
    auto Rs = disc_representatives(Qs[i], r, opt.enum_budget);
    for (size_t j = 0; j < Rs.size(); ++j) jobs.push_back({i, false, Rs[j], tangents[j]});
    if (s > 1) {
      auto Gs = disc_representatives(Qs[i], n - 1, opt.enum_budget);
      for (size_t j = 0; j < Gs.size(); ++j) jobs.push_back({i, true, Gs[j], tangents[j]});
    }
  }
  if ((long long)jobs.size() > opt.enum_budget) throw Error(Errc::budget_exceeded, "quadratic sweep exceeds the budget");
  std::vector<Evaluation> qev(Qs.size());
  parallel_for(Qs.size(), opt.jobs, [&](size_t i) { qev[i] = evaluate(A, Qs[i], pf, opt.oracle_budget); });
  std::vector<DiffValue> dv(jobs.size());
  parallel_for(jobs.size(), opt.jobs, [&](size_t i) {
    dv[i] = difference(evaluate(A, jobs[i].R, pf, opt.oracle_budget), qev[jobs[i].row], opt.oracle_budget);
  });
  Rp.rows.assign(Qs.size(), {});
  if (s > 1) Rp.gamma_rows.assign(Qs.size(), {});
  for (size_t i = 0; i < Qs.size(); ++i) Rp.row_tangents.push_back(tangents[i]);
  for (size_t i = 0; i < jobs.size(); ++i) {
    SweepEntry e{jobs[i].w, jobs[i].R, dv[i], std::nullopt};
    (jobs[i].gamma_shell ? Rp.gamma_rows : Rp.rows)[jobs[i].row].push_back(std::move(e));
  }

  // Every difference must be p-torsion with an exact value.
  auto& gamma_src = s > 1 ? Rp.gamma_rows : Rp.rows;
  for (const auto* tab : {&Rp.rows, &Rp.gamma_rows})
    for (const auto& row : *tab)
      for (const auto& e : row)
        if (!ptorsion_digit(e.diff, p)) {
          Rp.verdict = e.diff.inv ? Verdict::fail : Verdict::undecided;
          Rp.detail = e.diff.inv ? "difference " + e.diff.inv->str() + " is not p-torsion" : "evaluation failed: " + e.diff.error;
          return Rp;
        }

  // Fit gamma on the row of Q = P (its tangent is 0), by exhaustion over F_q^m.
  for (const auto& g : all_tangents(F, A.m, opt.enum_budget)) {
    bool ok = true;
    for (const auto& e : gamma_src[0])
      if (*ptorsion_digit(e.diff, p) != F->trace(dot(F, g, e.v))) {
        ok = false;
        break;
      }
    if (ok) {
      Rp.gamma = g;
      break;
    }
  }
  if (!Rp.gamma) {
    Rp.verdict = Verdict::fail;
    Rp.detail = "no constant gamma fits the differences on B(P, n - 1)";
    return Rp;
  }
  const auto& g = *Rp.gamma;
  auto gamma_term = [&](const TangentVec& w) { return F->trace(dot(F, g, w)); };

  if (s > 1) {
    for (const auto& row : Rp.gamma_rows)
      for (const auto& e : row)
        if (*ptorsion_digit(e.diff, p) != gamma_term(e.v)) {
          Rp.verdict = Verdict::fail;
          Rp.detail = "gamma differs between centres of B(P, s)";
          return Rp;
        }
    for (size_t i = 0; i < Rp.rows.size(); ++i)
      for (auto& e : Rp.rows[i]) {
        int alpha_term = F->trace(F->mul(F->from_int(s), form2_pair(rsw.alpha, P, pf, Rp.row_tangents[i], e.v)));
        e.predicted = QZ(-alpha_term, p);
      }
    Rp.verdict = Verdict::match;
    Rp.detail = "gamma is common to all centres; shell values recorded with the alpha term as reference";
    return Rp;
  }

  // s = 1: D(Q, R) = -(lambda/p) Tr alpha(t_1, t_{n-1}) + (1/p) Tr gamma(t_{n-1}) with lambda = 1 expected.
  std::optional<int> lambda;
  for (int lam = 1; lam < p && !lambda; ++lam) {
    bool ok = true;
    for (size_t i = 0; i < Rp.rows.size() && ok; ++i)
      for (const auto& e : Rp.rows[i]) {
        int a = F->trace(form2_pair(rsw.alpha, P, pf, Rp.row_tangents[i], e.v));
        int want = ((gamma_term(e.v) - lam * a) % p + p) % p;
        if (*ptorsion_digit(e.diff, p) != want) {
          ok = false;
          break;
        }
      }
    if (ok) lambda = lam;
  }
  for (size_t i = 0; i < Rp.rows.size(); ++i)
    for (auto& e : Rp.rows[i]) {
      int a = F->trace(form2_pair(rsw.alpha, P, pf, Rp.row_tangents[i], e.v));
      e.predicted = QZ(gamma_term(e.v) - (lambda ? *lambda : 1) * a, p);
    }
  if (!lambda) {
    Rp.verdict = Verdict::fail;
    Rp.detail = "alpha term does not match after removing gamma";
  } else if (*lambda == 1) {
    Rp.verdict = Verdict::match;
    Rp.detail = "alpha term matches after removing gamma";
  } else {
    Rp.verdict = Verdict::kernel_match;
    Rp.detail = "alpha term matches up to the scalar " + std::to_string(*lambda);
  }
  return Rp;
}

// ---- surjectivity ----

nlohmann::json ProbeReport::to_json() const {
  nlohmann::json j;
  j["part"] = part;
  j["field"] = field_name(pf.K);
  j["base"] = field_name(pf.base);
  j["class"] = cls;
  j["center"] = center.str();
  j["found"] = found;
  j["witness_center"] = witness_center ? nlohmann::json(witness_center->str()) : nlohmann::json(nullptr);
  j["radius"] = radius;
  j["target"] = target;
  j["values"] = nlohmann::json::array();
  for (const auto& [pt, v] : values) j["values"].push_back({{"point", pt.str()}, {"inv", v}});
  j["verdict"] = verdict_name(verdict);
  j["detail"] = detail;
  return j;
}

ProbeReport surjectivity_probe(const BrauerClass& A, const RefinedSwan& rsw, int t, const Point& P,
                               const PointField& pf, const LabOptions& opt) {
  const LocalFieldPtr& k = pf.base;
  const int n = rsw.n, e = k->e();
  if (n < 1) throw Error(Errc::hypothesis_violated, "the class must have positive Swan conductor");
  if (t < 0) throw Error(Errc::invalid_argument, "t must be nonnegative");
  check_dbna(rsw);
  const bool beta_nz = !rsw.mod_log && any_nonzero(form1_at(rsw.beta, P, pf));
  bool alpha_nz = false;
  if (rsw.beta.is_zero()) {
    auto tangents = all_tangents(pf.K->residue(), A.m, opt.enum_budget);
    for (const auto& v : tangents)
      for (const auto& w : tangents)
        if (form2_pair(rsw.alpha, P, pf, v, w)) alpha_nz = true;
  }
  ProbeReport R;
  R.pf = pf;
  R.cls = A.str();
  R.center = P;
  const int p = k->p();
  int target = p, radius = 0;
  bool search_q = false;
  if (t == 0) {
    if (beta_nz) {
      R.part = "B1";
      radius = n;
    } else if (rsw.beta.is_zero() && alpha_nz) {
      R.part = "B3";
      radius = n - 1;
      search_q = true;
    } else {
      throw Error(Errc::hypothesis_violated, "need beta(P0) != 0, or beta = 0 and alpha(P0) != 0");
    }
  } else {
    const long long den = k->eprime_den(), bound = k->eprime_num() + (long long)(t - 1) * e * den;
    bool ok = (long long)n * den > bound;
    if (!ok && (long long)n * den == bound) {
      try {
        ok = cartier(rsw.alpha).is_zero() && cartier(rsw.beta).is_zero();
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) throw Error(Errc::hypothesis_violated, "need n > e' + (t - 1) e, or equality with C(alpha) = C(beta) = 0");
    for (int i = 0; i <= t; ++i) target *= (i ? p : 1);
    if (beta_nz) {
      R.part = "B4i";
      radius = n - t * e;
    } else if (rsw.beta.is_zero() && alpha_nz) {
      R.part = "B4ii";
      if (!((long long)n * den > k->eprime_num() + 2 * den && n >= t * e + 3))
        throw Error(Errc::hypothesis_violated, "need n > e' + 2 and n >= t e + 3");
      radius = n - t * e - 1;
      search_q = true;
    } else {
      throw Error(Errc::hypothesis_violated, "need beta(P0) != 0, or beta = 0 and alpha(P0) != 0");
    }
  }
  if (radius < 1) throw Error(Errc::hypothesis_violated, "probe radius must be at least 1");
  R.radius = radius;
  R.target = target;

  std::vector<Point> centres = search_q ? disc_representatives(P, 1, opt.enum_budget) : std::vector<Point>{P};
  bool undecided = false;
  for (const auto& Q : centres) {
    // ev is constant on B(., n + 1), so classes modulo pi^{n+1} suffice.
    auto pts = disc_points(Q, radius, n, opt.enum_budget);
    auto ev = evaluate_all(A, pts, pf, opt);
    Distinct d = distinct_values(ev, opt.oracle_budget, (size_t)target);
    undecided |= d.undecided;
    if (d.reps.size() > R.values.size()) {
      R.values.clear();
      for (size_t i : d.reps) R.values.push_back({pts[i], ev[i].inv->str()});
      R.witness_center = Q;
    }
    if ((int)d.reps.size() == target) {
      R.found = true;
      break;
    }
  }
  R.verdict = R.found ? Verdict::match : (undecided ? Verdict::undecided : Verdict::fail);
  R.detail = std::to_string(R.values.size()) + " of " + std::to_string(target) + " distinct values";
  return R;
}

// ---- filtration estimate ----

nlohmann::json FiltrationReport::to_json() const {
  nlohmann::json j;
  j["estimate"] = estimate;
  j["witness_radius"] = witness_radius;
  j["constancy"] = nlohmann::json::array();
  for (auto [r, c] : constancy) j["constancy"].push_back({{"radius", r}, {"constant", c}});
  j["undecided"] = undecided;
  return j;
}

FiltrationReport empirical_filtration(const BrauerClass& A, const std::vector<SampleCenter>& sample, int n_max,
                                      const LabOptions& opt) {
  if (sample.empty()) throw Error(Errc::invalid_argument, "empty sample");
  FiltrationReport F;
  for (int r = 1; r <= n_max + 1; ++r) {
    bool all_const = true;
    for (const auto& c : sample) {
      SweepTable T = sweep(A, c.P, r, c.pf, opt);
      if (!T.all_decided()) F.undecided = true;
      if (!T.constant()) all_const = false;
    }
    if (!all_const) F.witness_radius = r;
    F.constancy.push_back({r, all_const});
  }
  // Constant on B(P, n + 1) for every sampled P, with non-constancy last seen at radius n.
  F.estimate = F.witness_radius;
  return F;
}

}  // namespace swanlab
