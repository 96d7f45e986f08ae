#include "swanlab/brauer.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>

#include "swanlab/errors.hpp"

namespace swanlab {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

int val_or_inf(const LocalElem& x) { return x.is_zero() ? kInf : x.valuation(); }

int64_t ipow(int64_t b, int k) {
  int64_t r = 1;
  while (k-- > 0) r *= b;
  return r;
}

int log_p(int64_t n, int p) {
  int s = 0;
  while (n % p == 0 && n > 1) {
    n /= p;
    ++s;
  }
  if (n != 1) throw Error(Errc::parse_error, "symbol order must be a power of p");
  return s;
}

// ---- linear algebra over Z/p^s ----

struct ModRing {
  int p, s;
  int64_t n;
  int64_t red(int64_t x) const {
    x %= n;
    return x < 0 ? x + n : x;
  }
  int vp(int64_t x) const {
    x = red(x);
    if (x == 0) return s;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  }
  int64_t inv_unit(int64_t x) const {
    x = red(x);
    for (int64_t y = 1; y < n; ++y)
      if ((x * y) % n == 1) return y;
    throw Error(Errc::invalid_argument, "not a unit mod p^s");
  }
};

using Mat = std::vector<std::vector<int64_t>>;

struct Smith {
  std::vector<int> vals;  // p-adic valuation of each diagonal entry (s for zero), one per column
  Mat V;                  // column transform: cols x cols
};

// Smith form of A (rows x cols) with the column transform recorded; A is destroyed.
Smith smith(Mat A, int cols, const ModRing& R) {
  const int rows = (int)A.size();
  Smith out;
  out.V.assign(cols, std::vector<int64_t>(cols, 0));
  for (int i = 0; i < cols; ++i) out.V[i][i] = 1;
  out.vals.assign(cols, R.s);
  auto col_axpy = [&](int dst, int src, int64_t c) {  // col_dst -= c * col_src
    for (int i = 0; i < rows; ++i) A[i][dst] = R.red(A[i][dst] - c * A[i][src]);
    for (int i = 0; i < cols; ++i) out.V[i][dst] = R.red(out.V[i][dst] - c * out.V[i][src]);
  };
  for (int t = 0; t < std::min(rows, cols); ++t) {
    int bi = -1, bj = -1, bv = R.s;
    for (int i = t; i < rows && bv > 0; ++i)
      for (int j = t; j < cols; ++j) {
        int v = R.vp(A[i][j]);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
          if (v == 0) break;
        }
      }
    if (bi < 0) break;
    std::swap(A[t], A[bi]);
    if (bj != t) {
      for (int i = 0; i < rows; ++i) std::swap(A[i][t], A[i][bj]);
      for (int i = 0; i < cols; ++i) std::swap(out.V[i][t], out.V[i][bj]);
    }
    const int64_t pv = ipow(R.p, bv);
    const int64_t u = R.inv_unit(A[t][t] / pv);
    for (auto& x : A[t]) x = R.red(x * u);
    for (int i = 0; i < rows; ++i) {
      if (i == t || A[i][t] == 0) continue;
      int64_t c = A[i][t] / pv;
      for (int j = 0; j < cols; ++j) A[i][j] = R.red(A[i][j] - c * A[t][j]);
    }
    for (int j = t + 1; j < cols; ++j)
      if (A[t][j]) col_axpy(j, t, A[t][j] / pv);
    out.vals[t] = bv;
  }
  return out;
}

// ---- symbol pairing on k^x / p^s ----

struct PairingTable {
  LocalFieldPtr K;
  ModRing R;
  int M = 0, f = 0;
  std::vector<std::vector<LocalElem>> ginv;  // [i][j]: (1 + [w^j] pi^i)^{-1}, 1 <= i < M
  std::vector<LocalElem> teich;              // by residue code
  std::vector<int> factor_cols;              // Smith columns that carry the group
  Mat V;
  int rank = 0;
  std::vector<int64_t> H;  // rank x rank
  bool normalized = false;
  long long samples = 0;
  std::string certificate;

  int ngen() const { return 1 + (M - 1) * f; }

  std::vector<int64_t> raw_dlog(const LocalElem& x) const {
    std::vector<int64_t> c(ngen(), 0);
    int v = x.valuation();
    c[0] = R.red(v);
    LocalElem u = x.unit_part();
    if (u.precision() < M) throw Error(Errc::precision_exhausted, "too few digits for the symbol oracle");
    u = u * teich[u.residue()].inv();
    const Fq& k = *K->residue();
    for (int i = 1; i < M; ++i) {
      LocalElem d = u - LocalElem::one(K);
      if (d.is_zero() || d.valuation() > i) continue;
      int r = d.mul_pi_pow(-i).residue();
      for (int j = 0; j < f; ++j) {
        int dj = k.digit(r, j);
        c[1 + (i - 1) * f + j] = dj;
        for (int t = 0; t < dj; ++t) u = u * ginv[i][j];
      }
    }
    return c;
  }

  std::vector<int64_t> coords(const LocalElem& x) const {
    auto c = raw_dlog(x);
    std::vector<int64_t> y(rank, 0);
    for (int t = 0; t < rank; ++t) {
      int col = factor_cols[t];
      int64_t acc = 0;
      for (int i = 0; i < ngen(); ++i) acc = R.red(acc + c[i] * V[i][col]);
      y[t] = acc;
    }
    return y;
  }

  int64_t pair(const std::vector<int64_t>& x, const std::vector<int64_t>& y) const {
    int64_t acc = 0;
    for (int a = 0; a < rank; ++a)
      for (int b = 0; b < rank; ++b) acc = R.red(acc + x[a] * H[a * rank + b] % R.n * y[b]);
    return acc;
  }
};

LocalElem random_elem(const LocalFieldPtr& K, std::mt19937_64& rng, int N) {
  std::vector<int64_t> a(K->e() * K->f(), 0);
  std::uniform_int_distribution<int64_t> dig(0, K->modulus() - 1);
  for (auto& x : a) x = dig(rng);
  LocalElem u = LocalElem::from_coeffs(K, a, N);
  int kind = (int)(rng() % 6);
  if (kind <= 1) return u;
  if (kind <= 3) return u.mul_pi_pow(1 + (int)(rng() % 3));
  return LocalElem::one(K) + u.mul_pi_pow(1 + (int)(rng() % 4));
}

std::shared_ptr<const PairingTable> build_table(const LocalFieldPtr& K, int s, long long budget) {
  const int p = K->p(), e = K->e(), f = K->f();
  if (K->root_of_unity_exponent() < s)
    throw Error(Errc::missing_root_of_unity, "symbols of order " + std::to_string(ipow(p, s)) + " need zeta_{p^s} in " + K->text());
  auto T = std::make_shared<PairingTable>();
  T->K = K;
  T->R = ModRing{p, s, ipow(p, s)};
  T->f = f;
  T->M = (int)((int64_t)e * (s * (p - 1) + 1) / (p - 1)) + 1;
  const int M = T->M;
  for (int c = 0; c < K->q(); ++c) T->teich.push_back(c ? teichmuller(K, c) : LocalElem::zero(K));
  T->ginv.assign(M, {});
  for (int i = 1; i < M; ++i)
    for (int j = 0; j < f; ++j)
      T->ginv[i].push_back((LocalElem::one(K) + LocalElem::lift_residue(K, ipow(p, j)).mul_pi_pow(i)).inv());

  // Relations p e_g - dlog(g^p); the identity matrix stands in for V while dlog runs.
  const int ng = T->ngen();
  T->rank = ng;
  T->V.assign(ng, std::vector<int64_t>(ng, 0));
  for (int i = 0; i < ng; ++i) {
    T->V[i][i] = 1;
    T->factor_cols.push_back(i);
  }
  Mat rel;
  for (int i = 1; i < M; ++i)
    for (int j = 0; j < f; ++j) {
      LocalElem g = LocalElem::one(K) + LocalElem::lift_residue(K, ipow(p, j)).mul_pi_pow(i);
      auto row = T->raw_dlog(g.pow(p));
      for (auto& x : row) x = T->R.red(-x);
      row[1 + (i - 1) * f + j] = T->R.red(row[1 + (i - 1) * f + j] + p);
      rel.push_back(row);
    }
  Smith S = smith(rel, ng, T->R);
  T->V = S.V;
  T->factor_cols.clear();
  for (int c = 0; c < ng; ++c) {
    if (S.vals[c] == 0) continue;
    if (S.vals[c] != s)
      throw Error(Errc::undecided, "unexpected factor of order p^" + std::to_string(S.vals[c]) + " in k^x/p^s");
    T->factor_cols.push_back(c);
  }
  T->rank = (int)T->factor_cols.size();
  if (T->rank != e * f + 2)
    throw Error(Errc::undecided, "k^x/p^s has rank " + std::to_string(T->rank) + ", expected " + std::to_string(e * f + 2));

  // Solve for H from Steinberg relations (x, 1 - x) = (x, -x) = 0.
  const int r = T->rank, nunk = r * r;
  const long long cap = std::min<long long>(budget, 40LL * nunk + 400);
  std::mt19937_64 rng(0x5eed0000ULL + (uint64_t)s * 131 + (uint64_t)K->text().size());
  Mat eqs;
  const int N = K->default_precision();
  auto add_eq = [&](const LocalElem& x, const LocalElem& y) {
    auto cx = T->coords(x), cy = T->coords(y);
    std::vector<int64_t> row(nunk);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) row[a * r + b] = T->R.red(cx[a] * cy[b]);
    eqs.push_back(std::move(row));
  };
  long long used = 0;
  std::optional<std::vector<int64_t>> sol;
  while (used < cap) {
    for (int batch = 0; batch < 16 && used < cap; ++batch, ++used) {
      LocalElem x = random_elem(K, rng, N);
      if (x.is_zero()) continue;
      LocalElem y = LocalElem::one(K) - x;
      if (!y.is_zero() && N - y.valuation() > M + 2) add_eq(x, y);
      add_eq(x, -x);
    }
    if ((int)eqs.size() < nunk) continue;
    Smith E = smith(eqs, nunk, T->R);
    int free_cols = 0, at = -1;
    for (int c = 0; c < nunk; ++c)
      if (E.vals[c] > 0) {
        ++free_cols;
        at = c;
      }
    if (free_cols == 1 && E.vals[at] == s) {
      std::vector<int64_t> h(nunk);
      for (int i = 0; i < nunk; ++i) h[i] = E.V[i][at];
      sol = h;
      break;
    }
  }
  T->samples = used;
  if (!sol)
    throw Error(Errc::undecided, "Steinberg equations did not cut out a cyclic pairing within " + std::to_string(used) + " samples");
  T->H = *sol;

  // Normalise so that the unramified reference pairs with pi to 1.
  if (T->R.n == 2) {
    T->normalized = true;
  } else if (s == 1 || f * T->R.n <= 4) {
    LocalElem u = unramified_reference(K, s);
    int64_t c = T->pair(T->coords(u), T->coords(LocalElem::pi(K)));
    if (T->R.vp(c) != 0) throw Error(Errc::undecided, "reference pair is degenerate for the solved pairing");
    int64_t ci = T->R.inv_unit(c);
    for (auto& x : T->H) x = T->R.red(x * ci);
    T->normalized = true;
  }
  std::ostringstream os;
  os << "pairing " << K->text() << " s=" << s << " M=" << M << " rank=" << r << " samples=" << used
     << (T->normalized ? " normalised" : " unnormalised");
  T->certificate = os.str();
  return T;
}

std::shared_ptr<const PairingTable> get_table(const LocalFieldPtr& K, int s, long long budget) {
  static std::mutex mu;
  static std::map<std::pair<std::string, int>, std::shared_ptr<const PairingTable>> cache;
  if (budget <= 0) throw Error(Errc::undecided, "oracle budget exhausted");
  auto key = std::make_pair(K->text(), s);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) {
      if (it->second->samples > budget) throw Error(Errc::undecided, "oracle budget below the pairing solve cost");
      return it->second;
    }
  }
  auto T = build_table(K, s, budget);
  std::lock_guard<std::mutex> lk(mu);
  return cache.emplace(key, T).first->second;
}

// Raw Z/p^s value and whether it is normalised.
std::pair<int64_t, std::shared_ptr<const PairingTable>> raw_symbol(const LocalElem& a, const LocalElem& b, int s,
                                                                    long long budget) {
  if (a.is_zero() || b.is_zero()) throw Error(Errc::zero_at_point, "symbol entry vanishes");
  auto T = get_table(a.field(), s, budget);
  return {T->pair(T->coords(a), T->coords(b)), T};
}

}  // namespace

// ---- BrauerClass ----

BrauerClass BrauerClass::parse(const std::string& text, const LocalFieldPtr& F, int m) {
  BrauerClass A;
  A.field = F;
  A.m = m;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t\n") == std::string::npos) continue;
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string part;
    while (std::getline(is, part, ',')) parts.push_back(part);
    if (parts.size() != 3) throw Error(Errc::parse_error, "symbol needs 'a, b, order': '" + item + "'");
    long long order = 0;
    try {
      order = std::stoll(parts[2]);
    } catch (const std::exception&) {
      throw Error(Errc::parse_error, "bad symbol order '" + parts[2] + "'");
    }
    SymbolTerm t{LocalFrac::parse(parts[0], F, m), LocalFrac::parse(parts[1], F, m), log_p(order, F->p())};
    if (t.s < 1) throw Error(Errc::parse_error, "symbol order must be at least p");
    A.terms.push_back(std::move(t));
  }
  return A;
}

BrauerClass BrauerClass::operator+(const BrauerClass& o) const {
  if (is_zero() && !field) return o;
  if (field && o.field && !field->same(*o.field)) throw Error(Errc::invalid_argument, "classes over different fields");
  BrauerClass r = *this;
  r.m = std::max(m, o.m);
  r.terms.insert(r.terms.end(), o.terms.begin(), o.terms.end());
  return r;
}

std::string BrauerClass::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  if (cores) os << "cores(";
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << "(" << terms[i].a.str() << ", " << terms[i].b.str() << ")_" << ipow(field->p(), terms[i].s);
  }
  if (cores) os << ")";
  return os.str();
}

BrauerClass multiply_by_p(const BrauerClass& A) {
  BrauerClass r = A;
  r.terms.clear();
  for (const auto& t : A.terms)
    if (t.s > 1) r.terms.push_back({t.a, t.b, t.s - 1});
  return r;
}

std::string LocalSymbolSum::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i) os << " + ";
    os << "(" << terms[i].a.str() << ", " << terms[i].b.str() << ")_" << ipow(field->p(), terms[i].s);
  }
  return os.str();
}

LocalSymbolSum specialize(const BrauerClass& A, const std::vector<LocalElem>& pt, const LocalPoly::CoeffMap& embed) {
  if ((int)pt.size() < A.m) throw Error(Errc::invalid_argument, "point has too few coordinates");
  LocalSymbolSum S;
  S.cores = A.cores;
  std::vector<LocalElem> P = pt;
  LocalPoly::CoeffMap emb = embed;
  if (A.cores) {
    for (auto& x : P) {
      if (x.field()->same(*A.field)) continue;
      if (!x.field()->same(*A.cores->base))
        throw Error(Errc::invalid_argument, "corestricted classes are evaluated at points over the base field");
      x = include_from(A.field, x);
    }
    emb = nullptr;
  }
  S.field = P.empty() ? (emb ? emb(LocalElem::one(A.field)).field() : A.field) : P[0].field();
  if (!emb && !S.field->same(*A.field)) throw Error(Errc::invalid_argument, "point field differs from the class field and no embedding was given");
  auto entry = [&](const LocalFrac& x, int s) {
    LocalElem n = x.num().eval(P, emb), d = x.den().eval(P, emb);
    if (d.is_zero()) throw Error(Errc::pole_at_point, "symbol entry " + x.str() + " has a pole at the point");
    LocalElem v = n * d.pow(ipow(S.field->p(), s) - 1);
    if (v.is_zero()) throw Error(Errc::zero_at_point, "symbol entry " + x.str() + " vanishes at the point");
    return v;
  };
  for (const auto& t : A.terms) S.terms.push_back({entry(t.a, t.s), entry(t.b, t.s), t.s});
  return S;
}

// ---- quadratic Hilbert symbol ----

namespace {

struct Hilbert2Search {
  LocalFieldPtr K;
  LocalElem a, b, two;
  std::vector<LocalElem> lifts;  // residue code -> lift
  int depth_limit = 0;
  long long budget = 0, nodes = 0;
  int hit_depth = -1;

  // mode[c]: 0 fixed, 1 free, 2 free but divisible by pi.
  bool dfs(int k, LocalElem xyz[3], const int mode[3]) {
    if (++nodes > budget) throw Error(Errc::undecided, "hilbert2 search exceeded its node budget");
    LocalElem F = xyz[2] * xyz[2] - a * xyz[0] * xyz[0] - b * xyz[1] * xyz[1];
    int vf = val_or_inf(F);
    if (vf < k) return false;
    int delta = std::min({val_or_inf(two * xyz[2]), val_or_inf(two * a * xyz[0]), val_or_inf(two * b * xyz[1])});
    if (delta < kInf && vf > 2 * delta) {
      hit_depth = k;
      return true;
    }
    if (k >= depth_limit) return false;
    std::vector<int> free;
    for (int c = 0; c < 3; ++c)
      if (mode[c] == 1 || (mode[c] == 2 && k > 0)) free.push_back(c);
    const int q = K->q();
    long long combos = 1;
    for (size_t i = 0; i < free.size(); ++i) combos *= q;
    LocalElem pik = LocalElem::pi(K).pow(k);
    for (long long idx = 0; idx < combos; ++idx) {
      LocalElem nx[3] = {xyz[0], xyz[1], xyz[2]};
      long long r = idx;
      for (int c : free) {
        int code = (int)(r % q);
        r /= q;
        if (code) nx[c] = nx[c] + lifts[code] * pik;
      }
      if (dfs(k + 1, nx, mode)) return true;
    }
    return false;
  }
};

LocalElem square_free_part(const LocalElem& x) {
  int v = x.valuation();
  LocalElem u = x.unit_part();
  return v % 2 ? u * LocalElem::pi(x.field()) : u;
}

}  // namespace

InvValue hilbert2(const LocalElem& a0, const LocalElem& b0, long long budget) {
  const auto& K = a0.field();
  if (K->p() != 2) throw Error(Errc::invalid_argument, "hilbert2 is the p = 2 oracle");
  if (a0.is_zero() || b0.is_zero()) throw Error(Errc::precision_exhausted, "symbol entry is zero to known precision");
  if (budget <= 0) throw Error(Errc::undecided, "oracle budget exhausted");
  Hilbert2Search H;
  H.K = K;
  H.a = square_free_part(a0);
  H.b = square_free_part(b0);
  const int e = K->e(), cutoff = 4 * e + 4;
  if (std::min(H.a.precision(), H.b.precision()) < cutoff)
    throw Error(Errc::precision_exhausted, "hilbert2 needs " + std::to_string(cutoff) + " digits");
  H.two = LocalElem::from_int(K, 2);
  H.depth_limit = 2 * e + 3;
  H.budget = budget;
  for (int c = 0; c < K->q(); ++c) H.lifts.push_back(LocalElem::lift_residue(K, c));
  // Primitive zeros, split by the first unit coordinate in the order z, x, y.
  const int modes[3][3] = {{1, 1, 0}, {0, 1, 2}, {2, 0, 2}};
  const int fixed[3] = {2, 0, 1};
  for (int c = 0; c < 3; ++c) {
    LocalElem xyz[3] = {LocalElem::zero(K), LocalElem::zero(K), LocalElem::zero(K)};
    xyz[fixed[c]] = LocalElem::one(K);
    if (H.dfs(0, xyz, modes[c])) {
      std::ostringstream os;
      os << "hilbert2 zero certified at depth " << H.hit_depth << " nodes=" << H.nodes;
      return InvValue::of(QZ(0, 1), os.str());
    }
  }
  std::ostringstream os;
  os << "hilbert2 no primitive zero to depth " << H.depth_limit << " nodes=" << H.nodes;
  return InvValue::of(QZ(1, 2), os.str());
}

InvValue symbol_invariant(const LocalElem& a, const LocalElem& b, int s, long long budget) {
  auto [v, T] = raw_symbol(a, b, s, budget);
  if (T->normalized) return InvValue::of(QZ(v, T->R.n), T->certificate);
  if (v == 0) return InvValue::of(QZ(0, 1), T->certificate);
  return {InvValue::Kind::nonzero, QZ(), T->certificate};
}

bool norm_triviality(const LocalElem& a, const LocalElem& b, long long budget) {
  return raw_symbol(a, b, 1, budget).first == 0;
}

LocalElem unramified_reference(const LocalFieldPtr& K, int s) {
  if (s != 1) return hilbert90_reference(K, s);
  if (K->root_of_unity_exponent() < 1) throw Error(Errc::missing_root_of_unity, "reference needs zeta_p");
  const int p = K->p();
  LocalElem lam = K->zeta().pow(ipow(p, K->root_of_unity_exponent() - 1)) - LocalElem::one(K);
  const Fq& k = *K->residue();
  int c = 1;
  while (k.trace(c) != 1) ++c;
  return LocalElem::one(K) + lam.pow(p) * LocalElem::lift_residue(K, c);
}

LocalElem hilbert90_reference(const LocalFieldPtr& K, int s) {
  const int p = K->p();
  const int d = (int)ipow(p, s);
  if (K->root_of_unity_exponent() < s) throw Error(Errc::missing_root_of_unity, "reference needs zeta_{p^s}");
  Embedding E = unramified_extension(K, d);
  const auto& L = E.dst;
  LocalElem z = K->zeta().pow(ipow(p, K->root_of_unity_exponent() - s));
  LocalElem zL = E(z), zinv = zL.inv();
  for (int code = 1; code < L->q(); ++code) {
    LocalElem th = LocalElem::lift_residue(L, code);
    LocalElem y = LocalElem::zero(L), zp = LocalElem::one(L), sth = th;
    for (int i = 0; i < d; ++i) {
      y = y + zp * sth;
      zp = zp * zinv;
      sth = frobenius(sth, K->f());
    }
    if (!y.is_unit()) continue;
    LocalElem x = y.pow(d);
    // Descend to K digit by digit.
    std::map<int, int> back;
    for (int c = 0; c < K->q(); ++c) back[E(LocalElem::lift_residue(K, c)).residue()] = c;
    const int N = std::min(x.precision() / L->e() * K->e(), K->max_precision());
    LocalElem out = LocalElem::zero(K), pik = LocalElem::one(K);
    for (int i = 0; i < N && !x.is_zero(); ++i) {
      auto it = back.find(x.residue());
      if (it == back.end()) throw Error(Errc::invalid_argument, "reference unit does not descend");
      LocalElem c = LocalElem::lift_residue(K, it->second);
      out = out + c * pik;
      x = (x - E(c)).mul_pi_pow(-1);
      pik = pik * LocalElem::pi(K);
    }
    return out.with_precision(N);
  }
  throw Error(Errc::undecided, "no unit Lagrange resolvent found");
}

InvValue invariant(const LocalSymbolSum& S, long long budget) {
  if (budget <= 0) throw Error(Errc::undecided, "oracle budget exhausted");
  const int p = S.field->p();
  QZ acc;
  std::map<int, int64_t> unnormalised;  // s -> raw sum
  std::ostringstream cert;
  if (S.cores) cert << "inv via corestriction from " << S.field->text() << "; ";
  for (const auto& t : S.terms) {
    if (p == 2 && t.s == 1) {
      InvValue v = hilbert2(t.a, t.b, budget);
      acc = acc + v.value;
      cert << v.certificate << "; ";
      continue;
    }
    auto [v, T] = raw_symbol(t.a, t.b, t.s, budget);
    if (p == 2 && t.s == 2) {
      // Cross-check the order-4 value against the exact quadratic oracle.
      InvValue twice = hilbert2(t.a, t.b, budget);
      if (T->normalized && !(2 * QZ(v, T->R.n) == twice.value))
        throw Error(Errc::undecided, "order-4 pairing disagrees with hilbert2 on 2 * symbol");
    }
    if (T->normalized)
      acc = acc + QZ(v, T->R.n);
    else
      unnormalised[t.s] = (unnormalised[t.s] + v) % T->R.n;
    cert << T->certificate << "; ";
  }
  int nz = 0;
  for (const auto& [s, v] : unnormalised) nz += v != 0;
  if (nz == 0) return InvValue::of(acc, cert.str());
  if (nz == 1 && acc.is_zero()) return {InvValue::Kind::nonzero, QZ(), cert.str()};
  throw Error(Errc::undecided, "cannot combine unnormalised symbol values of different orders");
}

LocalSymbolSum class_difference(const LocalSymbolSum& S1, const LocalSymbolSum& S2) {
  if (!S1.field->same(*S2.field)) throw Error(Errc::invalid_argument, "difference of sums over different fields");
  LocalSymbolSum r = S1;
  for (const auto& t : S2.terms) r.terms.push_back({t.a, t.b.pow(ipow(S1.field->p(), t.s) - 1), t.s});
  return r;
}

}  // namespace swanlab
