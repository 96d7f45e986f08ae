#include "swanlab/fq.hpp"

#include "swanlab/errors.hpp"

namespace swanlab {

std::vector<int> Fq::table_polynomial(int p, int f) {
  // Conway polynomials, constant term first.
  struct Row {
    int p, f;
    std::vector<int> c;
  };
  static const Row rows[] = {
      {2, 1, {1, 1}},          {2, 2, {1, 1, 1}},       {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}}, {3, 1, {1, 1}},          {3, 2, {2, 2, 1}},
      {3, 3, {1, 2, 0, 1}},    {3, 4, {2, 0, 0, 2, 1}}, {5, 1, {3, 1}},
      {5, 2, {2, 4, 1}},       {5, 3, {3, 3, 0, 1}},    {5, 4, {2, 4, 4, 0, 1}},
      {7, 1, {4, 1}},          {7, 2, {3, 6, 1}},       {7, 3, {4, 0, 6, 1}},
      {7, 4, {3, 4, 5, 0, 1}},
  };
  for (const auto& r : rows)
    if (r.p == p && r.f == f) return r.c;
  throw Error(Errc::invalid_argument,
              "no table polynomial for p=" + std::to_string(p) + " f=" + std::to_string(f));
}

std::shared_ptr<const Fq> Fq::make(int p, int f) { return std::make_shared<const Fq>(p, f); }

Fq::Fq(int p, int f) : p_(p), f_(f) {
  mod_ = table_polynomial(p, f);
  q_ = 1;
  pw_.resize(f + 1);
  for (int j = 0; j <= f; ++j) {
    pw_[j] = q_;
    if (j < f) q_ *= p;
  }
  auto raw_mul = [&](int a, int b) {
    std::vector<int> da(f), db(f), prod(2 * f, 0);
    for (int j = 0; j < f; ++j) {
      da[j] = (a / pw_[j]) % p;
      db[j] = (b / pw_[j]) % p;
    }
    for (int i = 0; i < f; ++i)
      for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (int d = 2 * f - 1; d >= f; --d) {
      int c = prod[d];
      if (!c) continue;
      prod[d] = 0;
      for (int j = 0; j < f; ++j) prod[d - f + j] = ((prod[d - f + j] - c * mod_[j]) % p + p) % p;
    }
    int r = 0;
    for (int j = 0; j < f; ++j) r += prod[j] * pw_[j];
    return r;
  };
  exp_.assign(q_, 0);
  log_.assign(q_, -1);
  for (int g = 1; g < q_; ++g) {
    int x = 1, ord = 0;
    do {
      x = raw_mul(x, g);
      ++ord;
    } while (x != 1 && ord < q_);
    if (x != 1)
      throw Error(Errc::invalid_argument, "table polynomial is not irreducible");
    if (ord == q_ - 1) {
      primitive_ = g;
      break;
    }
  }
  int x = 1;
  for (int i = 0; i < q_ - 1; ++i) {
    exp_[i] = x;
    if (log_[x] != -1) throw Error(Errc::invalid_argument, "table polynomial is not irreducible");
    log_[x] = i;
    x = raw_mul(x, primitive_);
  }
}

int Fq::digit(int a, int j) const { return (a / pw_[j]) % p_; }

std::vector<int> Fq::digits(int a) const {
  std::vector<int> d(f_);
  for (int j = 0; j < f_; ++j) d[j] = digit(a, j);
  return d;
}

int Fq::from_digits(const std::vector<int>& d) const {
  int r = 0;
  for (int j = 0; j < f_ && j < (int)d.size(); ++j) r += (((d[j] % p_) + p_) % p_) * pw_[j];
  return r;
}

int Fq::add(int a, int b) const {
  if (p_ == 2) return a ^ b;
  int r = 0;
  for (int j = 0; j < f_; ++j) r += ((digit(a, j) + digit(b, j)) % p_) * pw_[j];
  return r;
}

int Fq::neg(int a) const {
  if (p_ == 2) return a;
  int r = 0;
  for (int j = 0; j < f_; ++j) r += ((p_ - digit(a, j)) % p_) * pw_[j];
  return r;
}

int Fq::sub(int a, int b) const { return add(a, neg(b)); }

int Fq::mul(int a, int b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

int Fq::inv(int a) const {
  if (a == 0) throw Error(Errc::invalid_argument, "inverse of zero in F_q");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

int Fq::pow(int a, long long k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  long long e = (long long)log_[a] * (k % (q_ - 1));
  e %= (q_ - 1);
  if (e < 0) e += q_ - 1;
  return exp_[e];
}

int Fq::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return (int)r;
}

int Fq::trace(int a) const {
  int s = 0, x = a;
  for (int j = 0; j < f_; ++j) {
    s = add(s, x);
    x = frob(x);
  }
  return s;  // lies in F_p, so its code is the integer value
}

std::string Fq::to_string(int a) const {
  if (f_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  std::string s;
  for (int j = f_ - 1; j >= 0; --j) {
    int c = digit(a, j);
    if (!c) continue;
    if (!s.empty()) s += "+";
    if (j == 0) {
      s += std::to_string(c);
    } else {
      if (c != 1) s += std::to_string(c) + "*";
      s += "w";
      if (j > 1) s += "^" + std::to_string(j);
    }
  }
  return s;
}

int trace_to_prime(const FqElem& a) { return a.k->trace(a.v); }

QZ artin_schreier_inv(const FqElem& x) { return QZ(trace_to_prime(x), x.k->p()); }

bool artin_schreier_solvable(const FqElem& x) {
  const Fq& k = *x.k;
  for (int y = 0; y < k.q(); ++y)
    if (k.sub(k.frob(y), y) == x.v) return true;
  return false;
}

}  // namespace swanlab
