#pragma once

#include <memory>
#include <string>
#include <vector>

#include "swanlab/qz.hpp"

namespace swanlab {

// Finite field F_q = F_p[w]/(g(w)), g taken from a fixed table (f <= 4).
// Elements are integer codes sum_j c_j p^j for c_0 + c_1 w + ... .
class Fq {
 public:
  static std::shared_ptr<const Fq> make(int p, int f);

  // Fixed defining polynomial for (p, f), coefficients low to high, monic.
  static std::vector<int> table_polynomial(int p, int f);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }
  const std::vector<int>& modulus() const { return mod_; }

  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const;
  int inv(int a) const;
  int div(int a, int b) const { return mul(a, inv(b)); }
  int pow(int a, long long k) const;
  int frob(int a) const { return pow(a, p_); }
  // Inverse Frobenius: the unique b with b^p = a.
  int root_p(int a) const { return pow(a, q_ / p_); }
  int from_int(long long n) const;
  int gen() const { return f_ > 1 ? p_ : primitive_; }
  int primitive() const { return primitive_; }

  int digit(int a, int j) const;
  std::vector<int> digits(int a) const;
  int from_digits(const std::vector<int>& d) const;

  // Tr_{F_q/F_p}(a) as an integer in [0, p).
  int trace(int a) const;

  std::string to_string(int a) const;

  bool same(const Fq& o) const { return p_ == o.p_ && f_ == o.f_; }

  Fq(int p, int f);

 private:
  int p_, f_, q_;
  int primitive_ = 1;
  std::vector<int> mod_;
  std::vector<int> pw_;
  std::vector<int> exp_, log_;
};

using FqPtr = std::shared_ptr<const Fq>;

struct FqElem {
  FqPtr k;
  int v = 0;

  FqElem() = default;
  FqElem(FqPtr k_, int v_) : k(std::move(k_)), v(v_) {}

  friend FqElem operator+(const FqElem& a, const FqElem& b) { return {a.k, a.k->add(a.v, b.v)}; }
  friend FqElem operator-(const FqElem& a, const FqElem& b) { return {a.k, a.k->sub(a.v, b.v)}; }
  friend FqElem operator*(const FqElem& a, const FqElem& b) { return {a.k, a.k->mul(a.v, b.v)}; }
  friend bool operator==(const FqElem& a, const FqElem& b) { return a.v == b.v; }
  bool is_zero() const { return v == 0; }
  std::string str() const { return k->to_string(v); }
};

int trace_to_prime(const FqElem& a);

// inv of the Artin-Schreier class of x: Tr(x)/p in Q/Z.
QZ artin_schreier_inv(const FqElem& x);

// True iff y^p - y = x has a solution in F_q (checked by exhaustion).
bool artin_schreier_solvable(const FqElem& x);

}  // namespace swanlab
