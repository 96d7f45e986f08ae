#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "swanlab/fq.hpp"

namespace swanlab {

constexpr int kMaxVars = 4;
using Mono = std::array<int16_t, kMaxVars>;

int mono_degree(const Mono& a);
// Graded lexicographic with x1 > x2 > ... .
bool grlex_greater(const Mono& a, const Mono& b);

struct PTerm {
  Mono e{};
  int c = 0;
};

// Sparse polynomial over F_q in m <= 4 variables; terms sorted by decreasing grlex.
class Poly {
 public:
  Poly() = default;
  Poly(FqPtr k, int m);
  static Poly constant(FqPtr k, int m, int c);
  static Poly var(FqPtr k, int m, int i);  // x_{i+1}
  static Poly monomial(FqPtr k, int m, const Mono& e, int c);
  static Poly from_terms(FqPtr k, int m, std::vector<PTerm> t);

  const FqPtr& field() const { return k_; }
  int nvars() const { return m_; }
  const std::vector<PTerm>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  int constant_term() const;
  const PTerm& lead() const { return t_.front(); }
  int total_degree() const;
  int degree_in(int i) const;
  int min_degree_in(int i) const;
  bool is_monomial() const { return t_.size() == 1; }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scale(int c) const;
  Poly mul_mono(const Mono& e, int c) const;
  Poly pow(int k) const;
  bool operator==(const Poly& o) const;

  // Quotient when d divides *this; ok is cleared otherwise.
  Poly divexact(const Poly& d, bool& ok) const;
  Poly monic() const;
  Poly derivative(int i) const;
  int eval(const std::vector<int>& pt) const;
  Poly eval_var(int i, int c) const;
  // Coefficients as polynomials in the other variables, keyed by the exponent of x_i.
  std::map<int, Poly> coeffs_in(int i) const;
  // Substitute x_i -> images[i].
  Poly compose(const std::vector<Poly>& images) const;
  std::string str() const;

 private:
  FqPtr k_;
  int m_ = 0;
  std::vector<PTerm> t_;
  void normalize();
};

Poly gcd(const Poly& a, const Poly& b);

// Element of F_q(x_1..x_m): gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(FqPtr k, int m);
  explicit RatFunc(Poly n);
  RatFunc(Poly n, Poly d);
  static RatFunc constant(FqPtr k, int m, int c);
  static RatFunc var(FqPtr k, int m, int i);
  static RatFunc parse(const std::string& s, FqPtr k, int m);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FqPtr& field() const { return num_.field(); }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  int constant_value() const;  // requires is_constant()
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc scale(int c) const;
  RatFunc inv() const;
  RatFunc pow(long long k) const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc derivative(int i) const;
  int eval(const std::vector<int>& pt) const;  // throws pole-at-point
  bool regular_at(const std::vector<int>& pt) const;
  RatFunc eval_var(int i, int c) const;        // throws pole-at-point if den vanishes on x_i = c
  bool regular_along(int i, int c = 0) const;  // den does not vanish identically on x_i = c
  RatFunc compose(const std::vector<RatFunc>& images) const;
  std::string str() const;

 private:
  Poly num_, den_;
  void normalize();
  // Trusted constructor for coprime inputs; only makes the denominator monic.
  static RatFunc reduced(Poly n, Poly d);
};

}  // namespace swanlab
