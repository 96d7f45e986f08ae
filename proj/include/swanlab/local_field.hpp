#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "swanlab/fq.hpp"

namespace swanlab {

class LocalField;
class LocalElem;
enum class Subfield { unramified, prime };
using LocalFieldPtr = std::shared_ptr<const LocalField>;
using UVec = std::vector<int64_t>;  // element of the unramified part, omega-digits low first

// Q_p -> W(F_q)[1/p] (degree f) -> totally ramified by an Eisenstein polynomial of degree e.
// Only integral elements are representable; precision is absolute in pi-adic digits.
class LocalField {
 public:
  // eis[i] is the coefficient of pi^i (i < e); the polynomial is monic of degree e.
  static LocalFieldPtr make(int p, int f, std::vector<UVec> eis, std::string tag = "", int cap = 0);
  // Q_p(zeta_{p^s}) with pi = zeta - 1.
  static LocalFieldPtr make_cyclotomic(int p, int s);
  // "p^f/c0,c1,..." (coefficients constant term first, components of a coefficient joined by ':')
  // or one of the aliases listed in the README.
  static LocalFieldPtr parse(const std::string& text);

  int p() const { return p_; }
  int f() const { return f_; }
  int e() const { return e_; }
  int q() const { return residue_->q(); }
  const FqPtr& residue() const { return residue_; }
  const std::vector<UVec>& eisenstein() const { return eis_; }

  // e' = e p / (p - 1) as a reduced fraction.
  int eprime_num() const { return ep_num_; }
  int eprime_den() const { return ep_den_; }
  bool eprime_integral() const { return ep_den_ == 1; }
  int eprime() const;  // throws unless integral
  int eprime_ceil() const { return (ep_num_ + ep_den_ - 1) / ep_den_; }

  int default_precision() const { return default_prec_; }
  int max_precision() const { return max_prec_; }
  int cap() const { return cap_; }
  int64_t modulus() const { return P_; }
  int64_t ppow(int k) const { return ppow_.at(k); }

  // Largest s with zeta_{p^s} known to lie in the field (0 if none was found).
  int root_of_unity_exponent() const { return zeta_s_; }
  LocalElem zeta() const;

  std::string text() const;
  const std::string& tag() const { return tag_; }
  bool same(const LocalField& o) const { return text() == o.text(); }
  bool eisenstein_over_Zp() const;
  std::shared_ptr<const LocalField> self() const { return self_.lock(); }

  // Unramified arithmetic, exact modulo P.
  UVec umul(const UVec& a, const UVec& b) const;
  UVec uadd(const UVec& a, const UVec& b) const;
  UVec usub(const UVec& a, const UVec& b) const;
  UVec uinv(const UVec& a) const;  // a must be a unit
  UVec uscalar(int64_t c) const;
  const UVec& unr_modulus() const { return gmod_; }
  int64_t mulmod(int64_t a, int64_t b) const { return (int64_t)((__int128)a * b % P_); }
  int64_t addmod(int64_t a, int64_t b) const {
    int64_t r = a + b;
    return r >= P_ ? r - P_ : r;
  }
  int64_t negmod(int64_t a) const { return a ? P_ - a : 0; }
  const UVec& pi_inv_helper() const { return gamma_inv_; }

  LocalField(int p, int f, std::vector<UVec> eis, std::string tag, int cap);

 private:
  int p_, f_, e_;
  int ep_num_, ep_den_;
  int default_prec_, max_prec_, cap_;
  int64_t P_;
  std::vector<int64_t> ppow_;
  FqPtr residue_;
  UVec gmod_;  // lifted table polynomial, monic of degree f, low first (length f+1)
  std::vector<UVec> eis_;
  UVec gamma_inv_;  // (c0/p)^{-1}
  std::string tag_;
  int zeta_s_ = 0;
  std::vector<int64_t> zeta_;
  int zeta_prec_ = 0;
  std::weak_ptr<const LocalField> self_;
  mutable std::once_flag sub_once_, frob_once_;
  mutable std::shared_ptr<const LocalField> unr_sub_, prime_sub_;
  mutable UVec sigma_omega_;
  friend class LocalElem;
  friend LocalFieldPtr subfield(const LocalFieldPtr&, Subfield);
  friend LocalElem frobenius(const LocalElem&, int);
  void find_roots_of_unity(const LocalFieldPtr& me);
};

class LocalElem {
 public:
  LocalElem() = default;
  static LocalElem zero(const LocalFieldPtr& F, int N = -1);
  static LocalElem one(const LocalFieldPtr& F, int N = -1) { return from_int(F, 1, N); }
  static LocalElem from_int(const LocalFieldPtr& F, long long n, int N = -1);
  static LocalElem pi(const LocalFieldPtr& F);
  static LocalElem omega(const LocalFieldPtr& F);
  static LocalElem from_unr(const LocalFieldPtr& F, const UVec& u, int N = -1);
  static LocalElem from_coeffs(const LocalFieldPtr& F, std::vector<int64_t> a, int N);
  // Lift of a residue code through its digits (not the Teichmuller lift).
  static LocalElem lift_residue(const LocalFieldPtr& F, int code, int N = -1);

  const LocalFieldPtr& field() const { return F_; }
  int precision() const { return N_; }
  const std::vector<int64_t>& coeffs() const { return a_; }
  int64_t coeff(int i, int j) const;

  bool is_zero() const;
  // Valuation; equals precision() for elements that are zero to known precision.
  int valuation() const;
  std::string valuation_str() const;
  bool is_unit() const { return !is_zero() && valuation() == 0; }
  int residue() const;  // reduction mod pi as an F_q code

  LocalElem operator+(const LocalElem& o) const;
  LocalElem operator-(const LocalElem& o) const;
  LocalElem operator-() const;
  LocalElem operator*(const LocalElem& o) const;
  LocalElem operator/(const LocalElem& o) const;
  LocalElem inv() const;
  LocalElem pow(long long k) const;
  LocalElem mul_pi_pow(int k) const;
  LocalElem unit_part() const;
  LocalElem with_precision(int n) const;
  // Treat the stored representative as exact up to precision n (n may exceed precision()).
  LocalElem extended(int n) const;
  // Equality up to the smaller of the two precisions.
  bool equals(const LocalElem& o) const { return (*this - o).is_zero(); }

  // Unramified coefficient of pi^i.
  UVec unr(int i) const;

  std::string str() const;

 private:
  LocalFieldPtr F_;
  std::vector<int64_t> a_;  // index i*f + j for pi^i w^j
  int N_ = 0;
  void reduce();
  LocalElem div_pi_once() const;
  friend class LocalField;
};

// Root of poly (coefficients low to high) near approx, to precision target.
LocalElem hensel_lift(const std::vector<LocalElem>& poly, const LocalElem& approx, int target);
LocalElem poly_eval(const std::vector<LocalElem>& poly, const LocalElem& x);

LocalElem teichmuller(const LocalFieldPtr& F, int code, int N = -1);

// Fields and elements of the stored tower below F.
LocalFieldPtr subfield(const LocalFieldPtr& F, Subfield s);
LocalElem norm(const LocalElem& x, Subfield down_to);
LocalElem trace(const LocalElem& x, Subfield down_to);
// Element of subfield(F, s) viewed in F.
LocalElem include_from(const LocalFieldPtr& F, const LocalElem& y);

// Division-free determinant over LocalElem (subset dynamic programming).
LocalElem determinant(const std::vector<std::vector<LocalElem>>& M);

// Absolute Frobenius sigma_p^k fixing pi; requires Eisenstein coefficients in Z_p.
LocalElem frobenius(const LocalElem& x, int k = 1);

// Embedding of K into its unramified extension of degree d.
struct Embedding {
  LocalFieldPtr src, dst;
  UVec theta;  // image of the unramified generator of src
  LocalElem operator()(const LocalElem& x) const;
};
Embedding unramified_extension(const LocalFieldPtr& K, int d);

}  // namespace swanlab
