#pragma once

#include <map>
#include <string>
#include <vector>

#include "swanlab/ratfunc.hpp"

namespace swanlab {

// Sum of f_i dx_i over F_q(x_1..x_m).
class Form1 {
 public:
  Form1() = default;
  Form1(FqPtr k, int m);
  static Form1 dx(FqPtr k, int m, int i);
  static Form1 parse(const std::string& s, FqPtr k, int m);

  const FqPtr& field() const { return k_; }
  int nvars() const { return m_; }
  const RatFunc& operator[](int i) const { return c_.at(i); }
  void set(int i, RatFunc f) { c_.at(i) = std::move(f); }
  bool is_zero() const;
  bool is_constant() const;

  Form1 operator+(const Form1& o) const;
  Form1 operator-(const Form1& o) const;
  Form1 operator-() const;
  Form1 operator*(const RatFunc& g) const;
  Form1 scale(int c) const;
  bool operator==(const Form1& o) const;
  bool operator!=(const Form1& o) const { return !(*this == o); }

  // Coefficients specialised at a point.
  std::vector<int> at(const std::vector<int>& pt) const;
  // Substitute RatFunc images for the variables (coefficients only).
  Form1 map_coeffs(const std::vector<RatFunc>& images) const;

  // var is the variable stem used when printing ("x" gives x1*dx2/x2).
  std::string str(const std::string& var = "x") const;

 private:
  FqPtr k_;
  int m_ = 0;
  std::vector<RatFunc> c_;
};

// Sum of f_ij dx_i ^ dx_j, i < j.
class Form2 {
 public:
  Form2() = default;
  Form2(FqPtr k, int m);
  static Form2 dxdx(FqPtr k, int m, int i, int j);
  static Form2 parse(const std::string& s, FqPtr k, int m);

  const FqPtr& field() const { return k_; }
  int nvars() const { return m_; }
  // Antisymmetric accessor: get(j, i) = -get(i, j).
  RatFunc get(int i, int j) const;
  void set(int i, int j, RatFunc f);
  void add(int i, int j, const RatFunc& f);
  bool is_zero() const;

  Form2 operator+(const Form2& o) const;
  Form2 operator-(const Form2& o) const;
  Form2 operator-() const;
  Form2 operator*(const RatFunc& g) const;
  Form2 scale(int c) const;
  bool operator==(const Form2& o) const;
  bool operator!=(const Form2& o) const { return !(*this == o); }

  Form2 map_coeffs(const std::vector<RatFunc>& images) const;
  std::string str(const std::string& var = "x") const;

 private:
  FqPtr k_;
  int m_ = 0;
  std::vector<RatFunc> c_;  // m*m, only i < j used
};

Form1 d(const RatFunc& f);
Form2 d(const Form1& w);
Form2 wedge(const Form1& a, const Form1& b);
Form1 dlog(const RatFunc& f);
// Pullback along x_i -> images[i] (images live in a possibly different variable count).
Form1 pullback(const Form1& w, const std::vector<RatFunc>& images);
Form2 pullback(const Form2& w, const std::vector<RatFunc>& images);

using TangentVec = std::vector<int>;  // F_q codes, one per coordinate
int contract(const Form1& beta, const std::vector<int>& P0, const TangentVec& v);
int contract2(const Form2& alpha, const std::vector<int>& P0, const TangentVec& v, const TangentVec& w);

// Cartier operator on closed forms with polynomial numerators and monomial denominators.
Form1 cartier(const Form1& w);
Form2 cartier(const Form2& w);

// omega = eta + g ^ dlog u_j with eta, g regular along u_j = 0; returns g restricted there.
RatFunc log_residue(const Form1& w, int j);
Form1 log_residue(const Form2& w, int j);
bool regular_along(const Form1& w, int j);
bool regular_along(const Form2& w, int j);

// Homogeneous Taylor components (degrees 0..deg) at the origin; requires den(0) != 0.
std::vector<Poly> taylor(const RatFunc& f, int deg);

// psi(beta_0) = sum b_i X_i, a linear form on the exceptional divisor of the point blowup.
struct ProjLinear {
  FqPtr k;
  std::vector<int> a;
  // Restriction to the chart X_i0 = 1 in coordinates u_j = X_j / X_i0 (slot i0 unused).
  RatFunc in_chart(int i0) const;
  bool is_zero() const;
  std::string str() const;
};
// phi(alpha_0) = sum a_ij (X_j dX_i - X_i dX_j), a section of Omega^1(2) on the exceptional divisor.
struct ProjOneForm {
  FqPtr k;
  int m = 0;
  std::vector<int> a;  // m*m antisymmetric, a[i*m+j] for i < j
  int get(int i, int j) const;
  Form1 in_chart(int i0) const;
  bool is_zero() const;
  std::string str() const;
};
ProjLinear psi(const FqPtr& k, const std::vector<int>& beta0);
ProjOneForm phi(const FqPtr& k, int m, const std::vector<int>& alpha0);
std::vector<int> constant_coeffs(const Form1& beta, const std::vector<int>& P0);
std::vector<int> constant_coeffs(const Form2& alpha, const std::vector<int>& P0);

enum class LogdiffKind { one_logH, one_2H, two_2H_logH };
struct LogdiffElem {
  Form1 w1;  // set for the one-form families
  Form2 w2;  // set for two_2H_logH
  bool two = false;
};
// Global forms on P^n in the chart u_i = X_i / X_0 (variables u_1..u_n in slots 0..n-1).
std::vector<LogdiffElem> logdiff_basis(LogdiffKind kind, const FqPtr& k, int n);
// Residue along X_0 = 0 computed in the chart of X_i (1 <= i <= n) after twisting by t_0^twist,
// where t_0 = X_0/X_i occupies slot i-1 and t_j = X_j/X_i the others.
RatFunc logdiff_residue(const Form1& w, int i, int twist);
Form1 logdiff_residue(const Form2& w, int i, int twist);

// Rank over F_q of a family of forms (coefficient vectors after clearing denominators).
int rank_of(const std::vector<Form1>& fam);
int rank_of(const std::vector<Form2>& fam);
int rank_of(const std::vector<RatFunc>& fam);

enum class BlowupChart { geometric, arithmetic };

// Pullback under a point blowup carrying the exceptional coordinate z as a formal weight.
// Slot 0 of every component stands for dlog z, slots 1..m-1 for du_2..du_m (geometric)
// or slots 1..m for du_1..du_m (arithmetic); coefficient variables share the slot numbering.
struct GradedForm1 {
  FqPtr k;
  int slots = 0;
  BlowupChart chart = BlowupChart::geometric;
  std::map<int, Form1> parts;  // weight -> component
  int order() const;  // smallest weight with a nonzero component, -1 for zero
  // Log residue of z^{-twist} times the form; throws pole-order-too-high below twist.
  RatFunc residue(int twist) const;
  std::string str() const;
};
struct GradedForm2 {
  FqPtr k;
  int slots = 0;
  BlowupChart chart = BlowupChart::geometric;
  std::map<int, Form2> parts;
  int order() const;
  // g with the weight-twist component = eta + g ^ dlog z.
  Form1 residue(int twist) const;
  std::string str() const;
};
// geometric: x_1 = z, x_i = z u_i; arithmetic: x_i = z u_i for all i (z plays pi).
// Taylor components up to degree depth are pulled back; throws pole-at-origin.
GradedForm1 blowup_pullback(const Form1& beta, int depth = 1, BlowupChart chart = BlowupChart::geometric);
GradedForm2 blowup_pullback(const Form2& alpha, int depth = 0, BlowupChart chart = BlowupChart::geometric);

}  // namespace swanlab
