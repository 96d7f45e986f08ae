#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "swanlab/local_field.hpp"
#include "swanlab/ratfunc.hpp"

namespace swanlab {

// Polynomial over O_k in u_1..u_m (m <= 4).
class LocalPoly {
 public:
  LocalPoly() = default;
  LocalPoly(LocalFieldPtr F, int m);
  static LocalPoly constant(const LocalElem& c, int m);
  static LocalPoly var(const LocalFieldPtr& F, int m, int i);  // u_{i+1}

  const LocalFieldPtr& field() const { return F_; }
  int nvars() const { return m_; }
  const std::map<Mono, LocalElem>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool same(const LocalPoly& o) const;

  LocalPoly operator+(const LocalPoly& o) const;
  LocalPoly operator-(const LocalPoly& o) const;
  LocalPoly operator-() const;
  LocalPoly operator*(const LocalPoly& o) const;
  LocalPoly scale(const LocalElem& c) const;
  LocalPoly pow(int k) const;

  // Gauss valuation: smallest coefficient valuation (a large sentinel for 0).
  int valuation() const;
  // Reduction of the coefficients divided by pi^shift.
  Poly reduce(int shift) const;
  using CoeffMap = std::function<LocalElem(const LocalElem&)>;
  LocalElem eval(const std::vector<LocalElem>& pt, const CoeffMap& embed = nullptr) const;
  LocalPoly map_coeffs(const LocalFieldPtr& G, const CoeffMap& embed) const;
  std::string str() const;

 private:
  LocalFieldPtr F_;
  int m_ = 0;
  std::map<Mono, LocalElem> t_;
  void add_term(const Mono& e, const LocalElem& c);
};

// num / den with no cancellation; enough for symbol entries.
class LocalFrac {
 public:
  LocalFrac() = default;
  LocalFrac(LocalPoly n, LocalPoly d);
  explicit LocalFrac(LocalPoly n);
  static LocalFrac constant(const LocalElem& c, int m);
  // Grammar: integers, pi, w (unramified generator), zeta, u1..u4 or x1..x4, + - * / ^ ( ).
  static LocalFrac parse(const std::string& s, const LocalFieldPtr& F, int m);
  // Teichmuller lift of a residue rational function (x_i -> u_i).
  static LocalFrac lift(const RatFunc& f, const LocalFieldPtr& F);

  const LocalPoly& num() const { return num_; }
  const LocalPoly& den() const { return den_; }
  const LocalFieldPtr& field() const { return num_.field(); }
  int nvars() const { return num_.nvars(); }

  LocalFrac operator+(const LocalFrac& o) const;
  LocalFrac operator-(const LocalFrac& o) const;
  LocalFrac operator-() const;
  LocalFrac operator*(const LocalFrac& o) const;
  LocalFrac operator/(const LocalFrac& o) const;
  LocalFrac pow(long long k) const;

  int valuation() const { return num_.valuation() - den_.valuation(); }
  // Reduction of f / pi^valuation() as a residue rational function.
  RatFunc leading_reduction() const;
  LocalFrac map_coeffs(const LocalFieldPtr& G, const LocalPoly::CoeffMap& embed) const;
  std::string str() const;

 private:
  LocalPoly num_, den_;
};

}  // namespace swanlab
