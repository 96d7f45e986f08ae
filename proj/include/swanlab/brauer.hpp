#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swanlab/local_poly.hpp"
#include "swanlab/qz.hpp"

namespace swanlab {

// Local invariant in Q/Z, or the weaker answers the odd-p oracle can give.
struct InvValue {
  enum class Kind { exact, nonzero };
  Kind kind = Kind::exact;
  QZ value;
  std::string certificate;

  static InvValue zero() { return {}; }
  static InvValue of(QZ v, std::string cert = "") { return {Kind::exact, v, std::move(cert)}; }
  bool is_trivial() const { return kind == Kind::exact && value.is_zero(); }
  std::string str() const { return kind == Kind::nonzero ? "nonzero" : value.str(); }
};

// Corestriction from the field the symbols live in down to an unramified base.
struct Corestriction {
  LocalFieldPtr base;
  int epsilon = 1;  // [k' : k]
};

// (a, b)_{p^s}.
struct SymbolTerm {
  LocalFrac a, b;
  int s = 1;
};

// Formal sum of cyclic symbols over k'(u_1..u_m), optionally corestricted to k(u_1..u_m).
struct BrauerClass {
  LocalFieldPtr field;
  int m = 0;
  std::vector<SymbolTerm> terms;
  std::optional<Corestriction> cores;

  // "a, b, order; a, b, order" with entries in the local grammar (pi, w, zeta, u1..u4).
  static BrauerClass parse(const std::string& text, const LocalFieldPtr& F, int m);
  bool is_zero() const { return terms.empty(); }
  BrauerClass operator+(const BrauerClass& o) const;
  std::string str() const;
};

// p * A: every term (a, b)_{p^s} becomes (a, b)_{p^{s-1}}; order-p terms drop out.
BrauerClass multiply_by_p(const BrauerClass& A);

struct LocalSymbol {
  LocalElem a, b;
  int s = 1;
};

struct LocalSymbolSum {
  LocalFieldPtr field;
  std::vector<LocalSymbol> terms;
  std::optional<Corestriction> cores;
  std::string str() const;
};

// Point coordinates live over pt_field; embed maps the class coefficients there when the two differ.
LocalSymbolSum specialize(const BrauerClass& A, const std::vector<LocalElem>& pt,
                          const LocalPoly::CoeffMap& embed = nullptr);

constexpr long long kDefaultOracleBudget = 1LL << 22;

// Exact quadratic Hilbert symbol for p = 2 by a search for a primitive zero of z^2 - a x^2 - b y^2.
InvValue hilbert2(const LocalElem& a, const LocalElem& b, long long budget = kDefaultOracleBudget);

// True iff (a, b)_p is trivial, i.e. b is a norm from k'(a^{1/p}).
bool norm_triviality(const LocalElem& a, const LocalElem& b, long long budget = kDefaultOracleBudget);

// inv of (a, b)_{p^s} from the Steinberg-pairing solver; exact when a normalising reference exists.
InvValue symbol_invariant(const LocalElem& a, const LocalElem& b, int s, long long budget = kDefaultOracleBudget);

// Unit u with k'(u^{1/p^s}) unramified of degree p^s and inv (u, pi)_{p^s} = 1/p^s by convention.
// Order p uses 1 + (zeta_p - 1)^p [c] with Tr(c) = 1; higher orders use y^{p^s} for a Lagrange
// resolvent y in the unramified extension of degree p^s (needs f p^s <= 4).
LocalElem unramified_reference(const LocalFieldPtr& K, int s);
LocalElem hilbert90_reference(const LocalFieldPtr& K, int s);

InvValue invariant(const LocalSymbolSum& S, long long budget = kDefaultOracleBudget);
LocalSymbolSum class_difference(const LocalSymbolSum& S1, const LocalSymbolSum& S2);

}  // namespace swanlab
