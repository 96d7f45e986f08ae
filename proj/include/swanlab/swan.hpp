#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "swanlab/brauer.hpp"
#include "swanlab/forms.hpp"

namespace swanlab {

// (n, [alpha, beta]_{pi, n}). With mod_log set, beta is a representative modulo span{du_i}.
struct RefinedSwan {
  int n = 0;
  Form2 alpha;
  Form1 beta;
  std::string pi_tag;
  bool mod_log = false;

  bool is_zero() const { return alpha.is_zero() && beta.is_zero(); }
  // Equality of levels and forms; beta is compared modulo constants when either side is mod_log.
  bool same(const RefinedSwan& o) const;
};

nlohmann::json to_json(const RefinedSwan& r);

// Checks d(alpha) = 0 and d(beta) = n alpha; throws hypothesis-violated. Every produced value goes through it.
void check_dbna(const RefinedSwan& r);
long long dbna_check_count();

// Reduction of pi^{e'} / (zeta_p - 1)^p.
int cbar(const LocalFieldPtr& k);
// Reduction of p / pi^e.
int ubar(const LocalFieldPtr& k);

struct ClassShape {
  enum class Kind { unit_unit, unit_pi, x_pi, rsw_exist };
  Kind kind = Kind::unit_unit;
  LocalFieldPtr k;
  RatFunc x, y;            // residue functions, lifted by Teichmuller
  int n = 0;
  std::vector<int> betas;  // rsw_exist: constant coefficients of beta
  int t = 0;
};

// {1 + x pi^{e'-n}, y}: [cbar d(x dlog y), n cbar x dlog y];  {1 + x pi^{e'-n}, pi}: [0, cbar dx];
// {x, pi} at n = e': [0, cbar dlog x].
RefinedSwan rsw_of_symbol(const ClassShape& shape);
BrauerClass symbol_of_shape(const ClassShape& shape);

struct ClassRsw {
  RefinedSwan rsw;
  // The leading terms cancelled, so rsw.n is only an upper bound.
  bool possible_cancellation = false;
};
// Sum of the shape formulas at the maximal level over the terms of an order-p class.
ClassRsw rsw_of_class(const BrauerClass& A);

struct ConstructedClass {
  BrauerClass cls;
  RefinedSwan rsw;  // [0, sum b_i du_i] at level n
};
// Class of order dividing p^{t+1} with rsw_n = [0, beta]; beta must have constant coefficients.
ConstructedClass construct_with_rsw(const Form1& beta, int n, int t, const LocalFieldPtr& k);

// Restriction to an extension of ramification e_rel with abar = reduction of pi / pi'^{e_rel}.
RefinedSwan basechange_rsw(const RefinedSwan& r, int e_rel, const RatFunc& abar, const std::string& new_tag = "");

struct PMultiple {
  bool bound_only = false;
  int level = 0;  // exact level, or the bound when bound_only
  RefinedSwan rsw;
};
PMultiple multiply_by_p_rsw(const RefinedSwan& r, const LocalFieldPtr& k);

struct DescentResult {
  enum class Regime { downby1, downby2, endgame, endgame_quadratic };
  Regime regime = Regime::downby1;
  RefinedSwan rsw;          // at E in chart coordinates u_i = x_i^{(1)} / pi^{(1)} centred at the strict transform
  bool level_exact = false; // otherwise rsw.n is an upper bound
  bool alpha_known = true;
  int s = 0;                // downby2 multiplicity used
  // Endgames: the Artin-Schreier element g (polynomial in u) and its rsw on E \ Z in the chart of X_1
  // (t_0 = X_0 / X_1 in slot 0 is unused; t_j = X_j / X_1 in slot j - 1).
  Poly g;
  Form1 end_alpha;
  RatFunc end_beta;
};
// s_hint forces the downby2 multiplicity; otherwise it is recognised from beta = s Q(alpha).
DescentResult blowup_descend(const RefinedSwan& r, const std::vector<int>& P0, std::optional<int> s_hint = std::nullopt);

// Q(alpha) = sum_{i>j} a_ij (x_j dx_i - x_i dx_j) with coordinates centred at P0.
Form1 quadratic_companion(const Form2& alpha, const std::vector<int>& P0);

// Conductor of K(a^{1/p})/K for a Kummer generator a over the big local field.
int kummer_conductor(const LocalFrac& a);

// Membership in the modified filtration at level n given rsw known at level r.n.
bool in_modified_fil(const RefinedSwan& r, int n);

}  // namespace swanlab
