#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "swanlab/brauer.hpp"
#include "swanlab/swan.hpp"

namespace swanlab {

// Field of definition of sample points: the class field itself or an unramified extension of it.
struct PointField {
  LocalFieldPtr base;
  LocalFieldPtr K;
  LocalPoly::CoeffMap embed;  // base -> K; empty when K is the base
  int degree = 1;

  static PointField of(const LocalFieldPtr& k);
  static PointField unramified(const LocalFieldPtr& k, int d);
  // Residue field map F_base -> F_K.
  int residue_map(int code) const;
};

struct Point {
  std::vector<LocalElem> x;

  const LocalFieldPtr& field() const { return x.at(0).field(); }
  int dim() const { return (int)x.size(); }
  // "(1, 2 + pi)" with entries in the grammar of LocalFrac constants.
  static Point parse(const std::string& s, const LocalFieldPtr& K);
  std::vector<int> reduction() const;
  std::string str() const;
};

struct Disc {
  Point center;
  int radius = 1;
  bool contains(const Point& Q) const;
};

// Reduction of (Q - P) / pi^r componentwise; throws not-in-disc.
TangentVec tangent_vector(const Point& P, const Point& Q, int r);
// All v in F_q^m, coordinate 0 varying fastest.
std::vector<TangentVec> all_tangents(const FqPtr& F, int m, long long budget);
// P + pi^r [v] for every tangent vector v, in the order of all_tangents.
std::vector<Point> disc_representatives(const Point& P, int r, long long budget);

struct LabOptions {
  int jobs = 1;
  long long enum_budget = 1 << 16;
  long long oracle_budget = kDefaultOracleBudget;
  uint64_t seed = 1;
};

// Evaluation of a class at a point with errors captured.
struct Evaluation {
  std::optional<LocalSymbolSum> sym;
  std::optional<InvValue> inv;
  std::string error;  // error code when sym or inv is missing
};
Evaluation evaluate(const BrauerClass& A, const Point& Q, const PointField& pf, long long budget);
// inv A(Q) - inv A(P); falls back to the invariant of the class difference when a value is unnormalised.
struct DiffValue {
  std::optional<InvValue> inv;
  std::string error;
};
DiffValue difference(const Evaluation& Q, const Evaluation& P, long long budget);

enum class Verdict { match, kernel_match, fail, undecided };
std::string verdict_name(Verdict v);
int verdict_exit_code(Verdict v);

struct SweepEntry {
  TangentVec v;
  Point Q;
  DiffValue diff;
  std::optional<QZ> predicted;
};

struct SweepTable {
  PointField pf;
  std::string cls;
  Point center;
  int radius = 1;
  std::vector<SweepEntry> entries;
  std::string prediction;  // description of the predicted form, empty for none
  Verdict verdict = Verdict::undecided;

  bool all_decided() const;
  bool constant() const;  // every decided entry trivial
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

SweepTable sweep(const BrauerClass& A, const Point& P, int r, const PointField& pf, const LabOptions& opt);

// (1/p) Tr beta_{P0}(v) for every entry; the forms live over the base residue field.
void predict_linear(SweepTable& T, const Form1& beta);
// MATCH when every entry equals its prediction, KERNEL-MATCH when the trivial entries are exactly the
// predicted kernel, FAIL otherwise; UNDECIDED when an entry has no value.
Verdict judge(const SweepTable& T);

struct QuadReport {
  PointField pf;
  std::string cls;
  Point center;
  int n = 0, s = 1;
  std::optional<TangentVec> gamma;                  // fitted on B(P, n - 1)
  std::vector<TangentVec> row_tangents;             // t_s(P, Q), one per row
  std::vector<std::vector<SweepEntry>> rows;        // R in the shell of radius n - s around Q
  std::vector<std::vector<SweepEntry>> gamma_rows;  // R in the shell of radius n - 1 around Q (s > 1 only)
  Verdict verdict = Verdict::undecided;
  std::string detail;
  nlohmann::json to_json() const;
};
// rsw must be the certified rsw_n of A with beta = 0.
QuadReport quadratic_sweep(const BrauerClass& A, const RefinedSwan& rsw, const Point& P, int s, int t,
                           const PointField& pf, const LabOptions& opt);

struct ProbeReport {
  std::string part;  // "B1", "B3", "B4i", "B4ii"
  PointField pf;
  std::string cls;
  Point center;
  bool found = false;
  std::optional<Point> witness_center;
  int radius = 0;
  int target = 0;  // number of distinct values sought
  std::vector<std::pair<Point, std::string>> values;  // one point per distinct value
  Verdict verdict = Verdict::undecided;
  std::string detail;
  nlohmann::json to_json() const;
};
// t: the class has order p^{t+1}. Chooses the applicable part from rsw and t.
ProbeReport surjectivity_probe(const BrauerClass& A, const RefinedSwan& rsw, int t, const Point& P,
                               const PointField& pf, const LabOptions& opt);

struct SampleCenter {
  Point P;
  PointField pf;
};
struct FiltrationReport {
  int estimate = 0;
  int witness_radius = 0;  // largest radius with an observed non-constant sweep, 0 if none
  std::vector<std::pair<int, bool>> constancy;  // (radius, all sampled sweeps constant)
  bool undecided = false;
  nlohmann::json to_json() const;
};
FiltrationReport empirical_filtration(const BrauerClass& A, const std::vector<SampleCenter>& sample, int n_max,
                                      const LabOptions& opt);

// Seeded random integral centre over pf.K with coordinates mod pi^depth.
Point random_center(const PointField& pf, int m, int depth, uint64_t seed);

}  // namespace swanlab
