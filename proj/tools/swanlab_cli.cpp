#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "swanlab/disc_lab.hpp"
#include "swanlab/errors.hpp"
#include "swanlab/swan.hpp"
#include "swanlab/verify.hpp"

using namespace swanlab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitUndecided = 3;

struct Config {
  std::string field = "Q2";
  int precision = 0;  // p-adic digits carried; 0 keeps the field default
  uint64_t seed = 1;
  int jobs = 1;
  long long budget = kDefaultOracleBudget;
  long long enum_budget = 1 << 16;
  int m = 0;  // variable count; 0 infers it from the inputs
  std::string out;  // json | csv | text; empty picks text for verify and json otherwise
  std::string report;  // output path; empty writes to stdout
};

struct ClassInput {
  std::string cls;
  std::string shape;
  std::string x = "x1", y = "x2";
  std::vector<int> betas;
  std::string beta;
  int n = 0;
  int t = 0;
};

// A class together with its refined Swan conductor.
struct ResolvedClass {
  BrauerClass A;
  RefinedSwan rsw;
  int t = 0;
  bool rsw_upper_bound = false;
  std::string source;
};

int exit_code_for(const Error& e) {
  switch (e.errc()) {
    case Errc::parse_error:
    case Errc::invalid_argument:
    case Errc::unknown_suite:
    case Errc::unsupported_shape:
      return kExitUsage;
    case Errc::undecided:
    case Errc::precision_exhausted:
    case Errc::budget_exceeded:
      return kExitUndecided;
    default:
      return kExitFail;
  }
}

int infer_m(const Config& c, std::initializer_list<std::string> texts) {
  if (c.m > 0) return c.m;
  static const std::regex var("[xu]([0-9]+)");
  int m = 1;
  for (const auto& t : texts)
    for (auto it = std::sregex_iterator(t.begin(), t.end(), var); it != std::sregex_iterator(); ++it)
      m = std::max(m, std::stoi((*it)[1]));
  return m;
}

LocalFieldPtr field_of(const Config& c) {
  auto F = LocalField::parse(c.field);
  if (c.precision < 0) throw Error(Errc::invalid_argument, "precision must be non-negative");
  if (c.precision == 0) return F;
  return LocalField::make(F->p(), F->f(), F->eisenstein(), F->tag(), c.precision);
}

json config_json(const Config& c, const LocalFieldPtr& F, int m) {
  return {{"field", c.field},
          {"field_text", F ? F->text() : ""},
          {"precision_digits", F ? F->cap() : c.precision},
          {"seed", c.seed},
          {"jobs", c.jobs},
          {"budget", c.budget},
          {"enum_budget", c.enum_budget},
          {"m", m},
          {"out", c.out}};
}

LabOptions lab_options(const Config& c) {
  LabOptions o;
  o.jobs = c.jobs;
  o.seed = c.seed;
  o.oracle_budget = c.budget;
  o.enum_budget = c.enum_budget;
  return o;
}

ClassShape::Kind shape_kind(const std::string& s) {
  if (s == "unit-unit") return ClassShape::Kind::unit_unit;
  if (s == "unit-pi") return ClassShape::Kind::unit_pi;
  if (s == "x-pi") return ClassShape::Kind::x_pi;
  if (s == "rsw-exist") return ClassShape::Kind::rsw_exist;
  throw Error(Errc::parse_error, "unknown shape '" + s + "' (unit-unit, unit-pi, x-pi, rsw-exist)");
}

ClassShape build_shape(const ClassInput& s, const LocalFieldPtr& k, int m) {
  ClassShape sh;
  sh.kind = shape_kind(s.shape);
  sh.k = k;
  sh.x = RatFunc::parse(s.x, k->residue(), m);
  sh.y = RatFunc::parse(s.y, k->residue(), m);
  sh.n = s.n;
  sh.t = s.t;
  sh.betas = s.betas;
  if (sh.kind == ClassShape::Kind::x_pi && sh.n == 0) sh.n = k->eprime();
  if (sh.kind == ClassShape::Kind::rsw_exist && sh.betas.empty())
    throw Error(Errc::invalid_argument, "rsw-exist needs --betas");
  return sh;
}

int input_m(const Config& c, const ClassInput& s) {
  if (!s.betas.empty() && c.m == 0) return (int)s.betas.size();
  return infer_m(c, {s.cls, s.x, s.shape.empty() ? std::string() : s.y, s.beta});
}

ResolvedClass resolve(const ClassInput& s, const LocalFieldPtr& k, int m) {
  const int sources = !s.cls.empty() + !s.shape.empty() + !s.beta.empty();
  if (sources != 1) throw Error(Errc::invalid_argument, "give exactly one of --class, --shape, --beta");
  ResolvedClass R;
  if (!s.beta.empty()) {
    if (s.n <= 0) throw Error(Errc::invalid_argument, "--beta needs --n");
    auto cc = construct_with_rsw(Form1::parse(s.beta, k->residue(), m), s.n, s.t, k);
    R.A = cc.cls;
    R.rsw = cc.rsw;
    R.t = s.t;
    R.source = "construct";
  } else if (!s.shape.empty()) {
    auto sh = build_shape(s, k, m);
    R.rsw = rsw_of_symbol(sh);
    R.A = symbol_of_shape(sh);
    R.t = sh.t;
    R.source = "shape";
  } else {
    R.A = BrauerClass::parse(s.cls, k, m);
    auto cr = rsw_of_class(R.A);
    R.rsw = cr.rsw;
    R.rsw_upper_bound = cr.possible_cancellation;
    for (const auto& term : R.A.terms) R.t = std::max(R.t, term.s - 1);
    R.source = "class";
  }
  return R;
}

void add_class_options(CLI::App* sub, ClassInput& s) {
  sub->add_option("--class", s.cls, "symbol sum \"a, b, order; ...\" in u1..u4 and pi");
  sub->add_option("--shape", s.shape, "unit-unit | unit-pi | x-pi | rsw-exist");
  sub->add_option("--x", s.x, "residue function x of the shape");
  sub->add_option("--y", s.y, "residue function y of the unit-unit shape");
  sub->add_option("--betas", s.betas, "constant coefficients of beta for rsw-exist")->delimiter(',');
  sub->add_option("--beta", s.beta, "construct a class with rsw [0, beta] (constant coefficients)");
  sub->add_option("--n", s.n, "level");
  sub->add_option("--t", s.t, "order p^(t+1)");
}

json class_json(const ResolvedClass& R) {
  json j = {{"source", R.source}, {"class", R.A.str()}, {"t", R.t}, {"rsw", to_json(R.rsw)}};
  if (R.rsw_upper_bound) j["rsw_level_upper_bound"] = true;
  return j;
}

Point center_or_default(const std::string& text, const PointField& pf, int m) {
  if (!text.empty()) return Point::parse(text, pf.K);
  Point P;
  for (int i = 0; i < m; ++i) P.x.push_back(LocalElem::one(pf.K));
  return P;
}

PointField point_field(const LocalFieldPtr& k, int ext) {
  if (ext < 1) throw Error(Errc::invalid_argument, "--ext must be at least 1");
  return ext == 1 ? PointField::of(k) : PointField::unramified(k, ext);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

// Flat key,value rows for reports without a natural table.
std::string kv_csv(const json& j, const std::string& prefix = "") {
  std::string o;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix + it.key();
    if (it->is_object())
      o += kv_csv(*it, key + ".");
    else
      o += csv_escape(key) + "," + csv_escape(it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
  }
  return o;
}

struct Report {
  std::string command;
  json config;
  json result;
  std::string table;  // CSV body when the command has one
};

void emit(const Config& c, const Report& r) {
  std::ostringstream os;
  if (c.out == "csv") {
    os << "# command=" << r.command << "\n";
    for (auto it = r.config.begin(); it != r.config.end(); ++it)
      os << "# " << it.key() << "=" << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    os << (r.table.empty() ? "key,value\n" + kv_csv(r.result) : r.table);
  } else {
    json j = {{"command", r.command}, {"config", r.config}, {"result", r.result}};
    os << j.dump(2) << "\n";
  }
  if (c.report.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(c.report);
    if (!f) throw Error(Errc::invalid_argument, "cannot write " + c.report);
    f << os.str();
  }
}

std::string quad_csv(const QuadReport& Q) {
  std::ostringstream os;
  os << "row,tangent,inv,predicted\n";
  auto vec = [](const TangentVec& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s + ")";
  };
  for (size_t r = 0; r < Q.rows.size(); ++r)
    for (const auto& e : Q.rows[r])
      os << vec(Q.row_tangents[r]) << "," << vec(e.v) << "," << (e.diff.inv ? e.diff.inv->value.str() : e.diff.error)
         << "," << (e.predicted ? e.predicted->str() : "") << "\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refined Swan conductors of p-adic Brauer classes and disc-sweep experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.set_config("--config", "", "flat key=value file; command-line flags override it");
  app.add_option("--field", cfg.field, "local field: alias (Q2, Q2i, Q3z3, ...), p/alias or p^f/eisenstein")
      ->capture_default_str();
  app.add_option("--precision", cfg.precision, "p-adic digits carried (0 keeps the field default)")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for sampled centres and property suites")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "worker threads for disc sweeps")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--budget", cfg.budget, "oracle budget per invariant")->check(CLI::NonNegativeNumber)->capture_default_str();
  app.add_option("--enum-budget", cfg.enum_budget, "largest disc enumeration")->capture_default_str();
  app.add_option("--m", cfg.m, "number of variables (default: inferred)")->capture_default_str();
  app.add_option("--out", cfg.out, "report format: json, csv, text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--report", cfg.report, "write the report to this file");

  ClassInput input;
  std::string center, predict, kummer;
  int radius = 0, ext = 1, s_mult = 1, samples = 5, depth = 3, n_max = 0, ext_max = 2;
  std::optional<int> expect;
  std::string suite;

  auto* c_rsw = app.add_subcommand("rsw", "refined Swan conductor of a shape or class");
  add_class_options(c_rsw, input);
  auto* c_construct = app.add_subcommand("construct", "class with prescribed rsw [0, beta] at level n");
  add_class_options(c_construct, input);
  auto* c_sweep = app.add_subcommand("sweep", "evaluation differences on a disc against the linear prediction");
  add_class_options(c_sweep, input);
  auto* c_quad = app.add_subcommand("quadsweep", "quadratic sweep for a class with beta = 0");
  add_class_options(c_quad, input);
  auto* c_probe = app.add_subcommand("probe", "search for distinct evaluation values");
  add_class_options(c_probe, input);
  auto* c_filt = app.add_subcommand("filtration", "empirical evaluation filtration level");
  add_class_options(c_filt, input);
  auto* c_cond = app.add_subcommand("conductor", "Kummer conductor or Swan level of a class");
  add_class_options(c_cond, input);
  auto* c_verify = app.add_subcommand("verify", "property suites: forms, swan, brauer, discs, all");

  for (auto* sub : {c_sweep, c_quad, c_probe}) {
    sub->add_option("--center", center, "centre point, e.g. \"(1, 2+pi)\" (default all ones)");
    sub->add_option("--ext", ext, "residue degree of the point field over the class field");
  }
  c_sweep->add_option("--radius", radius, "disc radius (default: the rsw level)");
  c_sweep->add_option("--predict", predict, "override the predicted one-form");
  c_quad->add_option("--s", s_mult, "shell multiplicity s");
  c_filt->add_option("--samples", samples, "centres per point field");
  c_filt->add_option("--ext-max", ext_max, "sample point fields of residue degree 1..ext-max");
  c_filt->add_option("--depth", depth, "centre coordinates are drawn mod pi^depth");
  c_filt->add_option("--n-max", n_max, "largest radius examined (default: rsw level + 2)");
  c_filt->add_option("--expect", expect, "expected level; the verdict compares against it");
  c_cond->add_option("--kummer", kummer, "Kummer generator a for K(a^(1/p))");
  c_verify->add_option("suite", suite, "suite name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (cfg.out.empty()) cfg.out = c_verify->parsed() ? "text" : "json";
  if (cfg.out == "text" && !c_verify->parsed()) cfg.out = "json";

  try {
    if (c_verify->parsed()) {
      VerifyOptions vo;
      vo.seed = cfg.seed;
      vo.jobs = cfg.jobs;
      vo.oracle_budget = cfg.budget;
      auto reps = run_suites(suite, vo);
      bool ok = true;
      Report r{"verify", config_json(cfg, nullptr, 0), json::array(), ""};
      r.config.erase("field_text");
      std::string text = "# command=verify suite=" + suite + " seed=" + std::to_string(cfg.seed) + "\n";
      std::string table = "suite,check,passed,total\n";
      for (const auto& s : reps) {
        ok = ok && s.ok();
        r.result.push_back(s.to_json());
        text += s.text();
        for (const auto& c : s.checks)
          table += s.suite + "," + c.name + "," + std::to_string(c.passed) + "," + std::to_string(c.total) + "\n";
      }
      if (cfg.out == "json") {
        r.result = {{"suite", suite}, {"ok", ok}, {"suites", r.result}};
        emit(cfg, r);
      } else if (cfg.out == "csv") {
        r.table = table;
        emit(cfg, r);
      } else {
        std::cout << text << (ok ? "verify: all checks passed\n" : "verify: failures present\n");
      }
      return ok ? kExitOk : kExitFail;
    }

    auto k = field_of(cfg);
    const int m = input_m(cfg, input);
    Report r;
    int rc = kExitOk;

    if (c_rsw->parsed() || c_construct->parsed()) {
      if (c_construct->parsed() && input.beta.empty()) throw Error(Errc::invalid_argument, "construct needs --beta");
      auto R = resolve(input, k, m);
      r = {c_rsw->parsed() ? "rsw" : "construct", config_json(cfg, k, m), class_json(R), ""};
    } else if (c_sweep->parsed()) {
      auto R = resolve(input, k, m);
      auto pf = point_field(k, ext);
      auto P = center_or_default(center, pf, m);
      auto T = sweep(R.A, P, radius > 0 ? radius : R.rsw.n, pf, lab_options(cfg));
      Form1 beta = predict.empty() ? R.rsw.beta : Form1::parse(predict, k->residue(), m);
      predict_linear(T, beta);
      r = {"sweep", config_json(cfg, k, m), {{"class", class_json(R)}, {"table", T.to_json()}}, T.to_csv()};
      rc = verdict_exit_code(T.verdict);
    } else if (c_quad->parsed()) {
      auto R = resolve(input, k, m);
      auto pf = point_field(k, ext);
      auto Q = quadratic_sweep(R.A, R.rsw, center_or_default(center, pf, m), s_mult, R.t, pf, lab_options(cfg));
      r = {"quadsweep", config_json(cfg, k, m), {{"class", class_json(R)}, {"report", Q.to_json()}}, quad_csv(Q)};
      rc = verdict_exit_code(Q.verdict);
    } else if (c_probe->parsed()) {
      auto R = resolve(input, k, m);
      auto pf = point_field(k, ext);
      auto pr = surjectivity_probe(R.A, R.rsw, R.t, center_or_default(center, pf, m), pf, lab_options(cfg));
      std::string table = "point,value\n";
      for (const auto& [pt, v] : pr.values) table += csv_escape(pt.str()) + "," + v + "\n";
      r = {"probe", config_json(cfg, k, m), {{"class", class_json(R)}, {"report", pr.to_json()}}, table};
      rc = verdict_exit_code(pr.verdict);
    } else if (c_filt->parsed()) {
      auto R = resolve(input, k, m);
      std::vector<SampleCenter> S;
      for (int d = 1; d <= ext_max; ++d) {
        auto pf = point_field(k, d);
        for (int i = 0; i < samples; ++i)
          S.push_back({random_center(pf, m, depth, cfg.seed * 7919 + 101 * d + i), pf});
      }
      auto fr = empirical_filtration(R.A, S, n_max > 0 ? n_max : R.rsw.n + 2, lab_options(cfg));
      Verdict v = fr.undecided ? Verdict::undecided
                  : !expect || fr.estimate == *expect ? Verdict::match
                                                      : Verdict::fail;
      json res = {{"class", class_json(R)}, {"report", fr.to_json()}, {"verdict", verdict_name(v)}};
      if (expect) res["expected"] = *expect;
      std::string table = "radius,constant\n";
      for (auto [rad, cst] : fr.constancy) table += std::to_string(rad) + "," + (cst ? "true" : "false") + "\n";
      r = {"filtration", config_json(cfg, k, m), res, table};
      rc = verdict_exit_code(v);
    } else if (c_cond->parsed()) {
      json res;
      if (!kummer.empty()) {
        auto a = LocalFrac::parse(kummer, k, infer_m(cfg, {kummer}));
        res = {{"kummer", kummer}, {"conductor", kummer_conductor(a)}};
      } else {
        auto R = resolve(input, k, m);
        res = {{"class", class_json(R)}, {"swan_level", R.rsw.n}};
        if (R.rsw_upper_bound) res["swan_level_upper_bound"] = true;
      }
      r = {"conductor", config_json(cfg, k, m), res, ""};
    }
    emit(cfg, r);
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
