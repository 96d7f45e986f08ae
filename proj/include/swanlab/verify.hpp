#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace swanlab {

struct CheckResult {
  std::string name;
  long long passed = 0;
  long long total = 0;
  std::string first_failure;  // description of the first failing instance
  bool ok() const { return passed == total; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool ok() const;
  long long passed() const;
  long long total() const;
  nlohmann::json to_json() const;
  std::string text() const;
};

struct VerifyOptions {
  uint64_t seed = 1;
  int jobs = 1;
  long long oracle_budget = 0;  // 0 selects the library default
};

// Suites: forms, swan, brauer, discs; "all" runs every suite in that order. Throws unknown-suite.
std::vector<SuiteReport> run_suites(const std::string& name, const VerifyOptions& opt);
const std::vector<std::string>& suite_names();

}  // namespace swanlab
