#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gzrep {

struct CheckResult {
  std::string name;
  double max_error = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

/// Outcome of a verification suite: one entry per relation family.
struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  /// Adds (or tightens) the check `name` with a new error sample.
  void record(const std::string& name, double error, double threshold);
  void add(CheckResult c) { checks.push_back(std::move(c)); }
  /// Appends the checks of `other`, named "<other.suite>/<name>".
  void merge(const SuiteReport& other);
  const CheckResult* find(const std::string& name) const;
};

}  // namespace gzrep
