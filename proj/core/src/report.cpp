#include "gzrep/report.hpp"

#include <algorithm>
#include <cmath>

namespace gzrep {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

void SuiteReport::record(const std::string& name, double error, double threshold) {
  for (auto& c : checks) {
    if (c.name == name) {
      if (!(error <= c.max_error)) c.max_error = error;  // NaN propagates as failure
      c.pass = c.max_error < c.threshold;
      return;
    }
  }
  checks.push_back({name, error, threshold, error < threshold, {}});
}

void SuiteReport::merge(const SuiteReport& other) {
  for (CheckResult c : other.checks) {
    if (!other.suite.empty()) c.name = other.suite + "/" + c.name;
    checks.push_back(std::move(c));
  }
}

const CheckResult* SuiteReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace gzrep
