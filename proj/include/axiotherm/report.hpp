#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace axiotherm {

/// Outcome of one named check: the worst observed residual against the
/// tolerance it was judged by, and how many cases contributed.
struct CheckEntry {
  std::string check_id;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  int cases_run = 0;
  std::string detail;
};

/// Ordered collection of check results. Entries are normalized by check_id so
/// identical inputs serialize to identical bytes regardless of execution order.
struct VerificationReport {
  std::vector<CheckEntry> entries;

  void add(CheckEntry e) { entries.push_back(std::move(e)); }

  void normalize() {
    std::sort(entries.begin(), entries.end(),
              [](const CheckEntry& a, const CheckEntry& b) {
                return a.check_id < b.check_id;
              });
  }

  [[nodiscard]] bool overall_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const CheckEntry& e) { return e.passed; });
  }

  [[nodiscard]] const CheckEntry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.check_id == id) return &e;
    return nullptr;
  }
};

}  // namespace axiotherm
