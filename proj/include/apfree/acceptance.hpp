#pragma once

// The end-to-end verification suite shared by `apfree verify-all` and the
// acceptance test binary.

#include <cstdint>
#include <string>
#include <vector>

namespace apfree {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  bool gating = true;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  bool stretch = false;  // also run the non-gating large P window
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // criterion ids to run; empty runs all
};

int criterion_count();
std::string criterion_name(int id);

/// Runs one criterion; never throws (errors become a failed result).
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

/// Results in id order, stretch last.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3  name  (1.23 s)  detail"
std::string format_result(const CriterionResult& r);

}  // namespace apfree
