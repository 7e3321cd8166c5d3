#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solvflow/catalog.hpp"

namespace solvflow {

struct VerifyOptions {
  std::uint64_t seed = 20240917;
  std::optional<ModelId> model;  // restrict to one model's checks
};

// One compared claim: expected value, computed value and the tolerance used.
struct Check {
  std::string claim;
  std::string model;  // empty when model independent
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool informational = false;  // reported but does not gate the criterion
  std::string note;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  bool applicable = true;
  double seconds = 0.0;
  std::vector<Check> checks;

  // First failing gated check, or a short summary.
  std::string summary() const;
};

inline constexpr int kCriterionCount = 10;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const VerifyOptions& opt = {});
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids, const VerifyOptions& opt = {});

std::string verification_report_json(const std::vector<CriterionResult>& results, const VerifyOptions& opt);

}  // namespace solvflow
