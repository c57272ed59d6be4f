#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace dessin {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct Criterion {
  int id = 0;
  std::string name;
  std::function<bool(std::string& detail)> check;
};

/// The acceptance criteria, in order.
const std::vector<Criterion>& acceptance_table();

/// Runs one criterion; exceptions count as failures with the message as detail.
CriterionResult run_criterion(const Criterion& c);

/// Runs every criterion (or only `only` when nonzero), printing one line per
/// criterion to `out` as it completes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, int only = 0);

/// "[PASS] 6  name: detail (0.02 s)"
std::string format_result(const CriterionResult& r);

}  // namespace dessin
