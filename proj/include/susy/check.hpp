#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace susy::cli {

struct CriterionResult {
  std::string id;
  std::string description;
  bool passed;
  std::string detail;
};

/// Runs every acceptance criterion at its pinned tolerance. `progress`, when
/// given, receives one line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream* progress = nullptr);

std::string format_result(const CriterionResult& r);

}  // namespace susy::cli
