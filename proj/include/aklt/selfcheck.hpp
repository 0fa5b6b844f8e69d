#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "aklt/povm.hpp"
#include "aklt/weight.hpp"

namespace aklt {

enum class CheckStatus { pass, fail, skipped };
std::string_view to_string(CheckStatus status);

struct CheckItem {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct SelfcheckOptions {
  /// Virtual-qubit cap for the brute-force weight; 0 skips the weight check.
  int oracle_cap = kDefaultOracleCap;
  /// Fault-injection hook applied to every POVM set before the completeness check.
  std::function<void(PovmElementSet&)> povm_perturbation;
  /// Largest graph order for the exhaustive stabilizer comparison.
  int stabilizer_max_vertices = 5;
};

struct SelfcheckReport {
  std::vector<CheckItem> items;
  bool ok() const;
};

SelfcheckReport validate_install(const SelfcheckOptions& options = {});
void print_report(std::ostream& out, const SelfcheckReport& report);

}  // namespace aklt
