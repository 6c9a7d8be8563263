#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tailent {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;
  double seconds = 0.0;
};

// "combinatorics", "qpoly", "reparam", "sft", "tent", "quadratic", "power",
// "rates", "thickness", "snake", "determinism", "quick", "full", or a
// criterion number 1..11.
std::vector<int> verify_selection(const std::string& tag);
const std::vector<std::string>& verify_tags();

CriterionResult run_criterion(int id);

// Prints one line per criterion as it finishes.
std::vector<CriterionResult> verify_all(const std::string& tag, std::ostream& os);

std::string format_result(const CriterionResult& r);

}  // namespace tailent
