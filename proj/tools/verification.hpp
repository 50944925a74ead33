#pragma once

// The acceptance suite: nine self-contained checks, each comparing the
// engines against an independent oracle.  Shared by `classicality verify`
// and the acceptance test binary.

#include <functional>
#include <string>
#include <vector>

namespace classicality::verification {

enum class Level { Fast, Full };

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

CheckResult check_qubit(Level level);
CheckResult check_qutrit_regular(Level level);
CheckResult check_qutrit_degenerate(Level level);
CheckResult check_quatrit_a_type(Level level);
CheckResult check_quatrit_b_type(Level level);
CheckResult check_dirichlet(Level level);
CheckResult check_permanent(Level level);
CheckResult check_hierarchy(Level level);
CheckResult check_vertex_formulas(Level level);

/// Runs every check in order; on_result (if set) sees each as it finishes.
std::vector<CheckResult> run_all(Level level, const std::function<void(const CheckResult&)>& on_result = {});

/// "PASS  1  qubit exact value  (0.41 ms)  detail"
std::string format(const CheckResult& r);

}  // namespace classicality::verification
