#pragma once

#include "colorbal/model.hpp"

namespace colorbal {

struct OracleResult {
  Selection best_selection;  // lexicographically first argmin
  double best_value = 0.0;
  long long enumerated_count = 0;
};

inline constexpr long long kOracleBudget = 10'000'000;

// Exact minimum of ||sum of selected vectors - shift|| over the whole
// selection product space. Throws BudgetExceededError when the space
// exceeds `budget`.
OracleResult brute_force_min(const Instance& inst, const Eigen::VectorXd& shift,
                             NormKind norm, long long budget = kOracleBudget);

OracleResult brute_force_min(const Instance& inst,
                             long long budget = kOracleBudget);

}  // namespace colorbal
