#include "colorbal/oracle.hpp"

#include <sstream>

namespace colorbal {

OracleResult brute_force_min(const Instance& inst, const Eigen::VectorXd& shift,
                             NormKind norm, long long budget) {
  const int n = inst.families();
  long long space = 1;
  for (int f = 0; f < n; ++f) {
    space *= inst.family_size(f);
    if (space > budget) {
      std::ostringstream os;
      os << "selection space exceeds the budget of " << budget;
      throw BudgetExceededError(os.str());
    }
  }

  // Odometer enumeration in lexicographic order with incremental sums:
  // advancing a digit swaps one column in and one out.
  std::vector<int> choice(n, 0);
  Eigen::VectorXd sum = -shift;
  for (int f = 0; f < n; ++f) sum += inst.column(inst.column_index(f, 0));

  OracleResult result;
  result.best_selection.choices = choice;
  result.best_value = vector_norm(sum, norm);
  result.enumerated_count = 1;

  while (true) {
    int f = n - 1;
    while (f >= 0 && choice[f] == inst.family_size(f) - 1) {
      sum += inst.column(inst.column_index(f, 0)) -
             inst.column(inst.column_index(f, choice[f]));
      choice[f] = 0;
      --f;
    }
    if (f < 0) break;
    sum += inst.column(inst.column_index(f, choice[f] + 1)) -
           inst.column(inst.column_index(f, choice[f]));
    ++choice[f];

    ++result.enumerated_count;
    double value = vector_norm(sum, norm);
    if (value < result.best_value) {
      result.best_value = value;
      result.best_selection.choices = choice;
    }
  }
  return result;
}

OracleResult brute_force_min(const Instance& inst, long long budget) {
  return brute_force_min(inst, Eigen::VectorXd::Zero(inst.dimension()),
                         inst.norm_kind(), budget);
}

}  // namespace colorbal
