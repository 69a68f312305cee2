#pragma once

#include <vector>

#include "colorbal/linalg.hpp"
#include "colorbal/model.hpp"

namespace colorbal {

// Record of one derandomized rounding run.
struct RoundingTrace {
  std::vector<int> chosen;              // member index per family
  std::vector<double> prefix_expected;  // E[squared error] after fixing 0..j families
  double final_sq_error = 0.0;
};

// One member per family, drawn independently with the family's coefficient
// distribution.
Selection sample_selection(const Instance& inst, const Coefficients& lambda,
                           Rng& rng);

// Exact E[ ||s + sum of remaining random members - U lambda||_2^2 ] when the
// first `fixed` families are pinned to `prefix`. With no randomness left this
// is the squared error of the full selection.
double conditional_sq_error(const Instance& inst, const Coefficients& lambda,
                            std::span<const int> prefix);

// Fix families in index order, each time choosing the member that minimizes
// the conditional expected squared error (ties to the lowest member index).
// The result always satisfies ||U lambda - U mu||_2^2 <= number of families.
std::pair<Selection, RoundingTrace> derandomized_select(
    const Instance& inst, const Coefficients& lambda);

}  // namespace colorbal
