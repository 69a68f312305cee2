#pragma once

#include <stdexcept>
#include <string>

namespace colorbal {

// Process exit codes used by the CLI; library code throws, the CLI maps.
enum class ExitCode : int {
  Success = 0,
  Failure = 1,
  Infeasible = 2,
  RestartsExhausted = 3,
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No point of the coefficient polytope sums the families to zero: the
// hypothesis 0 in sum_i conv(V_i) does not hold for the given instance.
struct InfeasibleError : Error {
  using Error::Error;
};

// Pivoting stalled beyond the degeneracy budget.
struct NumericallyDegenerateError : Error {
  using Error::Error;
};

// A returned point fails the vertex invariants.
struct NotAVertexError : Error {
  using Error::Error;
};

// The random walk failed its post-conditions on every allowed attempt.
struct RestartsExhaustedError : Error {
  using Error::Error;
};

// A family has zero or several coefficients above the snapping threshold.
struct AmbiguousFamilyError : Error {
  using Error::Error;
};

// Enumeration size exceeds the configured budget.
struct BudgetExceededError : Error {
  using Error::Error;
};

// An operation was called outside its contract.
struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace colorbal
