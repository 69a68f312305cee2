#pragma once

#include <optional>
#include <vector>

#include "colorbal/model.hpp"

namespace colorbal {

// Vertex of {lambda in the coefficient polytope : V lambda = 0} together
// with its fractional structure.
struct ReductionCore {
  Coefficients alpha;
  IndexPartition partition;        // F (fractional) and L
  std::vector<int> free_families;  // families with a fractional coordinate
  int k = 0;                       // |free_families|
};

// Tolerances of the vertex finder.
inline constexpr double kFeasibilityTol = 1e-7;   // on ||V lambda||_inf
inline constexpr double kPhase1ObjectiveTol = 1e-9;
inline constexpr double kResidualTol = 1e-8;      // core invariant on ||V alpha||_inf

// Basic feasible solution of {V lambda = 0, per-family sums 1, lambda >= 0},
// i.e. a vertex of the zero-sum polytope. A supplied witness (a feasible
// point) is verified and pushed to a vertex along kernel directions instead
// of running phase-1 from scratch.
//
// Throws InfeasibleError when no feasible point exists and
// NumericallyDegenerateError when pivoting stalls.
Coefficients find_zero_vertex(const Instance& inst,
                              const std::optional<Coefficients>& witness = {});

// Classify the coordinates and families of a vertex. Throws NotAVertexError
// when the vertex invariants (free families <= d, fractional count <= k + d)
// fail.
ReductionCore extract_core(const Instance& inst, const Coefficients& alpha);

}  // namespace colorbal
