#pragma once

#include <cstdint>
#include <ostream>
#include <utility>

#include "colorbal/linalg.hpp"
#include "colorbal/model.hpp"

namespace colorbal {

enum class WalkMode { PaperFaithful, Practical };

std::string to_string(WalkMode m);
WalkMode walk_mode_from_string(const std::string& s);

// Fully resolved parameters for one walk.
struct WalkConfig {
  double epsilon = 0.0;       // step scale
  double delta = 0.0;         // freeze threshold, in (0, 0.1)
  double potential = 8.0;     // K
  long long max_steps = 0;    // T = ceil(K / epsilon^2)
  int max_restarts = 200;
  WalkMode mode = WalkMode::Practical;
};

// Caller-facing knobs; epsilon and T are derived per round.
struct MaxnormOptions {
  WalkMode mode = WalkMode::Practical;
  double delta = 0.0;  // <= 0 selects the default snap threshold
  int max_restarts = 200;
  std::ostream* telemetry = nullptr;  // per-round JSON lines when set
};

struct RoundReport {
  int round = 0;
  int m = 0;
  double omega = 0.0;
  long long steps = 0;
  int restarts = 0;
  int frozen = 0;
};

struct WalkStats {
  int rounds = 0;
  int restarts = 0;
  long long steps = 0;
};

// Half-width of the row slabs: 4 sqrt(m ln(8d/m)). Requires 1 <= m <= 2d.
double slab_width(int m, int d);

// Largest epsilon on the dyadic grid {2^-j : j >= 1} satisfying the three
// step-scale constraints simultaneously (with T = ceil(K/eps^2) substituted).
double solve_epsilon(int m, int d, double delta);

// Derive epsilon and T for a round of total cardinality m in dimension d.
WalkConfig resolve_walk_config(int m, int d, double delta, WalkMode mode,
                               int max_restarts);

// Check the PaperFaithful step-scale constraints; throws PreconditionError.
void validate_faithful_config(const WalkConfig& cfg, int m, int d);

// Default snap threshold: min(d^-3/2, 1/(1 + max family size), 0.099).
double default_snap_threshold(const Instance& inst);

// One run of the frozen-coordinate Gaussian walk. Returns gamma_hat in the
// coefficient polytope with
//   (i)  ||W gamma - W gamma_hat||_inf <= slab_width(m, d), and
//   (ii) gamma_hat(i) <= delta for at least ceil(m/2) coordinates,
// both verified before returning; failed runs restart with fresh randomness
// up to cfg.max_restarts. Requires every family size >= 2 and m <= 2d.
Coefficients skeleton_round(const Instance& inst, const Coefficients& gamma,
                            const WalkConfig& cfg, Rng& rng,
                            RoundReport* report = nullptr);

// Iterate skeleton rounds on the shrinking active set until every family has
// all members but one at coefficient <= delta. The summed slab widths over
// executed rounds stay below 40 sqrt(d).
Coefficients iterate_skeleton(const Instance& inst, const Coefficients& lambda,
                              const MaxnormOptions& opt, Rng& rng,
                              WalkStats* stats = nullptr);

// Round to the nearest polytope vertex: coefficient > delta picks the member.
// Throws AmbiguousFamilyError when a family has zero or several coordinates
// above delta. The correction chi = mu - mu_hat satisfies
// |<chi, row_j>| <= 8 d^2 delta for every row.
Selection snap_to_vertex(const Instance& inst, const Coefficients& mu_hat,
                         double delta);

// Full pipeline: iterate_skeleton then snap_to_vertex. The selection satisfies
// ||U lambda - U mu||_inf <= 48 sqrt(d).
std::pair<Selection, WalkStats> maxnorm_select(const Instance& inst,
                                               const Coefficients& lambda,
                                               const MaxnormOptions& opt,
                                               Rng& rng);

inline constexpr double kWalkPotential = 8.0;     // K
inline constexpr double kIterationBound = 40.0;   // on summed slab widths
inline constexpr double kSelectBound = 48.0;      // walk + snapping

}  // namespace colorbal
