#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colorbal/generators.hpp"
#include "colorbal/maxnorm.hpp"
#include "colorbal/model.hpp"

namespace colorbal {

struct BalanceOptions {
  std::optional<NormKind> norm;  // overrides the instance's declared norm
  WalkMode mode = WalkMode::Practical;
  std::uint64_t seed = 0;
  int max_restarts = 200;
  double delta = 0.0;  // <= 0: default snap threshold
  std::ostream* telemetry = nullptr;
};

struct BalanceReport {
  double achieved = 0.0;
  double bound = 0.0;
  Selection selection;
  int k = 0;           // free families after reduction
  int fractional = 0;  // |F|
  int rounds = 0;
  int restarts = 0;
  long long steps = 0;
  std::uint64_t seed = 0;
  std::string mode;
  // Informational only; never serialized, so reports stay reproducible.
  double wall_seconds = 0.0;
  NormKind norm = NormKind::Euclidean;
};

// Full pipeline: vertex reduction, per-norm rounding of the fractional core,
// splice, and an independent recomputation of the achieved norm from the raw
// vectors (sub-module claims are never trusted for the report).
BalanceReport balance(const Instance& inst,
                      const std::optional<Coefficients>& witness,
                      const BalanceOptions& opt);

// The theorem bound for a dimension under a norm: sqrt(d) or 48 sqrt(d).
double theorem_bound(int dimension, NormKind norm);

struct VerifyReport {
  double achieved = 0.0;
  double bound = 0.0;
  bool within_bound = false;
  std::optional<double> oracle_min;  // when the selection space fits the budget
};

VerifyReport verify(const Instance& inst, const Selection& sel,
                    long long oracle_budget = 1'000'000);

struct BenchRow {
  GenSpec spec;
  std::string status;  // "ok" or the failure class
  BalanceReport report;
};

std::vector<BenchRow> bench(const std::vector<GenSpec>& specs,
                            const BalanceOptions& opt);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace colorbal
