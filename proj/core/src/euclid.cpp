#include "colorbal/euclid.hpp"

#include <cmath>
#include <sstream>

namespace colorbal {

namespace {

void check_unit_ball(const Instance& inst) {
  // Re-checked here because this runs on restrictions, not only on inputs
  // that went through instance validation.
  for (int j = 0; j < inst.total_members(); ++j) {
    if (inst.column(j).norm() > 1.0 + kUnitBallSlack) {
      std::ostringstream os;
      os << "member " << j << " has Euclidean norm " << inst.column(j).norm();
      throw PreconditionError(os.str());
    }
  }
}

struct FamilyMoments {
  Eigen::MatrixXd mean;             // d x n, family means U_i lambda|_i
  std::vector<double> variance;     // sum lambda(u) |u|^2 - |mean_i|^2
  std::vector<double> suffix_var;   // suffix sums of variance, size n+1
  Eigen::VectorXd target;           // U lambda
};

FamilyMoments moments(const Instance& inst, const Coefficients& lambda) {
  const int n = inst.families();
  FamilyMoments mom;
  mom.mean.resize(inst.dimension(), n);
  mom.variance.resize(n);
  for (int f = 0; f < n; ++f) {
    int off = inst.layout().offset(f);
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(inst.dimension());
    double second = 0.0;
    for (int j = 0; j < inst.family_size(f); ++j) {
      double w = lambda.value(off + j);
      mean += w * inst.column(off + j);
      second += w * inst.column(off + j).squaredNorm();
    }
    mom.mean.col(f) = mean;
    mom.variance[f] = second - mean.squaredNorm();
  }
  mom.suffix_var.assign(n + 1, 0.0);
  for (int f = n - 1; f >= 0; --f)
    mom.suffix_var[f] = mom.suffix_var[f + 1] + mom.variance[f];
  mom.target = mom.mean.rowwise().sum();
  return mom;
}

}  // namespace

Selection sample_selection(const Instance& inst, const Coefficients& lambda,
                           Rng& rng) {
  Selection sel;
  sel.choices.reserve(inst.families());
  for (int f = 0; f < inst.families(); ++f) {
    int off = inst.layout().offset(f);
    int size = inst.family_size(f);
    double u = rng.next_double();
    double acc = 0.0;
    int chosen = size - 1;
    for (int j = 0; j < size; ++j) {
      acc += std::max(0.0, lambda.value(off + j));
      if (u <= acc) {
        chosen = j;
        break;
      }
    }
    sel.choices.push_back(chosen);
  }
  return sel;
}

double conditional_sq_error(const Instance& inst, const Coefficients& lambda,
                            std::span<const int> prefix) {
  const int fixed = static_cast<int>(prefix.size());
  if (fixed > inst.families())
    throw PreconditionError("prefix longer than family count");
  FamilyMoments mom = moments(inst, lambda);

  // r = prefix sum + means of the undecided families - target.
  Eigen::VectorXd r = -mom.target;
  for (int f = 0; f < fixed; ++f)
    r += inst.column(inst.column_index(f, prefix[f]));
  for (int f = fixed; f < inst.families(); ++f) r += mom.mean.col(f);
  return r.squaredNorm() + mom.suffix_var[fixed];
}

std::pair<Selection, RoundingTrace> derandomized_select(
    const Instance& inst, const Coefficients& lambda) {
  check_unit_ball(inst);
  const int n = inst.families();
  FamilyMoments mom = moments(inst, lambda);

  RoundingTrace trace;
  trace.chosen.reserve(n);
  trace.prefix_expected.reserve(n + 1);

  Eigen::VectorXd r = mom.mean.rowwise().sum() - mom.target;  // zero up to fp
  double current = r.squaredNorm() + mom.suffix_var[0];
  trace.prefix_expected.push_back(current);

  for (int f = 0; f < n; ++f) {
    int off = inst.layout().offset(f);
    Eigen::VectorXd base = r - mom.mean.col(f);
    int best = 0;
    double best_value = 0.0;
    for (int j = 0; j < inst.family_size(f); ++j) {
      double value =
          (base + inst.column(off + j)).squaredNorm() + mom.suffix_var[f + 1];
      if (j == 0 || value < best_value - 1e-15) {
        best = j;
        best_value = value;
      }
    }
    // A minimum cannot exceed the average it was drawn from.
    if (best_value > current + 1e-9)
      throw Error("conditional expectation increased along the greedy prefix");
    current = best_value;
    trace.prefix_expected.push_back(current);
    trace.chosen.push_back(best);
    r = base + inst.column(off + best);
  }

  trace.final_sq_error = current;
  if (trace.final_sq_error > n + 1e-9)
    throw Error("derandomized rounding exceeded its guarantee");
  return {Selection{trace.chosen}, std::move(trace)};
}

}  // namespace colorbal
