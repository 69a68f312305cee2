#include "colorbal/reduction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "colorbal/linalg.hpp"

namespace colorbal {

namespace {

constexpr double kReducedCostTol = 1e-9;
constexpr double kPivotTol = 1e-10;
constexpr double kSupportTol = 1e-12;

// Equality system [family indicator rows; vector rows] of shape (n+d) x m.
Eigen::MatrixXd equality_matrix(const Instance& inst) {
  const int n = inst.families();
  const int d = inst.dimension();
  const int m = inst.total_members();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + d, m);
  for (int f = 0; f < n; ++f)
    M.row(f).segment(inst.layout().offset(f), inst.family_size(f)).setOnes();
  M.bottomRows(d) = inst.matrix();
  return M;
}

// Phase-1 simplex on {M lambda = b, lambda >= 0} with artificial variables
// and Bland's anti-cycling rule. Returns a basic feasible solution.
Eigen::VectorXd phase_one_vertex(const Instance& inst) {
  const int n = inst.families();
  const int d = inst.dimension();
  const int m = inst.total_members();
  const int p = n + d;

  Eigen::MatrixXd M = equality_matrix(inst);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
  b.head(n).setOnes();

  // Tableau [M | I | b] with reduced-cost row for min(sum of artificials).
  Eigen::MatrixXd T(p + 1, m + p + 1);
  T.setZero();
  T.block(0, 0, p, m) = M;
  T.block(0, m, p, p).setIdentity();
  T.col(m + p).head(p) = b;
  // Artificials start basic, so their reduced costs must be zeroed out:
  // row0 = c - sum of constraint rows over the original columns.
  for (int j = 0; j < m; ++j) T(p, j) = -M.col(j).sum();
  T(p, m + p) = -b.sum();

  std::vector<int> basis(p);
  for (int i = 0; i < p; ++i) basis[i] = m + i;

  const long long degenerate_cap = 10LL * (m + n + d);
  long long consecutive_degenerate = 0;

  while (true) {
    // Bland: lowest-index column with negative reduced cost.
    int enter = -1;
    for (int j = 0; j < m + p; ++j) {
      if (T(p, j) < -kReducedCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave_row = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < p; ++i) {
      double a = T(i, enter);
      if (a > kPivotTol) {
        double ratio = T(i, m + p) / a;
        if (ratio < best_ratio - 1e-15 ||
            (ratio < best_ratio + 1e-15 &&
             (leave_row < 0 || basis[i] < basis[leave_row]))) {
          best_ratio = ratio;
          leave_row = i;
        }
      }
    }
    if (leave_row < 0)
      throw NumericallyDegenerateError(
          "phase-1 column unbounded; system is ill-posed");

    if (best_ratio <= 1e-12) {
      if (++consecutive_degenerate > degenerate_cap)
        throw NumericallyDegenerateError(
            "phase-1 exceeded the degenerate pivot budget");
    } else {
      consecutive_degenerate = 0;
    }

    T.row(leave_row) /= T(leave_row, enter);
    for (int i = 0; i <= p; ++i) {
      if (i == leave_row) continue;
      double factor = T(i, enter);
      if (factor != 0.0) T.row(i) -= factor * T.row(leave_row);
    }
    basis[leave_row] = enter;
  }

  double objective = -T(p, m + p);
  if (objective > kPhase1ObjectiveTol) {
    std::ostringstream os;
    os << "no feasible coefficient vector: phase-1 objective " << objective;
    throw InfeasibleError(os.str());
  }

  // Pivot zero-level artificials out of the basis where possible; redundant
  // rows keep theirs, which does not disturb the solution.
  for (int i = 0; i < p; ++i) {
    if (basis[i] < m) continue;
    int enter = -1;
    for (int j = 0; j < m; ++j) {
      if (std::abs(T(i, j)) > 1e-7 &&
          std::find(basis.begin(), basis.end(), j) == basis.end()) {
        enter = j;
        break;
      }
    }
    if (enter < 0) continue;
    T.row(i) /= T(i, enter);
    for (int r = 0; r <= p; ++r) {
      if (r == i) continue;
      double factor = T(r, enter);
      if (factor != 0.0) T.row(r) -= factor * T.row(i);
    }
    basis[i] = enter;
  }

  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < p; ++i)
    if (basis[i] < m) lambda[basis[i]] = std::max(0.0, T(i, m + p));
  return lambda;
}

// Move a feasible point to a vertex: while the support columns of the
// equality system are dependent, follow a kernel direction until a new
// coordinate hits zero.
Eigen::VectorXd push_to_vertex(const Instance& inst, Eigen::VectorXd lambda) {
  const int m = inst.total_members();
  Eigen::MatrixXd M = equality_matrix(inst);

  for (int guard = 0; guard <= m; ++guard) {
    std::vector<int> support;
    for (int j = 0; j < m; ++j)
      if (lambda[j] > kSupportTol) support.push_back(j);
      else lambda[j] = 0.0;

    const int s = static_cast<int>(support.size());
    Eigen::MatrixXd cols(M.rows(), s);
    for (int j = 0; j < s; ++j) cols.col(j) = M.col(support[j]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(cols);
    lu.setThreshold(1e-10);
    if (lu.dimensionOfKernel() == 0) return lambda;  // support columns independent

    Eigen::VectorXd kernel_dir = lu.kernel().col(0);
    kernel_dir /= kernel_dir.norm();
    Eigen::VectorXd h = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < s; ++j) h[support[j]] = kernel_dir[j];

    // First coordinate to hit zero in each direction; smaller step wins,
    // ties resolved toward the lower constraint index.
    auto first_hit = [&](double sign) {
      double t = std::numeric_limits<double>::infinity();
      int hit = -1;
      for (int j : support) {
        double rate = -sign * h[j];
        if (rate > kSupportTol) {
          double step = lambda[j] / rate;
          if (step < t - 1e-15 || (step < t + 1e-15 && j < hit)) {
            t = step;
            hit = j;
          }
        }
      }
      return std::pair<double, int>(t, hit);
    };
    auto [t_plus, hit_plus] = first_hit(+1.0);
    auto [t_minus, hit_minus] = first_hit(-1.0);
    if (hit_plus < 0 && hit_minus < 0)
      throw NumericallyDegenerateError("kernel direction never hits a bound");

    double sign;
    if (hit_minus < 0 || (hit_plus >= 0 && t_plus < t_minus - 1e-15))
      sign = 1.0;
    else if (hit_plus < 0 || t_minus < t_plus - 1e-15)
      sign = -1.0;
    else
      sign = hit_plus <= hit_minus ? 1.0 : -1.0;

    double t = sign > 0 ? t_plus : t_minus;
    int hit = sign > 0 ? hit_plus : hit_minus;
    lambda += sign * t * h;
    lambda[hit] = 0.0;
    for (int j : support) lambda[j] = std::max(0.0, lambda[j]);
  }
  throw NumericallyDegenerateError("vertex push failed to terminate");
}

double zero_sum_residual(const Instance& inst, const Eigen::VectorXd& lambda) {
  return (inst.matrix() * lambda).lpNorm<Eigen::Infinity>();
}

}  // namespace

Coefficients find_zero_vertex(const Instance& inst,
                              const std::optional<Coefficients>& witness) {
  const int m = inst.total_members();
  const int p = inst.families() + inst.dimension();

  Eigen::VectorXd lambda;
  bool from_witness = false;
  if (witness) {
    const Coefficients& w = *witness;
    if (w.layout() == inst.layout() && w.simplex_violations().empty() &&
        zero_sum_residual(inst, w.values()) <= kFeasibilityTol) {
      lambda = push_to_vertex(inst, w.values());
      from_witness = true;
    }
  }
  if (!from_witness) lambda = phase_one_vertex(inst);

  // Tight-constraint count at a vertex: at least m - (n + d) coordinates
  // sit at their bound.
  int zeros = 0;
  for (int j = 0; j < m; ++j)
    if (lambda[j] <= kSupportTol) ++zeros;
  if (zeros < m - p)
    throw NotAVertexError("too few tight coordinates for a vertex");

  if (zero_sum_residual(inst, lambda) > kResidualTol)
    throw NotAVertexError("vertex violates the zero-sum constraint");

  Coefficients out(inst.layout(), std::move(lambda));
  auto violations = out.simplex_violations();
  if (!violations.empty())
    throw NotAVertexError("vertex left the coefficient polytope: " +
                          violations.front());
  return out;
}

ReductionCore extract_core(const Instance& inst, const Coefficients& alpha) {
  const int d = inst.dimension();

  if (!(alpha.layout() == inst.layout()))
    throw PreconditionError("coefficient layout does not match the instance");
  if (zero_sum_residual(inst, alpha.values()) > kResidualTol)
    throw NotAVertexError("coefficients do not satisfy V alpha = 0");

  ReductionCore core{alpha, alpha.fractional_partition(),
                     alpha.free_families(), 0};
  core.k = static_cast<int>(core.free_families.size());

  if (core.k > d) {
    std::ostringstream os;
    os << "free family count " << core.k << " exceeds dimension " << d;
    throw NotAVertexError(os.str());
  }
  if (static_cast<int>(core.partition.fractional.size()) > core.k + d) {
    std::ostringstream os;
    os << core.partition.fractional.size() << " fractional coordinates exceed "
       << core.k << " + " << d;
    throw NotAVertexError(os.str());
  }
  // A free family must carry at least two fractional coordinates: a single
  // fractional entry cannot complete an integer sum to 1.
  for (int f : core.free_families) {
    int off = inst.layout().offset(f);
    int cnt = 0;
    for (int j = 0; j < inst.family_size(f); ++j)
      if (alpha.is_fractional(off + j)) ++cnt;
    if (cnt < 2)
      throw NotAVertexError("free family with fewer than two fractional coordinates");
  }
  return core;
}

}  // namespace colorbal
