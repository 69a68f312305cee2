#include "colorbal/maxnorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace colorbal {

std::string to_string(WalkMode m) {
  return m == WalkMode::PaperFaithful ? "faithful" : "practical";
}

WalkMode walk_mode_from_string(const std::string& s) {
  if (s == "faithful") return WalkMode::PaperFaithful;
  if (s == "practical") return WalkMode::Practical;
  throw PreconditionError("unknown walk mode: " + s);
}

double slab_width(int m, int d) {
  if (m < 1 || m > 2 * d) {
    std::ostringstream os;
    os << "slab width needs 1 <= m <= 2d, got m=" << m << " d=" << d;
    throw PreconditionError(os.str());
  }
  return 4.0 * std::sqrt(m * std::log(8.0 * d / m));
}

namespace {

bool step_scale_feasible(double eps, int m, int d, double delta) {
  double t_real = std::ceil(kWalkPotential / (eps * eps));
  bool c1 = eps <= delta / std::sqrt(24.0 * m * std::log(d * m / eps));
  bool c2 = 22.0 * eps * m * m * std::log(kWalkPotential / (eps * eps)) <= 0.01;
  bool c3 = eps <= 1.0 / std::sqrt(10.0 * std::log(t_real));
  return c1 && c2 && c3;
}

long long steps_for(double eps) {
  return static_cast<long long>(std::ceil(kWalkPotential / (eps * eps)));
}

}  // namespace

double solve_epsilon(int m, int d, double delta) {
  if (!(delta > 0.0 && delta < 0.1))
    throw PreconditionError("delta must lie in (0, 0.1)");
  if (m < 1 || d < 1) throw PreconditionError("m and d must be positive");
  for (int j = 1; j <= 62; ++j) {
    double eps = std::ldexp(1.0, -j);
    if (step_scale_feasible(eps, m, d, delta)) return eps;
  }
  // Each constraint's left side vanishes as eps -> 0, so the grid search
  // cannot run off the end for representable inputs.
  throw Error("no feasible step scale on the dyadic grid");
}

WalkConfig resolve_walk_config(int m, int d, double delta, WalkMode mode,
                               int max_restarts) {
  WalkConfig cfg;
  cfg.delta = delta;
  cfg.mode = mode;
  cfg.max_restarts = max_restarts;
  if (mode == WalkMode::PaperFaithful) {
    cfg.epsilon = solve_epsilon(m, d, delta);
  } else {
    // Fixed point of eps = min(delta/4, 1/sqrt(10 ln T)) with T = ceil(K/eps^2).
    double eps = delta / 4.0;
    for (int iter = 0; iter < 32; ++iter) {
      double t_real = std::ceil(kWalkPotential / (eps * eps));
      double cand = std::min(delta / 4.0, 1.0 / std::sqrt(10.0 * std::log(t_real)));
      if (std::abs(cand - eps) <= 1e-15) break;
      eps = cand;
    }
    cfg.epsilon = eps;
  }
  cfg.max_steps = steps_for(cfg.epsilon);
  return cfg;
}

void validate_faithful_config(const WalkConfig& cfg, int m, int d) {
  if (!(cfg.delta > 0.0 && cfg.delta < 0.1))
    throw PreconditionError("faithful mode requires delta in (0, 0.1)");
  if (!step_scale_feasible(cfg.epsilon, m, d, cfg.delta))
    throw PreconditionError("step scale violates the faithful-mode constraints");
  if (cfg.max_steps < steps_for(cfg.epsilon))
    throw PreconditionError("step budget below ceil(K / epsilon^2)");
}

double default_snap_threshold(const Instance& inst) {
  int max_size = 1;
  for (int f = 0; f < inst.families(); ++f)
    max_size = std::max(max_size, inst.family_size(f));
  double d = inst.dimension();
  return std::min({std::pow(d, -1.5), 1.0 / (1.0 + max_size), 0.099});
}

namespace {

struct WalkOutcome {
  Eigen::VectorXd gamma;
  long long steps = 0;
  int frozen = 0;
  bool success = false;
};

// One trajectory of the walk. Starts at gamma0, steps by eps * N(S_t),
// freezes coordinates that reach delta and converts slabs within delta of
// their width into equalities. The trajectory is confined to the zero-sum
// directions of the families, so per-coordinate sums stay put.
WalkOutcome run_walk(const Instance& inst, const Eigen::VectorXd& gamma0,
                     double omega, const WalkConfig& cfg, Rng& rng) {
  const int m = inst.total_members();
  const int d = inst.dimension();
  const int n = inst.families();
  const Eigen::MatrixXd& W = inst.matrix();
  const double eps = cfg.epsilon;
  const double delta = cfg.delta;

  Eigen::VectorXd cur = gamma0;
  Eigen::VectorXd slack = Eigen::VectorXd::Zero(d);  // <cur - gamma0, row j>
  std::vector<char> frozen(m, 0), tight(d, 0);
  std::vector<double> pin(m, 0.0);
  int frozen_count = 0;
  int tight_count = 0;

  std::vector<Eigen::VectorXd> normals;
  normals.reserve(n + m);
  for (int f = 0; f < n; ++f) {
    Eigen::VectorXd ind = Eigen::VectorXd::Zero(m);
    ind.segment(inst.layout().offset(f), inst.family_size(f)).setOnes();
    normals.push_back(std::move(ind));
  }
  for (int i = 0; i < m; ++i) {
    if (cur[i] <= delta) {
      frozen[i] = 1;
      pin[i] = cur[i];
      ++frozen_count;
      normals.push_back(Eigen::VectorXd::Unit(m, i));
    }
  }
  Subspace sub = null_space_basis(normals, Subspace::full(m));

  const int need_frozen = (m + 1) / 2;
  auto inside = [&](const Eigen::VectorXd& s) {
    for (int i = 0; i < m; ++i)
      if (cur[i] < -kCoeffNonnegSlack) return false;
    for (int j = 0; j < d; ++j)
      if (std::abs(s[j]) > omega + 1e-9) return false;
    return true;
  };
  auto check_family_sums = [&]() {
    for (int f = 0; f < n; ++f) {
      double s = cur.segment(inst.layout().offset(f), inst.family_size(f)).sum();
      if (std::abs(s - 1.0) > 1e-8)
        throw Error("walk drifted off the family-sum hyperplanes");
    }
  };

  WalkOutcome out;
  Eigen::VectorXd step(m), row_step(d);
  std::vector<Eigen::VectorXd> fresh;
  bool doomed = false;

  long long t = 0;
  while (t < cfg.max_steps && !doomed) {
    if (frozen_count >= need_frozen && inside(slack)) break;
    if (sub.dim() == 0) break;
    ++t;

    gaussian_on(sub, rng, step);
    cur.noalias() += eps * step;
    row_step.noalias() = W * step;
    slack.noalias() += eps * row_step;

    fresh.clear();
    for (int i = 0; i < m; ++i) {
      if (frozen[i]) {
        cur[i] = pin[i];
        continue;
      }
      if (cur[i] <= delta) {
        // Freeze overshoot is bounded by the step just taken.
        if (cur[i] < delta - eps * std::abs(step[i]) - 1e-12)
          throw Error("freeze overshoot exceeds the last step");
        frozen[i] = 1;
        pin[i] = cur[i];
        ++frozen_count;
        fresh.push_back(Eigen::VectorXd::Unit(m, i));
        if (cur[i] < -kCoeffNonnegSlack) doomed = true;
      }
    }
    for (int j = 0; j < d; ++j) {
      if (!tight[j] && std::abs(slack[j]) >= omega - delta) {
        tight[j] = 1;
        ++tight_count;
        fresh.push_back(W.row(j).transpose());
        if (std::abs(slack[j]) > omega + 1e-12) doomed = true;
      }
    }
    check_family_sums();

    if (!fresh.empty()) {
      int prev_dim = sub.dim();
      sub = null_space_basis(fresh, sub);
      if (sub.dim() > prev_dim)
        throw Error("step subspace grew");
      if (sub.dim() < m - n - frozen_count - tight_count)
        throw Error("step subspace lost more rank than its constraints");
    }
  }

  Eigen::VectorXd exact_slack = W * (cur - gamma0);
  int small = 0;
  for (int i = 0; i < m; ++i)
    if (cur[i] <= delta) ++small;

  bool width_ok = exact_slack.lpNorm<Eigen::Infinity>() <= omega + 1e-9;
  bool count_ok = small >= need_frozen;
  out.success = width_ok && count_ok && inside(exact_slack);
  out.gamma = std::move(cur);
  out.steps = t;
  out.frozen = small;
  return out;
}

}  // namespace

Coefficients skeleton_round(const Instance& inst, const Coefficients& gamma,
                            const WalkConfig& cfg, Rng& rng,
                            RoundReport* report) {
  const int m = inst.total_members();
  const int d = inst.dimension();
  if (m > 2 * d)
    throw PreconditionError("skeleton round needs total cardinality <= 2d");
  for (int f = 0; f < inst.families(); ++f)
    if (inst.family_size(f) < 2)
      throw PreconditionError("skeleton round needs every family size >= 2");
  for (int j = 0; j < m; ++j)
    if (inst.column(j).lpNorm<Eigen::Infinity>() > 1.0 + kUnitBallSlack)
      throw PreconditionError("skeleton round needs max-norm unit vectors");
  if (!(gamma.layout() == inst.layout()))
    throw PreconditionError("coefficient layout does not match the instance");
  if (auto v = gamma.simplex_violations(); !v.empty())
    throw PreconditionError("start point outside the coefficient polytope: " +
                            v.front());
  if (!(cfg.delta > 0.0 && cfg.delta < 0.1))
    throw PreconditionError("freeze threshold must lie in (0, 0.1)");
  if (cfg.mode == WalkMode::PaperFaithful) validate_faithful_config(cfg, m, d);

  const double omega = slab_width(m, d);
  long long total_steps = 0;
  for (int attempt = 0; attempt < cfg.max_restarts; ++attempt) {
    WalkOutcome out = run_walk(inst, gamma.values(), omega, cfg, rng);
    total_steps += out.steps;
    if (out.success) {
      if (report) {
        report->m = m;
        report->omega = omega;
        report->steps = total_steps;
        report->restarts = attempt;
        report->frozen = out.frozen;
      }
      return Coefficients(inst.layout(), std::move(out.gamma));
    }
  }
  std::ostringstream os;
  os << "skeleton round failed its post-conditions in " << cfg.max_restarts
     << " attempts (m=" << m << ", d=" << d << ")";
  throw RestartsExhaustedError(os.str());
}

namespace {

// Columns of unsettled families above the threshold; a family is settled
// once all members but one sit at <= delta.
std::vector<int> active_columns(const Instance& inst,
                                const Eigen::VectorXd& cur, double delta) {
  std::vector<int> active;
  for (int f = 0; f < inst.families(); ++f) {
    int off = inst.layout().offset(f);
    int size = inst.family_size(f);
    int above = 0;
    for (int j = off; j < off + size; ++j)
      if (cur[j] > delta) ++above;
    if (above >= 2)
      for (int j = off; j < off + size; ++j)
        if (cur[j] > delta) active.push_back(j);
  }
  return active;
}

void emit_round(std::ostream* telemetry, const RoundReport& rep) {
  if (!telemetry) return;
  (*telemetry) << "{\"round\":" << rep.round << ",\"m\":" << rep.m
               << ",\"omega\":" << rep.omega
               << ",\"steps_taken\":" << rep.steps
               << ",\"restarts\":" << rep.restarts
               << ",\"frozen_count\":" << rep.frozen << "}\n";
}

}  // namespace

Coefficients iterate_skeleton(const Instance& inst, const Coefficients& lambda,
                              const MaxnormOptions& opt, Rng& rng,
                              WalkStats* stats) {
  const int m = inst.total_members();
  const int d = inst.dimension();
  if (m > 2 * d)
    throw PreconditionError("skeleton iteration needs total cardinality <= 2d");
  if (!(lambda.layout() == inst.layout()))
    throw PreconditionError("coefficient layout does not match the instance");
  if (auto v = lambda.simplex_violations(); !v.empty())
    throw PreconditionError("start point outside the coefficient polytope: " +
                            v.front());

  double delta = opt.delta > 0.0 ? opt.delta : default_snap_threshold(inst);
  int max_size = 1;
  for (int f = 0; f < inst.families(); ++f)
    max_size = std::max(max_size, inst.family_size(f));
  if (!(delta > 0.0 && delta < 0.1 && delta < 1.0 / max_size))
    throw PreconditionError(
        "snap threshold must lie in (0, 0.1) and below 1/max family size");

  Eigen::VectorXd cur = lambda.values();
  WalkStats local;
  double total_width = 0.0;
  int first_active = -1;

  while (true) {
    std::vector<int> active = active_columns(inst, cur, delta);
    if (active.empty()) break;
    const int m_s = static_cast<int>(active.size());
    if (first_active < 0) first_active = m_s;

    Instance sub = inst.restricted(active);

    // Per-family mass carried by the active columns; the walk runs on the
    // renormalized point and the result is scaled back on splice, so the
    // full vector keeps its family sums and the dropped coordinates stay
    // below the threshold.
    Eigen::VectorXd scale(m_s);
    {
      int j = 0;
      for (int f = 0; f < sub.families(); ++f) {
        double mass = 0.0;
        for (int i = 0; i < sub.family_size(f); ++i)
          mass += cur[active[j + i]];
        for (int i = 0; i < sub.family_size(f); ++i) scale[j + i] = mass;
        j += sub.family_size(f);
      }
    }
    Eigen::VectorXd start(m_s);
    for (int j = 0; j < m_s; ++j) start[j] = cur[active[j]] / scale[j];

    WalkConfig cfg =
        resolve_walk_config(m_s, d, delta, opt.mode, opt.max_restarts);

    bool accepted = false;
    for (int tries = 0; tries < opt.max_restarts && !accepted; ++tries) {
      RoundReport rep;
      rep.round = local.rounds;
      Coefficients rounded =
          skeleton_round(sub, Coefficients(sub.layout(), start), cfg, rng, &rep);
      local.steps += rep.steps;
      local.restarts += rep.restarts;

      Eigen::VectorXd next = cur;
      for (int j = 0; j < m_s; ++j)
        next[active[j]] = rounded.value(j) * scale[j];
      int next_active =
          static_cast<int>(active_columns(inst, next, delta).size());
      if (2 * next_active <= m_s) {
        cur = std::move(next);
        accepted = true;
        total_width += rep.omega;
        ++local.rounds;
        emit_round(opt.telemetry, rep);
      } else {
        ++local.restarts;
      }
    }
    if (!accepted)
      throw RestartsExhaustedError(
          "active set failed to contract within the restart budget");

    if (total_width > kIterationBound * std::sqrt(double(d)) + 1e-9)
      throw Error("summed slab widths exceeded the iteration bound");
    double var_bound = kIterationBound *
                       std::sqrt(first_active * std::log(4.0 * d / first_active));
    if (total_width > var_bound + 1e-9)
      throw Error("summed slab widths exceeded the cardinality-sensitive bound");
  }

  // Every family must end with exactly one coordinate above the threshold;
  // the family sum rules out zero.
  for (int f = 0; f < inst.families(); ++f) {
    int off = inst.layout().offset(f);
    int above = 0;
    for (int j = 0; j < inst.family_size(f); ++j)
      if (cur[off + j] > delta) ++above;
    if (above != 1)
      throw Error("family left without a dominant coordinate");
  }

  if (stats) {
    stats->rounds += local.rounds;
    stats->restarts += local.restarts;
    stats->steps += local.steps;
  }
  return Coefficients(inst.layout(), std::move(cur));
}

Selection snap_to_vertex(const Instance& inst, const Coefficients& mu_hat,
                         double delta) {
  const int d = inst.dimension();
  Selection sel;
  sel.choices.reserve(inst.families());
  for (int f = 0; f < inst.families(); ++f) {
    int off = inst.layout().offset(f);
    int chosen = -1;
    int above = 0;
    for (int j = 0; j < inst.family_size(f); ++j) {
      if (mu_hat.value(off + j) > delta) {
        ++above;
        chosen = j;
      }
    }
    if (above != 1) {
      std::ostringstream os;
      os << "family " << f << " has " << above
         << " coordinates above the snap threshold";
      throw AmbiguousFamilyError(os.str());
    }
    sel.choices.push_back(chosen);
  }

  Eigen::VectorXd chi =
      selection_to_coefficients(inst.layout(), sel).values() - mu_hat.values();
  double budget = 8.0 * d * d * delta + 1e-9;
  Eigen::VectorXd row_error = inst.matrix() * chi;
  if (row_error.lpNorm<Eigen::Infinity>() > budget)
    throw Error("snapping correction exceeded its row budget");
  return sel;
}

std::pair<Selection, WalkStats> maxnorm_select(const Instance& inst,
                                               const Coefficients& lambda,
                                               const MaxnormOptions& opt,
                                               Rng& rng) {
  const int d = inst.dimension();
  MaxnormOptions resolved = opt;
  if (resolved.delta <= 0.0) resolved.delta = default_snap_threshold(inst);

  WalkStats stats;
  Coefficients mu_hat = iterate_skeleton(inst, lambda, resolved, rng, &stats);
  Selection sel = snap_to_vertex(inst, mu_hat, resolved.delta);

  Eigen::VectorXd moved =
      inst.matrix() * (selection_to_coefficients(inst.layout(), sel).values() -
                       lambda.values());
  if (moved.lpNorm<Eigen::Infinity>() >
      kSelectBound * std::sqrt(double(d)) + 1e-9)
    throw Error("selection moved further than the guarantee allows");
  return {std::move(sel), stats};
}

}  // namespace colorbal
