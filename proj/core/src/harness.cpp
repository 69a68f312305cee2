#include "colorbal/harness.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "colorbal/euclid.hpp"
#include "colorbal/oracle.hpp"
#include "colorbal/reduction.hpp"

namespace colorbal {

double theorem_bound(int dimension, NormKind norm) {
  double root = std::sqrt(double(dimension));
  return norm == NormKind::Euclidean ? root : kSelectBound * root;
}

BalanceReport balance(const Instance& input,
                      const std::optional<Coefficients>& witness,
                      const BalanceOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();

  NormKind norm = opt.norm.value_or(input.norm_kind());
  // Re-validate under the effective norm; a norm override changes which ball
  // the vectors must lie in.
  Instance inst = norm == input.norm_kind()
                      ? input
                      : Instance(input.dimension(), norm, input.matrix(),
                                 [&] {
                                   std::vector<int> sizes;
                                   for (int f = 0; f < input.families(); ++f)
                                     sizes.push_back(input.family_size(f));
                                   return sizes;
                                 }());
  if (auto rep = validate_instance(inst); !rep.ok())
    throw PreconditionError("invalid instance: " + rep.violations.front());

  Coefficients alpha = find_zero_vertex(inst, witness);
  ReductionCore core = extract_core(inst, alpha);

  BalanceReport report;
  report.k = core.k;
  report.fractional = static_cast<int>(core.partition.fractional.size());
  report.seed = opt.seed;
  report.mode = to_string(opt.mode);
  report.norm = norm;
  report.bound = theorem_bound(inst.dimension(), norm);

  if (core.partition.fractional.empty()) {
    report.selection = coefficients_to_selection(alpha);
  } else {
    Instance sub = inst.restricted(core.partition.fractional);
    Coefficients lambda_f = restrict_to(alpha, core.partition.fractional);

    Selection sub_sel;
    if (norm == NormKind::Euclidean) {
      sub_sel = derandomized_select(sub, lambda_f).first;
    } else {
      MaxnormOptions mopt;
      mopt.mode = opt.mode;
      mopt.delta = opt.delta;
      mopt.max_restarts = opt.max_restarts;
      mopt.telemetry = opt.telemetry;
      Rng rng(opt.seed);
      auto [sel, stats] = maxnorm_select(sub, lambda_f, mopt, rng);
      sub_sel = std::move(sel);
      report.rounds = stats.rounds;
      report.restarts = stats.restarts;
      report.steps = stats.steps;
    }

    Coefficients mu = selection_to_coefficients(sub.layout(), sub_sel);
    Coefficients spliced =
        concatenate(inst.layout(), restrict_to(alpha, core.partition.locked),
                    core.partition.locked, mu, core.partition.fractional);
    report.selection = coefficients_to_selection(spliced);
  }

  report.achieved = selection_norm(inst, report.selection);
  if (report.achieved > report.bound + 1e-9)
    throw Error("selection exceeds the theorem bound");

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

VerifyReport verify(const Instance& inst, const Selection& sel,
                    long long oracle_budget) {
  VerifyReport rep;
  rep.achieved = selection_norm(inst, sel);
  rep.bound = theorem_bound(inst.dimension(), inst.norm_kind());
  rep.within_bound = rep.achieved <= rep.bound + 1e-9;

  long long space = 1;
  bool fits = true;
  for (int f = 0; f < inst.families() && fits; ++f) {
    space *= inst.family_size(f);
    if (space > oracle_budget) fits = false;
  }
  if (fits) rep.oracle_min = brute_force_min(inst, oracle_budget).best_value;
  return rep;
}

std::vector<BenchRow> bench(const std::vector<GenSpec>& specs,
                            const BalanceOptions& opt) {
  std::vector<BenchRow> rows;
  rows.reserve(specs.size());
  for (const GenSpec& spec : specs) {
    BenchRow row;
    row.spec = spec;
    try {
      GeneratedInstance gen = generate(spec);
      BalanceOptions per = opt;
      per.seed = spec.seed;
      per.norm = spec.norm;
      row.report = balance(gen.instance, gen.witness, per);
      row.status = "ok";
    } catch (const InfeasibleError&) {
      row.status = "infeasible";
    } catch (const RestartsExhaustedError&) {
      row.status = "restarts_exhausted";
    } catch (const Error& e) {
      row.status = std::string("error: ") + e.what();
    }
    if (row.report.mode.empty()) row.report.mode = to_string(opt.mode);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "kind,d,n,norm,mode,seed,status,achieved,bound,ratio,k,fractional,"
        "rounds,restarts,steps,wall_ms\n";
  os.precision(12);
  for (const BenchRow& row : rows) {
    os << to_string(row.spec.kind) << ',' << row.spec.d << ',' << row.spec.n
       << ',' << to_string(row.spec.norm) << ',' << row.report.mode << ','
       << row.spec.seed << ',' << row.status << ',';
    if (row.status == "ok") {
      os << row.report.achieved << ',' << row.report.bound << ','
         << row.report.achieved / row.report.bound << ',' << row.report.k
         << ',' << row.report.fractional << ',' << row.report.rounds << ','
         << row.report.restarts << ',' << row.report.steps << ','
         << row.report.wall_seconds * 1e3;
    } else {
      os << ",,,,,,,,";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace colorbal
