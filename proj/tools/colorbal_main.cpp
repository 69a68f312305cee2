// colorbal: balance / gen / verify / oracle / bench for colorful vector
// balancing instances.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "colorbal/harness.hpp"
#include "colorbal/json_io.hpp"
#include "colorbal/oracle.hpp"

namespace {

using namespace colorbal;

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

int run_balance(const std::string& input, const std::string& norm,
                const std::string& mode, std::uint64_t seed,
                const std::string& out_path, int restarts, double delta,
                const std::string& telemetry_path) {
  LoadedInstance loaded = load_instance_file(input);

  BalanceOptions opt;
  if (!norm.empty()) opt.norm = norm_kind_from_string(norm);
  opt.mode = walk_mode_from_string(mode);
  opt.seed = seed;
  opt.max_restarts = restarts;
  opt.delta = delta;
  std::ofstream telemetry;
  if (!telemetry_path.empty()) {
    telemetry.open(telemetry_path);
    if (!telemetry) throw Error("cannot write " + telemetry_path);
    opt.telemetry = &telemetry;
  }

  BalanceReport report = balance(loaded.instance, loaded.witness, opt);
  std::string text = report_to_json(report);
  std::cout << text << "\n";
  if (!out_path.empty()) write_file(out_path, text);
  return report.achieved <= report.bound ? 0 : 1;
}

int run_gen(const std::string& kind, int d, int n, std::uint64_t seed,
            const std::string& out_path, int min_size, int max_size,
            const std::string& norm) {
  GenSpec spec;
  spec.kind = gen_kind_from_string(kind);
  spec.d = d;
  spec.n = n;
  spec.seed = seed;
  spec.min_size = min_size;
  spec.max_size = max_size;
  spec.norm = norm_kind_from_string(norm);

  GeneratedInstance gen = generate(spec);
  std::string text = instance_to_json(gen.instance, gen.witness);
  if (out_path.empty())
    std::cout << text << "\n";
  else
    write_file(out_path, text);
  return 0;
}

int run_verify(const std::string& input, const std::string& selection_path) {
  LoadedInstance loaded = load_instance_file(input);
  Selection sel = load_selection_file(selection_path);
  VerifyReport report = verify(loaded.instance, sel);
  std::cout << verify_to_json(report, sel) << "\n";
  return report.within_bound ? 0 : 1;
}

int run_oracle(const std::string& input) {
  LoadedInstance loaded = load_instance_file(input);
  OracleResult res = brute_force_min(loaded.instance);
  std::cout << "{\"min\":" << res.best_value << ",\"selection\":[";
  for (size_t i = 0; i < res.best_selection.choices.size(); ++i)
    std::cout << (i ? "," : "") << res.best_selection.choices[i];
  std::cout << "],\"enumerated\":" << res.enumerated_count << "}\n";
  return 0;
}

int run_bench(const std::string& spec_path, const std::string& out_path,
              const std::string& mode) {
  std::vector<GenSpec> specs = load_gen_specs_file(spec_path);
  BalanceOptions opt;
  opt.mode = walk_mode_from_string(mode);
  std::vector<BenchRow> rows = bench(specs, opt);
  std::string csv = bench_csv(rows);
  if (out_path.empty())
    std::cout << csv;
  else
    write_file(out_path, csv);
  for (const BenchRow& row : rows)
    if (row.status != "ok")
      std::cerr << "row " << to_string(row.spec.kind) << " d=" << row.spec.d
                << " seed=" << row.spec.seed << ": " << row.status << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colorful vector balancing solver"};
  app.require_subcommand(1);

  // balance
  std::string in_path, norm, mode = "practical", out_path, telemetry_path;
  std::uint64_t seed = 0;
  int restarts = 200;
  double delta = 0.0;
  auto* cmd_balance = app.add_subcommand("balance", "solve one instance");
  cmd_balance->add_option("--input", in_path)->required();
  cmd_balance->add_option("--norm", norm)->check(CLI::IsMember({"l2", "linf"}));
  cmd_balance->add_option("--mode", mode)
      ->check(CLI::IsMember({"faithful", "practical"}));
  cmd_balance->add_option("--seed", seed);
  cmd_balance->add_option("--out", out_path);
  cmd_balance->add_option("--restarts", restarts);
  cmd_balance->add_option("--delta", delta);
  cmd_balance->add_option("--telemetry", telemetry_path);

  // gen
  std::string kind = "dirichlet", gen_out, gen_norm = "l2";
  int d = 2, n = 2, min_size = 2, max_size = 4;
  std::uint64_t gen_seed = 0;
  auto* cmd_gen = app.add_subcommand("gen", "generate a feasible instance");
  cmd_gen->add_option("--kind", kind)
      ->check(CLI::IsMember({"cube", "sphere", "sharp", "antipodal", "dirichlet"}));
  cmd_gen->add_option("--d", d)->required();
  cmd_gen->add_option("--n", n);
  cmd_gen->add_option("--seed", gen_seed);
  cmd_gen->add_option("--out", gen_out)->required();
  cmd_gen->add_option("--min-size", min_size);
  cmd_gen->add_option("--max-size", max_size);
  cmd_gen->add_option("--norm", gen_norm)->check(CLI::IsMember({"l2", "linf"}));

  // verify
  std::string ver_input, ver_selection;
  auto* cmd_verify = app.add_subcommand("verify", "recheck a selection");
  cmd_verify->add_option("--input", ver_input)->required();
  cmd_verify->add_option("--selection", ver_selection)->required();

  // oracle
  std::string oracle_input;
  auto* cmd_oracle = app.add_subcommand("oracle", "exact minimum by enumeration");
  cmd_oracle->add_option("--input", oracle_input)->required();

  // bench
  std::string bench_spec, bench_out, bench_mode = "practical";
  auto* cmd_bench = app.add_subcommand("bench", "run a generator schedule");
  cmd_bench->add_option("--spec", bench_spec)->required();
  cmd_bench->add_option("--out", bench_out);
  cmd_bench->add_option("--mode", bench_mode)
      ->check(CLI::IsMember({"faithful", "practical"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_balance->parsed())
      return run_balance(in_path, norm, mode, seed, out_path, restarts, delta,
                         telemetry_path);
    if (cmd_gen->parsed())
      return run_gen(kind, d, n, gen_seed, gen_out, min_size, max_size,
                     gen_norm);
    if (cmd_verify->parsed()) return run_verify(ver_input, ver_selection);
    if (cmd_oracle->parsed()) return run_oracle(oracle_input);
    if (cmd_bench->parsed()) return run_bench(bench_spec, bench_out, bench_mode);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Infeasible);
  } catch (const RestartsExhaustedError& e) {
    std::cerr << "restarts exhausted: " << e.what() << "\n";
    return static_cast<int>(ExitCode::RestartsExhausted);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Failure);
  }
  return 0;
}
