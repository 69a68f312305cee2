#pragma once

#include <optional>
#include <string>

#include "colorbal/harness.hpp"
#include "colorbal/model.hpp"

namespace colorbal {

struct LoadedInstance {
  Instance instance;
  std::optional<Coefficients> witness;
};

// Instance schema:
//   {"d": int, "norm": "l2"|"linf", "families": [[[f64, ... d], ...], ...],
//    "witness": [f64, ... m]}   (witness optional)
LoadedInstance instance_from_json(const std::string& text);
LoadedInstance load_instance_file(const std::string& path);
std::string instance_to_json(const Instance& inst,
                             const std::optional<Coefficients>& witness = {});

// Report schema: {"achieved","bound","selection","k","fractional","rounds",
// "restarts","steps","seed","mode"}; key order and float formatting are
// stable, so identical inputs give byte-identical output.
std::string report_to_json(const BalanceReport& report);

// Accepts either a bare array or {"selection": [...]}.
Selection selection_from_json(const std::string& text);
Selection load_selection_file(const std::string& path);

std::string verify_to_json(const VerifyReport& report, const Selection& sel);

// Bench schedule: JSON array of generator specs
//   [{"kind": str, "d": int, "n": int, "min_size": int, "max_size": int,
//     "norm": "l2"|"linf", "seed": u64}, ...]
std::vector<GenSpec> gen_specs_from_json(const std::string& text);
std::vector<GenSpec> load_gen_specs_file(const std::string& path);

}  // namespace colorbal
