#include "colorbal/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace colorbal {

namespace {

using json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw Error("malformed JSON");
  return j;
}

}  // namespace

LoadedInstance instance_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.contains("d") || !j.contains("norm") || !j.contains("families"))
    throw Error("instance JSON needs d, norm and families");
  int d = j["d"].get<int>();
  NormKind norm = norm_kind_from_string(j["norm"].get<std::string>());

  std::vector<std::vector<Eigen::VectorXd>> families;
  for (const json& fam : j["families"]) {
    std::vector<Eigen::VectorXd> members;
    for (const json& vec : fam) {
      Eigen::VectorXd v(static_cast<int>(vec.size()));
      for (int i = 0; i < v.size(); ++i) v[i] = vec[i].get<double>();
      members.push_back(std::move(v));
    }
    families.push_back(std::move(members));
  }

  // Report every structural violation at once rather than stopping at the
  // first constructor error. Ball membership is not fatal here; balance
  // revalidates under its effective norm.
  ValidationReport raw = validate_families(d, norm, families);
  for (const std::string& v : raw.violations)
    if (v.find("norm exceeds") == std::string::npos)
      throw Error("invalid instance: " + v);

  LoadedInstance out{Instance(d, norm, families), {}};

  if (j.contains("witness")) {
    const json& w = j["witness"];
    if (static_cast<int>(w.size()) != out.instance.total_members())
      throw Error("witness length does not match total member count");
    Eigen::VectorXd vals(out.instance.total_members());
    for (int i = 0; i < out.instance.total_members(); ++i)
      vals[i] = w[i].get<double>();
    out.witness = Coefficients(out.instance.layout(), std::move(vals));
  }
  return out;
}

LoadedInstance load_instance_file(const std::string& path) {
  return instance_from_json(slurp(path));
}

std::string instance_to_json(const Instance& inst,
                             const std::optional<Coefficients>& witness) {
  json j;
  j["d"] = inst.dimension();
  j["norm"] = to_string(inst.norm_kind());
  json families = json::array();
  for (int f = 0; f < inst.families(); ++f) {
    json fam = json::array();
    for (int m = 0; m < inst.family_size(f); ++m) {
      json vec = json::array();
      const auto col = inst.column(inst.column_index(f, m));
      for (int i = 0; i < inst.dimension(); ++i) vec.push_back(col[i]);
      fam.push_back(std::move(vec));
    }
    families.push_back(std::move(fam));
  }
  j["families"] = std::move(families);
  if (witness) {
    json w = json::array();
    for (int i = 0; i < witness->total(); ++i) w.push_back(witness->value(i));
    j["witness"] = std::move(w);
  }
  return j.dump();
}

std::string report_to_json(const BalanceReport& report) {
  json j;
  j["achieved"] = report.achieved;
  j["bound"] = report.bound;
  j["selection"] = report.selection.choices;
  j["k"] = report.k;
  j["fractional"] = report.fractional;
  j["rounds"] = report.rounds;
  j["restarts"] = report.restarts;
  j["steps"] = report.steps;
  j["seed"] = report.seed;
  j["mode"] = report.mode;
  return j.dump();
}

Selection selection_from_json(const std::string& text) {
  json j = parse(text);
  const json& arr = j.is_array() ? j : j.at("selection");
  Selection sel;
  for (const json& c : arr) sel.choices.push_back(c.get<int>());
  return sel;
}

Selection load_selection_file(const std::string& path) {
  return selection_from_json(slurp(path));
}

std::string verify_to_json(const VerifyReport& report, const Selection& sel) {
  json j;
  j["achieved"] = report.achieved;
  j["bound"] = report.bound;
  j["within_bound"] = report.within_bound;
  j["selection"] = sel.choices;
  if (report.oracle_min) j["oracle_min"] = *report.oracle_min;
  return j.dump();
}

std::vector<GenSpec> gen_specs_from_json(const std::string& text) {
  json j = parse(text);
  if (!j.is_array()) throw Error("bench schedule must be a JSON array");
  std::vector<GenSpec> specs;
  for (const json& row : j) {
    GenSpec spec;
    spec.kind = gen_kind_from_string(row.at("kind").get<std::string>());
    spec.d = row.at("d").get<int>();
    spec.n = row.at("n").get<int>();
    if (row.contains("min_size")) spec.min_size = row["min_size"].get<int>();
    if (row.contains("max_size")) spec.max_size = row["max_size"].get<int>();
    if (row.contains("norm"))
      spec.norm = norm_kind_from_string(row["norm"].get<std::string>());
    if (row.contains("seed")) spec.seed = row["seed"].get<std::uint64_t>();
    specs.push_back(spec);
  }
  return specs;
}

std::vector<GenSpec> load_gen_specs_file(const std::string& path) {
  return gen_specs_from_json(slurp(path));
}

}  // namespace colorbal
