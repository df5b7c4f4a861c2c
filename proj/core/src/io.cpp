// JSON/CSV interchange and reproducibility manifests.
#include "qdl/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "qdl/metrics.hpp"

namespace qdl {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json complex_to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw IoError("amplitude must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

json cvector_to_json(const CVector& v) {
  json arr = json::array();
  for (const Complex& c : v) arr.push_back(complex_to_json(c));
  return arr;
}

CVector cvector_from_json(const json& j) {
  CVector v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

ordered_json estimate_to_json(const ResourceEstimate& e) {
  ordered_json j;
  j["t_count"] = e.t_count;
  j["cnot_count"] = e.cnot_count;
  j["rotation_count"] = e.rotation_count;
  j["toffoli_count"] = e.toffoli_count;
  j["ancilla_qubits"] = e.ancilla_qubits;
  j["total_qubits"] = e.total_qubits;
  return j;
}

ResourceEstimate estimate_from_json(const json& j) {
  ResourceEstimate e;
  e.t_count = j.at("t_count").get<long long>();
  e.cnot_count = j.at("cnot_count").get<long long>();
  e.rotation_count = j.at("rotation_count").get<long long>();
  e.toffoli_count = j.at("toffoli_count").get<long long>();
  e.ancilla_qubits = j.at("ancilla_qubits").get<long long>();
  e.total_qubits = j.at("total_qubits").get<long long>();
  return e;
}

ordered_json budget_to_json(const ErrorBudget& b) {
  ordered_json j;
  j["epsilon"] = b.epsilon;
  j["omega"] = b.omega;
  j["eps_p"] = b.eps_p;
  j["eps_a"] = b.eps_a;
  return j;
}

ErrorBudget budget_from_json(const json& j) {
  ErrorBudget b;
  b.epsilon = j.at("epsilon").get<double>();
  b.omega = j.at("omega").get<double>();
  b.eps_p = j.at("eps_p").get<double>();
  b.eps_a = j.at("eps_a").get<double>();
  return b;
}

ordered_json plan_to_json(const MethodPlan& p) {
  ordered_json j;
  j["method"] = method_name(p.method);
  j["feasible"] = p.feasible;
  j["eps_a_predicted"] = p.eps_a_predicted;
  j["budget"] = budget_to_json(p.budget);
  ordered_json hp;
  for (const auto& [k, v] : p.hyperparams) hp[k] = v;
  j["hyperparams"] = hp;
  j["resources"] = estimate_to_json(p.resources);
  if (!p.note.empty()) j["note"] = p.note;
  return j;
}

MethodPlan plan_from_json(const json& j) {
  MethodPlan p;
  p.method = method_from_name(j.at("method").get<std::string>());
  p.feasible = j.at("feasible").get<bool>();
  p.eps_a_predicted = j.at("eps_a_predicted").get<double>();
  p.budget = budget_from_json(j.at("budget"));
  for (const auto& [k, v] : j.at("hyperparams").items()) {
    p.hyperparams[k] = v.get<double>();
  }
  p.resources = estimate_from_json(j.at("resources"));
  if (j.contains("note")) p.note = j["note"].get<std::string>();
  return p;
}

std::string metric_name(SelectionMetric m) {
  switch (m) {
    case SelectionMetric::TCount: return "t-count";
    case SelectionMetric::CnotCount: return "cnot-count";
    case SelectionMetric::WeightedSum: return "weighted-sum";
  }
  throw ValidationError("unknown selection metric");
}

SelectionMetric metric_from_name(const std::string& name) {
  if (name == "t-count") return SelectionMetric::TCount;
  if (name == "cnot-count") return SelectionMetric::CnotCount;
  if (name == "weighted-sum") return SelectionMetric::WeightedSum;
  throw IoError("unknown selection metric: " + name);
}

json parse_file(const std::string& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw IoError("cannot parse " + path + ": " + e.what());
  }
}

// Shortest round-trip-exact decimal (what the JSON writer emits).
std::string fmt_double(double x) { return json(x).dump(); }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failure: " + path);
}

TargetVector load_target(const std::string& path) {
  const json j = parse_file(path);
  TargetVector v;
  try {
    v.n_qubits = j.at("n_qubits").get<int>();
    v.task = task_from_name(j.at("task").get<std::string>());
    v.amplitudes = cvector_from_json(j.at("amplitudes"));
  } catch (const json::exception& e) {
    throw IoError("malformed vector file " + path + ": " + e.what());
  }
  return validate_target(v);
}

void save_target(const TargetVector& v, const std::string& path) {
  ordered_json j;
  j["n_qubits"] = v.n_qubits;
  j["task"] = task_name(v.task);
  j["amplitudes"] = cvector_to_json(v.amplitudes);
  write_text_file(path, j.dump(2) + "\n");
}

CircuitIR load_circuit(const std::string& path) {
  const json j = parse_file(path);
  CircuitIR ir;
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw IoError("unsupported circuit schema in " + path);
    }
    ir.num_system_qubits = j.at("system_qubits").get<int>();
    ir.num_ancilla_qubits = j.at("ancilla_qubits").get<int>();
    ir.global_phase = j.value("global_phase", 0.0);
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j["metadata"].items()) {
        ir.metadata.emplace_back(k, v.get<std::string>());
      }
    }
    for (const auto& gj : j.at("gates")) {
      GateRecord g;
      g.kind = gate_kind_from_name(gj.at("kind").get<std::string>());
      if (gj.contains("targets")) g.targets = gj["targets"].get<std::vector<int>>();
      if (gj.contains("controls")) {
        for (const auto& cj : gj["controls"]) {
          g.controls.emplace_back(cj.at(0).get<int>(), cj.at(1).get<bool>());
        }
      }
      if (gj.contains("params")) g.params = gj["params"].get<RVector>();
      if (gj.contains("table")) g.table = gj["table"].get<std::vector<long long>>();
      if (gj.contains("cost_hint")) g.cost_hint = gj["cost_hint"].get<std::string>();
      if (gj.contains("block")) {
        BlockSpec b;
        const auto& bj = gj["block"];
        b.label = bj.at("label").get<std::string>();
        if (bj.contains("matrix")) b.matrix = cvector_from_json(bj["matrix"]);
        if (bj.contains("cost")) {
          PreCost c;
          c.rotations = bj["cost"].at("rotations").get<long long>();
          c.cnots = bj["cost"].at("cnots").get<long long>();
          c.toffolis = bj["cost"].at("toffolis").get<long long>();
          c.ancillas = bj["cost"].at("ancillas").get<long long>();
          b.cost = c;
        }
        g.block = std::move(b);
      }
      ir.gates.push_back(std::move(g));
    }
  } catch (const json::exception& e) {
    throw IoError("malformed circuit file " + path + ": " + e.what());
  }
  validate_circuit(ir);
  return ir;
}

void save_circuit(const CircuitIR& ir, const std::string& path) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["system_qubits"] = ir.num_system_qubits;
  j["ancilla_qubits"] = ir.num_ancilla_qubits;
  ordered_json gates = ordered_json::array();
  for (const GateRecord& g : ir.gates) {
    ordered_json gj;
    gj["kind"] = gate_kind_name(g.kind);
    if (!g.targets.empty()) gj["targets"] = g.targets;
    if (!g.controls.empty()) {
      ordered_json cs = ordered_json::array();
      for (const auto& [q, pol] : g.controls) cs.push_back(ordered_json::array({q, pol}));
      gj["controls"] = cs;
    }
    if (!g.params.empty()) gj["params"] = g.params;
    if (!g.table.empty()) gj["table"] = g.table;
    if (!g.cost_hint.empty()) gj["cost_hint"] = g.cost_hint;
    if (g.block.has_value()) {
      ordered_json bj;
      bj["label"] = g.block->label;
      if (!g.block->matrix.empty()) bj["matrix"] = cvector_to_json(g.block->matrix);
      if (g.block->cost.has_value()) {
        ordered_json cj;
        cj["rotations"] = g.block->cost->rotations;
        cj["cnots"] = g.block->cost->cnots;
        cj["toffolis"] = g.block->cost->toffolis;
        cj["ancillas"] = g.block->cost->ancillas;
        bj["cost"] = cj;
      }
      gj["block"] = bj;
    }
    gates.push_back(std::move(gj));
  }
  j["gates"] = gates;
  j["global_phase"] = ir.global_phase;
  ordered_json meta;
  for (const auto& [k, v] : ir.metadata) meta[k] = v;
  j["metadata"] = meta;
  write_text_file(path, j.dump(2) + "\n");
}

std::string plan_report_to_json(const PlanReport& report) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["metric"] = metric_name(report.metric);
  ordered_json entries = ordered_json::array();
  for (const PlanEntry& e : report.per_method_per_omega) {
    ordered_json ej;
    ej["omega"] = e.omega;
    ej["plan"] = plan_to_json(e.plan);
    entries.push_back(std::move(ej));
  }
  j["entries"] = entries;
  if (report.selected.has_value()) {
    j["selected"] = plan_to_json(*report.selected);
  } else {
    j["selected"] = nullptr;
    ordered_json inf;
    for (const auto& [m, why] : report.infeasibility) inf[m] = why;
    j["infeasibility"] = inf;
  }
  return j.dump(2) + "\n";
}

PlanReport plan_report_from_json_file(const std::string& path) {
  const json j = parse_file(path);
  PlanReport r;
  try {
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
      throw IoError("unsupported plan schema in " + path);
    }
    r.metric = metric_from_name(j.at("metric").get<std::string>());
    for (const auto& ej : j.at("entries")) {
      PlanEntry e;
      e.omega = ej.at("omega").get<double>();
      e.plan = plan_from_json(ej.at("plan"));
      r.per_method_per_omega.push_back(std::move(e));
    }
    if (j.contains("selected") && !j["selected"].is_null()) {
      r.selected = plan_from_json(j["selected"]);
    }
    if (j.contains("infeasibility")) {
      for (const auto& [k, v] : j["infeasibility"].items()) {
        r.infeasibility.emplace_back(k, v.get<std::string>());
      }
    }
  } catch (const json::exception& e) {
    throw IoError("malformed plan file " + path + ": " + e.what());
  }
  return r;
}

void save_plan_report(const PlanReport& report, const std::string& path) {
  write_text_file(path, plan_report_to_json(report));
}

std::string plan_report_table(const PlanReport& report) {
  // Best feasible row per method (by the report's metric), plus its omega.
  struct Row {
    std::string method;
    double omega = 0.0;
    const MethodPlan* plan = nullptr;
    std::string note;
  };
  std::vector<Row> rows;
  for (const PlanEntry& e : report.per_method_per_omega) {
    const std::string name = method_name(e.plan.method);
    Row* row = nullptr;
    for (Row& r : rows) {
      if (r.method == name) row = &r;
    }
    if (row == nullptr) {
      rows.push_back({name, e.omega, nullptr, e.plan.note});
      row = &rows.back();
    }
    if (!e.plan.feasible) {
      if (row->plan == nullptr && !e.plan.note.empty()) row->note = e.plan.note;
      continue;
    }
    auto metric_of = [&](const MethodPlan& p) {
      return report.metric == SelectionMetric::CnotCount ? p.resources.cnot_count
                                                         : p.resources.t_count;
    };
    if (row->plan == nullptr || metric_of(e.plan) < metric_of(*row->plan)) {
      row->plan = &e.plan;
      row->omega = e.omega;
    }
  }
  std::ostringstream out;
  out << std::left << std::setw(16) << "method" << std::right << std::setw(7) << "omega"
      << std::setw(12) << "T" << std::setw(12) << "CNOT" << std::setw(10) << "rot"
      << std::setw(10) << "toffoli" << std::setw(8) << "qubits" << std::setw(13) << "eps_a_pred"
      << "  note\n";
  for (const Row& r : rows) {
    const bool is_selected = report.selected.has_value() && r.plan != nullptr &&
                             method_name(report.selected->method) == r.method &&
                             report.selected->budget.omega == r.plan->budget.omega;
    out << std::left << std::setw(16) << ((is_selected ? "* " : "  ") + r.method);
    if (r.plan == nullptr) {
      out << std::right << std::setw(7) << "-" << std::setw(12) << "-" << std::setw(12) << "-"
          << std::setw(10) << "-" << std::setw(10) << "-" << std::setw(8) << "-" << std::setw(13)
          << "-" << "  " << (r.note.empty() ? "infeasible at every omega" : r.note) << "\n";
      continue;
    }
    std::ostringstream eps;
    eps << std::scientific << std::setprecision(2) << r.plan->eps_a_predicted;
    out << std::right << std::setw(7) << std::fixed << std::setprecision(2) << r.omega
        << std::setw(12) << r.plan->resources.t_count << std::setw(12)
        << r.plan->resources.cnot_count << std::setw(10) << r.plan->resources.rotation_count
        << std::setw(10) << r.plan->resources.toffoli_count << std::setw(8)
        << r.plan->resources.total_qubits << std::setw(13) << eps.str() << "\n";
  }
  if (!report.selected.has_value()) {
    out << "no feasible plan at this budget\n";
  }
  return out.str();
}

std::string verification_to_json(const VerificationRecord& rec) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = rec.method;
  j["achieved_error"] = rec.achieved_error;
  j["bound"] = rec.bound;
  j["pass"] = rec.pass;
  j["norm"] = rec.norm;
  j["at_scale"] = rec.at_scale;
  return j.dump(2) + "\n";
}

void save_verification(const VerificationRecord& rec, const std::string& path) {
  write_text_file(path, verification_to_json(rec));
}

std::string kl_curve_csv(const std::vector<std::pair<std::string, KlCurve>>& curves,
                         std::uint64_t study_seed, double tol) {
  std::ostringstream out;
  out << "# KL(p||q) between the true measurement distribution p and the smoothed\n";
  out << "# empirical distribution qhat_j = (count_j/shots + delta) / (1 + K*delta),\n";
  out << "# delta = 1/(10*shots), over the full K-outcome space. Natural log.\n";
  out << "# study_seed=" << study_seed << " tolerance=" << fmt_double(tol)
      << " (mean over trials must reach <= tolerance)\n";
  out << "transform,shots,trial,kl,seed\n";
  for (const auto& [name, curve] : curves) {
    for (const KlSample& s : curve.samples) {
      out << name << "," << s.shots << "," << s.trial << "," << fmt_double(s.kl) << "," << s.seed
          << "\n";
    }
  }
  for (const auto& [name, curve] : curves) {
    out << "# shots_to_tolerance[" << name << "]=" << curve.shots_to_tolerance << "\n";
  }
  return out.str();
}

std::string sha256_bytes(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 digest failure");
  }
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(digest[i]);
  return hex.str();
}

std::string sha256_file(const std::string& path) { return sha256_bytes(read_text_file(path)); }

void write_manifest(const std::string& out_path,
                    const std::vector<ManifestInput>& inputs,
                    const std::vector<std::pair<std::string, std::string>>& config,
                    const std::vector<std::string>& outputs) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  ordered_json tool;
  tool["name"] = kToolName;
  tool["version"] = kToolVersion;
  j["tool"] = tool;
  ordered_json ins = ordered_json::array();
  for (const ManifestInput& in : inputs) {
    ordered_json ij;
    ij["path"] = in.path;
    ij["sha256"] = in.sha256;
    ins.push_back(std::move(ij));
  }
  j["inputs"] = ins;
  ordered_json cfg;
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  j["outputs"] = outputs;
  write_text_file(out_path, j.dump(2) + "\n");
}

}  // namespace qdl
