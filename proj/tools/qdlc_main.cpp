// qdlc: plan / synthesize / verify / bench front-end over the qdl library.
// Exit codes: 0 ok, 1 usage or IO error, 2 infeasible (or failed
// verification), 3 unverified-at-scale.
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qdl/blockenc.hpp"
#include "qdl/diagenc.hpp"
#include "qdl/io.hpp"
#include "qdl/metrics.hpp"
#include "qdl/planner.hpp"
#include "qdl/sampling.hpp"
#include "qdl/simulator.hpp"
#include "qdl/stateprep.hpp"

namespace {

using namespace qdl;

struct CliConfig {
  std::string input;
  std::string plan_path;
  std::string circuit_path;
  std::string out;
  std::string task;
  std::string methods;
  std::string cost_model;
  std::string metric = "t-count";
  std::string bench_method = "mottonen";
  double epsilon = 1e-3;
  double omega_step = 0.05;
  int hybrid_depth = 0;
  int emit_limit = 24;
  int bench_qubits = 0;
  std::uint64_t seed = 12345;
};

SelectionMetric parse_metric(const std::string& name) {
  if (name == "t-count") return SelectionMetric::TCount;
  if (name == "cnot-count") return SelectionMetric::CnotCount;
  if (name == "weighted-sum") return SelectionMetric::WeightedSum;
  throw ValidationError("unknown metric: " + name);
}

std::vector<Method> parse_methods(const std::string& csv) {
  std::vector<Method> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(method_from_name(item));
  }
  return out;
}

CostConfig load_cost_config(const CliConfig& cfg) {
  if (cfg.cost_model.empty()) return {};
  return cost_config_from_json_file(cfg.cost_model);
}

PlanRequest build_request(const CliConfig& cfg, const TargetVector& target) {
  PlanRequest req;
  req.target = target;
  req.epsilon = cfg.epsilon;
  req.omega_grid_step = cfg.omega_step;
  if (!cfg.methods.empty()) req.methods = parse_methods(cfg.methods);
  req.hybrid_max_depth = cfg.hybrid_depth;
  req.cost_config = load_cost_config(cfg);
  req.metric = parse_metric(cfg.metric);
  req.emit_qubit_limit = cfg.emit_limit;
  return req;
}

TargetVector load_input(const CliConfig& cfg) {
  TargetVector v = load_target(cfg.input);
  if (!cfg.task.empty()) v.task = task_from_name(cfg.task);
  return validate_target(v);
}

void emit_manifest(const std::string& out_path, const std::vector<std::string>& input_paths,
                   const std::vector<std::pair<std::string, std::string>>& config,
                   const std::vector<std::string>& outputs) {
  std::vector<ManifestInput> inputs;
  for (const std::string& p : input_paths) inputs.push_back({p, sha256_file(p)});
  write_manifest(out_path + ".manifest.json", inputs, config, outputs);
}

int cmd_plan(const CliConfig& cfg) {
  const TargetVector target = load_input(cfg);
  const PlanRequest req = build_request(cfg, target);
  const PlanReport report = cfg.hybrid_depth > 0 ? hybrid_plan(req) : sweep(req);
  save_plan_report(report, cfg.out);
  emit_manifest(cfg.out, {cfg.input},
                {{"command", "plan"},
                 {"epsilon", std::to_string(cfg.epsilon)},
                 {"omega_step", std::to_string(cfg.omega_step)},
                 {"metric", cfg.metric},
                 {"hybrid_depth", std::to_string(cfg.hybrid_depth)}},
                {cfg.out});
  std::cout << plan_report_table(report);
  if (!report.feasible()) {
    std::cout << "no feasible plan:\n";
    for (const auto& [m, why] : report.infeasibility)
      std::cout << "  " << m << ": " << why << "\n";
    return 2;
  }
  return 0;
}

int cmd_synthesize(const CliConfig& cfg) {
  const TargetVector target = load_input(cfg);
  const PlanReport report = plan_report_from_json_file(cfg.plan_path);
  if (!report.selected.has_value()) {
    std::cerr << "plan file has no selected method\n";
    return 2;
  }
  const MethodPlan& plan = *report.selected;
  SynthResult result;
  if (plan.method == Method::Hybrid) {
    CliConfig sub = cfg;
    sub.epsilon = plan.budget.epsilon;
    // The selected omega spans a sub-grid of the original sweep, so the
    // rescan reproduces the same winning partition.
    sub.omega_step = plan.budget.omega;
    sub.hybrid_depth = static_cast<int>(plan.hyperparams.at("depth"));
    PlanRequest req = build_request(sub, target);
    req.metric = report.metric;
    result = synthesize_hybrid(req);
  } else {
    result = synthesize_plan(plan, target, load_cost_config(cfg), cfg.emit_limit);
  }
  if (result.circuit.gates.empty()) {
    std::cerr << "selected plan has no circuit at this register size: " << result.plan.note
              << "\n";
    return 2;
  }
  save_circuit(result.circuit, cfg.out);
  emit_manifest(cfg.out, {cfg.input, cfg.plan_path},
                {{"command", "synthesize"}, {"method", method_name(result.plan.method)}},
                {cfg.out});
  std::cout << "synthesized " << method_name(result.plan.method) << ": "
            << result.circuit.gates.size() << " records, "
            << result.circuit.total_qubits() << " qubits\n";
  return 0;
}

int cmd_verify(const CliConfig& cfg) {
  const TargetVector target = load_input(cfg);
  const CircuitIR ir = load_circuit(cfg.circuit_path);
  MethodPlan plan;
  if (const std::string* m = ir.find_metadata("method")) plan.method = method_from_name(*m);
  if (const std::string* e = ir.find_metadata("eps_a_predicted"))
    plan.eps_a_predicted = std::stod(*e);
  if (const std::string* om = ir.find_metadata("omega")) plan.budget.omega = std::stod(*om);
  if (const std::string* ep = ir.find_metadata("epsilon"))
    plan.budget = make_budget(std::stod(*ep), plan.budget.omega);
  const VerificationRecord rec = verify_plan(plan, ir, target);
  save_verification(rec, cfg.out);
  emit_manifest(cfg.out, {cfg.input, cfg.circuit_path},
                {{"command", "verify"}, {"method", rec.method}}, {cfg.out});
  std::cout << verification_to_json(rec);
  if (!rec.at_scale) return 3;
  return rec.pass ? 0 : 2;
}

// ---------------------------------------------------------------------------
// Built-in bench profiles.
// ---------------------------------------------------------------------------

TargetVector gaussian_state(int n, double sigma) {
  TargetVector v;
  v.n_qubits = n;
  v.task = Task::StatePrep;
  const std::size_t dim = std::size_t{1} << n;
  v.amplitudes.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(dim);
    v.amplitudes[i] = std::exp(-(x - 0.5) * (x - 0.5) / (2.0 * sigma * sigma));
  }
  return validate_target(v);
}

// Sheared-flow profile: linear ramp with a 1% sinusoidal modulation.
RVector shear_profile(int n) {
  const std::size_t dim = std::size_t{1} << n;
  RVector f(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(dim);
    f[i] = (0.15 + 0.8 * x) * (1.0 + 0.01 * std::sin(2.0 * std::numbers::pi * x));
  }
  return f;
}

double parity_sign(long long mask, long long x) {
  return (std::popcount(static_cast<unsigned long long>(mask & x)) & 1) ? -1.0 : 1.0;
}

// Dyadically band-limited diagonal: exactly 64 Walsh terms over a constant
// phase offset, so the truncation order saturates at 64.
TargetVector walsh_band_diagonal(int n) {
  static const long long kMasks[64] = {
      1552, 224,  384,  546,  1184, 32,  1092, 96,  1048, 134,  532, 137, 48,
      577,  133,  1538, 324,  448,  50,  37,   1090, 644, 800,  545, 1032, 72,
      524,  1058, 392,  28,   144,  517, 66,   276, 266,  592,  1600, 1344, 521,
      1042, 196,  160,  516,  40,   41,  112,  576, 512,  49,   580, 161, 14,
      1160, 1027, 80,   1168, 19,   416, 288,  70,  280,  82,   1120, 9};
  const std::size_t dim = std::size_t{1} << n;
  const double root = std::sqrt(static_cast<double>(dim));
  TargetVector v;
  v.n_qubits = n;
  v.task = Task::DiagonalEncode;
  v.amplitudes.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    double g = std::numbers::pi / 2.0;
    for (int j = 0; j < 64; ++j) {
      const double c = std::max(0.35 * std::pow(0.937, j), 0.016);
      const double s = (j % 3 == 0) ? 1.0 : -1.0;
      g += s * c * parity_sign(kMasks[j], static_cast<long long>(x)) / root;
    }
    v.amplitudes[x] = std::cos(g / 2.0);
  }
  return validate_target(v);
}

// Shear profile plus dyadic-coherent fluctuations (Walsh-sparse but
// Fourier-spread), used by the sampling study.
TargetVector kl_study_state(int n) {
  static const long long kMasks[16] = {0b11110000000, 0b00011110000, 0b00000011110,
                                       0b10010010010, 0b01001001001, 0b11000110001,
                                       0b00110001100, 0b10101010000, 0b00001010101,
                                       0b11001100110, 0b10011001100, 0b01100110011,
                                       0b11100011100, 0b00111000111, 0b10101101000,
                                       0b01010010110};
  const std::size_t dim = std::size_t{1} << n;
  const double root = std::sqrt(static_cast<double>(dim));
  RVector f(dim);
  double norm = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(dim);
    f[i] = 0.30 + 0.65 * x;
    norm += f[i] * f[i];
  }
  norm = std::sqrt(norm);
  for (double& a : f) a /= norm;
  for (int m = 0; m < 16; ++m) {
    const double amp = 0.42 * std::pow(0.85, m);
    for (std::size_t i = 0; i < dim; ++i)
      f[i] += amp * parity_sign(kMasks[m], static_cast<long long>(i)) / root;
  }
  TargetVector v;
  v.n_qubits = n;
  v.task = Task::StatePrep;
  v.amplitudes.assign(f.begin(), f.end());
  return validate_target(v);
}

std::string csv_path(const CliConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out);
  return (std::filesystem::path(cfg.out) / name).string();
}

int bench_omega_curve(const CliConfig& cfg) {
  const int n = cfg.bench_qubits > 0 ? cfg.bench_qubits : 14;
  CliConfig sub = cfg;
  sub.methods.clear();
  const PlanRequest req = build_request(sub, gaussian_state(n, 0.9));
  const Method method = method_from_name(cfg.bench_method);
  const auto curve = omega_tradeoff_curve(req, method);
  std::ostringstream csv;
  csv << "# omega T-count trade-off, " << n << "-qubit gaussian(sigma=0.9), method="
      << cfg.bench_method << ", epsilon=" << cfg.epsilon << "\n";
  csv << "omega,t_count,cnot_count,feasible,eps_a_predicted\n";
  for (const OmegaCurvePoint& p : curve) {
    csv << p.omega << "," << p.t_count << "," << p.cnot_count << "," << (p.feasible ? 1 : 0)
        << "," << p.eps_a_predicted << "\n";
  }
  const std::string path = csv_path(cfg, "omega_curve.csv");
  write_text_file(path, csv.str());
  emit_manifest(path, {}, {{"command", "bench omega-curve"}, {"method", cfg.bench_method}},
                {path});
  std::cout << "wrote " << path << "\n";
  return 0;
}

int bench_mps_chi(const CliConfig& cfg) {
  std::ostringstream csv;
  csv << "# reconstruction error vs bond dimension, shear profile family\n";
  csv << "n,chi,error\n";
  for (int n = 11; n <= 14; ++n) {
    TargetVector v;
    v.n_qubits = n;
    v.task = Task::StatePrep;
    const RVector f = shear_profile(n);
    v.amplitudes.assign(f.begin(), f.end());
    v = validate_target(v);
    for (long long chi = 1; chi <= 64; chi <<= 1) {
      const MpsFactorization mps = mps_compress(v, chi);
      csv << n << "," << chi << "," << mps.truncation_error << "\n";
    }
  }
  const std::string path = csv_path(cfg, "mps_chi.csv");
  write_text_file(path, csv.str());
  emit_manifest(path, {}, {{"command", "bench mps-chi"}}, {path});
  std::cout << "wrote " << path << "\n";
  return 0;
}

int bench_walsh_kappa(const CliConfig& cfg) {
  const int n = cfg.bench_qubits > 0 ? cfg.bench_qubits : 11;
  const TargetVector diag = walsh_band_diagonal(n);
  RVector values(diag.amplitudes.size());
  RVector g(diag.amplitudes.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = diag.amplitudes[i].real();
    g[i] = 2.0 * std::acos(values[i]);
  }
  std::ostringstream csv;
  csv << "# diagonal linf error vs walsh truncation order, " << n
      << "-qubit band-limited fixture\n";
  csv << "kappa,linf_error\n";
  for (long long kappa = 1; kappa <= 96; ++kappa) {
    // Reconstruct from the kappa largest spectral terms (mean always kept).
    const RVector spectrum = walsh_transform(g);
    std::vector<long long> order;
    for (std::size_t k = 1; k < spectrum.size(); ++k) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](long long a, long long b) {
      return std::abs(spectrum[a]) > std::abs(spectrum[b]);
    });
    RVector pruned(spectrum.size(), 0.0);
    pruned[0] = spectrum[0];
    for (long long i = 0; i < kappa && i < static_cast<long long>(order.size()); ++i)
      pruned[order[i]] = spectrum[order[i]];
    const RVector recon = walsh_transform(pruned);
    double err = 0.0;
    for (std::size_t i = 0; i < recon.size(); ++i)
      err = std::max(err, std::abs(std::cos(recon[i] / 2.0) - values[i]));
    csv << kappa << "," << err << "\n";
  }
  const std::string path = csv_path(cfg, "walsh_kappa.csv");
  write_text_file(path, csv.str());
  emit_manifest(path, {}, {{"command", "bench walsh-kappa"}}, {path});
  std::cout << "wrote " << path << "\n";
  return 0;
}

std::vector<long long> default_shots_grid() {
  std::vector<long long> grid;
  double v = 10.0;
  while (v < 3.0e4) {
    grid.push_back(std::llround(v));
    v *= 1.3;
  }
  return grid;
}

int bench_kl_shots(const CliConfig& cfg) {
  const int n = cfg.bench_qubits > 0 ? cfg.bench_qubits : 11;
  const TargetVector state = kl_study_state(n);
  std::vector<std::pair<std::string, KlCurve>> curves;
  std::cout << "shots to mean KL <= 0.1 (seed " << cfg.seed << "):\n";
  for (MeasurementTransform t :
       {MeasurementTransform::Walsh, MeasurementTransform::QFT, MeasurementTransform::Identity}) {
    SamplingStudy study;
    study.distribution = transformed_distribution(state.amplitudes, t);
    study.transform = t;
    study.shots_grid = default_shots_grid();
    study.trials = 10;
    study.seed = cfg.seed;
    KlCurve curve = run_sampling_study(study, 0.1);
    std::cout << "  " << transform_name(t) << ": " << curve.shots_to_tolerance << "\n";
    curves.emplace_back(transform_name(t), std::move(curve));
  }
  const std::string path = csv_path(cfg, "kl_shots.csv");
  write_text_file(path, kl_curve_csv(curves, cfg.seed, 0.1));
  emit_manifest(path, {}, {{"command", "bench kl-shots"}, {"seed", std::to_string(cfg.seed)}},
                {path});
  std::cout << "wrote " << path << "\n";
  return 0;
}

int bench_method_table(const CliConfig& cfg) {
  const int n = cfg.bench_qubits > 0 ? cfg.bench_qubits : 11;
  CliConfig sub = cfg;
  sub.methods.clear();
  PlanRequest req = build_request(sub, gaussian_state(n, 0.5));
  req.methods = {Method::Mottonen, Method::QromStatePrep, Method::SparseSOS, Method::MPS,
                 Method::FSL, Method::AliasSampling};
  const PlanReport report = sweep(req);
  std::ostringstream csv;
  csv << "# best per-method resources, " << n << "-qubit gaussian(sigma=0.5), epsilon="
      << cfg.epsilon << "\n";
  csv << "method,omega,t_count,cnot_count,total_qubits,feasible\n";
  for (Method m : req.methods) {
    const PlanEntry* best = nullptr;
    for (const PlanEntry& e : report.per_method_per_omega) {
      if (e.plan.method != m) continue;
      if (!e.plan.feasible) continue;
      if (!best || e.plan.resources.t_count < best->plan.resources.t_count) best = &e;
    }
    if (best) {
      csv << method_name(m) << "," << best->omega << "," << best->plan.resources.t_count << ","
          << best->plan.resources.cnot_count << "," << best->plan.resources.total_qubits
          << ",1\n";
    } else {
      csv << method_name(m) << ",,,,,0\n";
    }
  }
  const std::string path = csv_path(cfg, "method_table.csv");
  write_text_file(path, csv.str());
  emit_manifest(path, {}, {{"command", "bench method-table"}}, {path});
  std::cout << plan_report_table(report);
  std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdlc: resource-aware quantum data-loading compiler"};
  app.require_subcommand(1);
  CliConfig cfg;

  CLI::App* plan = app.add_subcommand("plan", "sweep methods x omega and pick a plan");
  plan->add_option("--input", cfg.input, "target vector JSON")->required();
  plan->add_option("--task", cfg.task, "state-prep or diagonal (overrides the file)");
  plan->add_option("--epsilon", cfg.epsilon, "total error budget")->required();
  plan->add_option("--omega-step", cfg.omega_step, "omega grid step (default 0.05)");
  plan->add_option("--methods", cfg.methods, "comma-separated allowlist");
  plan->add_option("--hybrid-depth", cfg.hybrid_depth, "max dyadic split depth (0 = flat)");
  plan->add_option("--cost-model", cfg.cost_model, "cost model JSON");
  plan->add_option("--metric", cfg.metric, "t-count | cnot-count | weighted-sum");
  plan->add_option("--emit-limit", cfg.emit_limit, "qubit threshold for IR emission");
  plan->add_option("--out", cfg.out, "plan report path")->required();

  CLI::App* synth = app.add_subcommand("synthesize", "emit the selected plan's circuit");
  synth->add_option("--plan", cfg.plan_path, "plan report JSON")->required();
  synth->add_option("--input", cfg.input, "target vector JSON")->required();
  synth->add_option("--task", cfg.task, "state-prep or diagonal (overrides the file)");
  synth->add_option("--cost-model", cfg.cost_model, "cost model JSON");
  synth->add_option("--emit-limit", cfg.emit_limit, "qubit threshold for IR emission");
  synth->add_option("--out", cfg.out, "circuit path")->required();

  CLI::App* verify = app.add_subcommand("verify", "simulate a circuit against its target");
  verify->add_option("--circuit", cfg.circuit_path, "circuit JSON")->required();
  verify->add_option("--input", cfg.input, "target vector JSON")->required();
  verify->add_option("--task", cfg.task, "state-prep or diagonal (overrides the file)");
  verify->add_option("--out", cfg.out, "verification record path")->required();

  CLI::App* bench = app.add_subcommand("bench", "run a built-in study and write CSVs");
  std::string kind;
  bench->add_option("kind", kind, "omega-curve | mps-chi | walsh-kappa | kl-shots | method-table")
      ->required();
  bench->add_option("--out", cfg.out, "output directory")->required();
  bench->add_option("--epsilon", cfg.epsilon, "total error budget");
  bench->add_option("--qubits", cfg.bench_qubits, "override the profile size");
  bench->add_option("--method", cfg.bench_method, "method for omega-curve");
  bench->add_option("--seed", cfg.seed, "study seed");
  bench->add_option("--cost-model", cfg.cost_model, "cost model JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (plan->parsed()) return cmd_plan(cfg);
    if (synth->parsed()) return cmd_synthesize(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (bench->parsed()) {
      if (kind == "omega-curve") return bench_omega_curve(cfg);
      if (kind == "mps-chi") return bench_mps_chi(cfg);
      if (kind == "walsh-kappa") return bench_walsh_kappa(cfg);
      if (kind == "kl-shots") return bench_kl_shots(cfg);
      if (kind == "method-table") return bench_method_table(cfg);
      std::cerr << "unknown bench kind: " << kind << "\n";
      return 1;
    }
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
