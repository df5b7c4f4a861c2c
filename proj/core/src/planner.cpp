// Budget-split grid search over methods, cost-minimal selection, and dyadic
// hybrid partitioning with prefix-controlled segments.
#include "qdl/planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdl/circuit.hpp"
#include "qdl/costmodel.hpp"
#include "qdl/diagenc.hpp"
#include "qdl/metrics.hpp"
#include "qdl/stateprep.hpp"
#include "synth_common.hpp"

namespace qdl {
namespace {

bool is_state_prep_method(Method m) {
  switch (m) {
    case Method::Mottonen:
    case Method::QromStatePrep:
    case Method::SparseSOS:
    case Method::MPS:
    case Method::FSL:
    case Method::AliasSampling:
    case Method::Hybrid:
      return true;
    default:
      return false;
  }
}

bool method_matches_task(Method m, Task task) {
  return task == Task::StatePrep ? is_state_prep_method(m) : !is_state_prep_method(m);
}

SynthResult dispatch(Method m, const TargetVector& target, const ErrorBudget& budget,
                     const SynthOptions& opts) {
  switch (m) {
    case Method::Mottonen:
      return synth_mottonen(target, budget, opts);
    case Method::QromStatePrep:
      return synth_qrom_stateprep(target, budget, true, opts);
    case Method::SparseSOS:
      return synth_sparse_sos(target, budget, opts);
    case Method::MPS:
      return synth_mps(target, budget, opts);
    case Method::FSL:
      return synth_fsl(target, budget, opts);
    case Method::AliasSampling:
      return synth_alias(target, budget, opts);
    case Method::MottonenDiag:
      return synth_diag_multiplexer(target, budget, false, opts);
    case Method::QromDiag:
      return synth_diag_multiplexer(target, budget, true, opts);
    case Method::QspDiag:
      return synth_diag_qsp(target, budget, 64, opts);
    case Method::WalshDiag: {
      WalshSynthOptions w;
      w.emit_qubit_limit = opts.emit_qubit_limit;
      w.cost = opts.cost;
      return synth_diag_walsh(target, budget, w);
    }
    case Method::Hybrid:
      break;
  }
  throw UnsupportedError("hybrid circuits are produced by synthesize_hybrid");
}

long long metric_value(SelectionMetric metric, const ResourceEstimate& r) {
  switch (metric) {
    case SelectionMetric::TCount:
      return r.t_count;
    case SelectionMetric::CnotCount:
      return r.cnot_count;
    case SelectionMetric::WeightedSum:
      return r.t_count + r.cnot_count;
  }
  return r.t_count;
}

long long secondary_value(SelectionMetric metric, const ResourceEstimate& r) {
  return metric == SelectionMetric::TCount ? r.cnot_count : r.t_count;
}

// Strict "a beats b": metric, then the other gate count, then peak width,
// then method declaration order. On full ties the incumbent stands, so the
// earliest entry in sweep order wins.
bool beats(SelectionMetric metric, const MethodPlan& a, const MethodPlan& b) {
  std::array<long long, 4> ka{metric_value(metric, a.resources),
                              secondary_value(metric, a.resources), a.resources.total_qubits,
                              static_cast<long long>(a.method)};
  std::array<long long, 4> kb{metric_value(metric, b.resources),
                              secondary_value(metric, b.resources), b.resources.total_qubits,
                              static_cast<long long>(b.method)};
  return ka < kb;
}

bool plan_is_feasible(const MethodPlan& p) {
  return p.feasible && p.eps_a_predicted <= p.budget.eps_a + 1e-10;
}

MethodPlan infeasible_plan(Method m, const ErrorBudget& budget, std::string note) {
  MethodPlan p;
  p.method = m;
  p.budget = budget;
  p.feasible = false;
  p.note = std::move(note);
  return p;
}

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// Fills report.selected from the feasible entries, or the per-method
// limiting-constraint summary when nothing survives.
void select_or_explain(PlanReport& report, const std::vector<Method>& methods) {
  const MethodPlan* best = nullptr;
  for (const PlanEntry& e : report.per_method_per_omega) {
    if (!plan_is_feasible(e.plan)) continue;
    if (!best || beats(report.metric, e.plan, *best)) best = &e.plan;
  }
  if (best) {
    report.selected = *best;
    report.infeasibility.clear();
    return;
  }
  for (Method m : methods) {
    const PlanEntry* closest = nullptr;
    double closest_gap = 0.0;
    for (const PlanEntry& e : report.per_method_per_omega) {
      if (e.plan.method != m) continue;
      double gap = e.plan.eps_a_predicted - e.plan.budget.eps_a;
      if (!closest || gap < closest_gap) {
        closest = &e;
        closest_gap = gap;
      }
    }
    if (!closest) continue;
    std::string why = closest->plan.note;
    if (why.empty()) {
      why = "closest approximation error " + fmt_double(closest->plan.eps_a_predicted) +
            " exceeds budget " + fmt_double(closest->plan.budget.eps_a) + " at omega=" +
            fmt_double(closest->omega);
    }
    report.infeasibility.emplace_back(method_name(m), why);
  }
}

}  // namespace

std::vector<Method> default_methods(Task task) {
  if (task == Task::StatePrep) {
    return {Method::Mottonen, Method::QromStatePrep, Method::SparseSOS, Method::MPS,
            Method::FSL};
  }
  return {Method::MottonenDiag, Method::QromDiag, Method::QspDiag, Method::WalshDiag};
}

std::vector<double> omega_grid(double step) {
  if (!(step > 0.0)) throw DomainError("omega grid step must be positive");
  std::vector<double> grid;
  for (int k = 1; k * step < 1.0 - 1e-12; ++k) grid.push_back(k * step);
  grid.push_back(1.0);
  return grid;
}

PlanReport sweep(const PlanRequest& request) {
  TargetVector target = validate_target(request.target);
  const std::vector<Method> methods =
      request.methods.empty() ? default_methods(target.task) : request.methods;
  const std::vector<double> grid = omega_grid(request.omega_grid_step);
  SynthOptions opts;
  opts.emit_qubit_limit = request.emit_qubit_limit;
  opts.cost = request.cost_config;

  PlanReport report;
  report.metric = request.metric;
  for (Method m : methods) {
    if (m == Method::Hybrid) {
      report.per_method_per_omega.push_back(
          {grid.front(), infeasible_plan(m, make_budget(request.epsilon, grid.front()),
                                         "hybrid plans are produced by hybrid_plan")});
      continue;
    }
    if (!method_matches_task(m, target.task)) {
      report.per_method_per_omega.push_back(
          {grid.front(),
           infeasible_plan(m, make_budget(request.epsilon, grid.front()),
                           method_name(m) + " does not apply to " + task_name(target.task))});
      continue;
    }
    for (double omega : grid) {
      ErrorBudget budget = make_budget(request.epsilon, omega);
      MethodPlan plan;
      try {
        plan = dispatch(m, target, budget, opts).plan;
      } catch (const Error& e) {
        plan = infeasible_plan(m, budget, e.what());
      }
      report.per_method_per_omega.push_back({omega, std::move(plan)});
    }
  }
  select_or_explain(report, methods);
  return report;
}

SynthResult synthesize_plan(const MethodPlan& plan, const TargetVector& target,
                            const CostConfig& cost, int emit_qubit_limit) {
  TargetVector v = validate_target(target);
  if (plan.method == Method::Hybrid)
    throw UnsupportedError("hybrid circuits are produced by synthesize_hybrid");
  if (!method_matches_task(plan.method, v.task))
    throw ValidationError(method_name(plan.method) + " does not apply to " + task_name(v.task));
  SynthOptions opts;
  opts.emit_qubit_limit = emit_qubit_limit;
  opts.cost = cost;
  return dispatch(plan.method, v, plan.budget, opts);
}

std::vector<OmegaCurvePoint> omega_tradeoff_curve(const PlanRequest& request, Method method) {
  TargetVector target = validate_target(request.target);
  if (!method_matches_task(method, target.task))
    throw ValidationError(method_name(method) + " does not apply to " + task_name(target.task));
  SynthOptions opts;
  opts.emit_qubit_limit = request.emit_qubit_limit;
  opts.cost = request.cost_config;
  std::vector<OmegaCurvePoint> curve;
  for (double omega : omega_grid(request.omega_grid_step)) {
    OmegaCurvePoint pt;
    pt.omega = omega;
    try {
      MethodPlan plan = dispatch(method, target, make_budget(request.epsilon, omega), opts).plan;
      pt.t_count = plan.resources.t_count;
      pt.cnot_count = plan.resources.cnot_count;
      pt.feasible = plan_is_feasible(plan);
      pt.eps_a_predicted = plan.eps_a_predicted;
    } catch (const Error&) {
      pt.feasible = false;
    }
    curve.push_back(pt);
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Hybrid planning: split on the first `depth` qubits, plan each branch
// independently at the shared budget, wrap branch circuits with prefix
// controls, and glue with a weight-carrying prefix cascade.
// ---------------------------------------------------------------------------
namespace {

struct HybridSegment {
  long long prefix = 0;
  double weight = 0.0;
  MethodPlan plan;
  CircuitIR circuit;  // empty above the emission limit
};

struct HybridCandidate {
  MethodPlan plan;
  CircuitIR circuit;  // assembled; empty when any segment lacked IR
};

// Extra-control surcharge applied to a segment's closed-form estimate: every
// synthesized rotation doubles (control folded into the angle pair) and picks
// up a short Toffoli chain, or a 2^c multiplexer beyond three controls.
// Lookup-style gates fold prefix controls into their addressing for free.
ResourceEstimate wrap_estimate(const ResourceEstimate& r, int c, double delta_seg,
                               const CostConfig& cfg) {
  ResourceEstimate w = r;
  const long long rot = r.rotation_count;
  long long extra_cnot = 0;
  long long extra_toff = 0;
  long long factor = 1;
  if (c <= 3) {
    factor = 2;
    extra_cnot = 2 * rot;
    extra_toff = 2LL * (c - 1) * rot;
  } else {
    factor = 1LL << c;
    extra_cnot = (1LL << c) * rot;
  }
  w.rotation_count = rot * factor;
  w.cnot_count += extra_cnot;
  w.toffoli_count += extra_toff;
  w.t_count += (w.rotation_count - rot) * t_count_for_rotation(delta_seg, cfg) +
               extra_toff * cfg.toffoli_t_cost;
  return w;
}

double segment_delta(const MethodPlan& plan) {
  auto it = plan.hyperparams.find("delta_rotation");
  return it == plan.hyperparams.end() ? 1.0 : it->second;
}

// Plans one normalized branch over the flat state-prep allowlist at a fixed
// budget; returns the metric-minimal feasible result.
std::optional<SynthResult> plan_segment(const TargetVector& seg, const ErrorBudget& budget,
                                        SelectionMetric metric, const SynthOptions& opts) {
  std::optional<SynthResult> best;
  for (Method m : default_methods(Task::StatePrep)) {
    SynthResult r;
    try {
      r = dispatch(m, seg, budget, opts);
    } catch (const Error&) {
      continue;
    }
    if (!plan_is_feasible(r.plan)) continue;
    if (!best || beats(metric, r.plan, best->plan)) best = std::move(r);
  }
  return best;
}

std::optional<HybridCandidate> build_hybrid_candidate(const PlanRequest& request,
                                                      const TargetVector& target, int depth,
                                                      double omega, std::string& fail_note) {
  const int n = target.n_qubits;
  const int tail = n - depth;
  const long long branches = 1LL << depth;
  const long long tail_dim = 1LL << tail;
  const ErrorBudget budget = make_budget(request.epsilon, omega);
  SynthOptions opts;
  opts.emit_qubit_limit = request.emit_qubit_limit;
  opts.cost = request.cost_config;

  std::vector<double> weights(static_cast<std::size_t>(branches), 0.0);
  long long live = 0;
  for (long long c = 0; c < branches; ++c) {
    double p = 0.0;
    for (long long j = 0; j < tail_dim; ++j) p += std::norm(target.amplitudes[c * tail_dim + j]);
    weights[c] = std::sqrt(p);
    if (weights[c] > 0.0) ++live;
  }

  // Segments and the prefix cascade share eps_p in quadrature; each branch
  // keeps the full approximation share (branch errors add in quadrature under
  // the branch weights, which are themselves bounded by one).
  ErrorBudget seg_budget;
  seg_budget.eps_p = budget.eps_p / std::sqrt(static_cast<double>(live) + 1.0);
  seg_budget.eps_a = budget.eps_a;
  seg_budget.epsilon = seg_budget.eps_p + seg_budget.eps_a;
  seg_budget.omega = seg_budget.eps_p / seg_budget.epsilon;

  std::vector<HybridSegment> segments;
  bool all_emitted = true;
  for (long long c = 0; c < branches; ++c) {
    if (weights[c] <= 0.0) continue;
    TargetVector seg;
    seg.n_qubits = tail;
    seg.task = Task::StatePrep;
    seg.amplitudes.assign(target.amplitudes.begin() + c * tail_dim,
                          target.amplitudes.begin() + (c + 1) * tail_dim);
    for (Complex& a : seg.amplitudes) a /= weights[c];
    std::optional<SynthResult> planned = plan_segment(seg, seg_budget, request.metric, opts);
    if (!planned) {
      fail_note = "branch " + std::to_string(c) + " of depth-" + std::to_string(depth) +
                  " split has no feasible method";
      return std::nullopt;
    }
    HybridSegment hs;
    hs.prefix = c;
    hs.weight = weights[c];
    hs.plan = std::move(planned->plan);
    hs.circuit = std::move(planned->circuit);
    if (hs.circuit.gates.empty() && tail > 0) all_emitted = false;
    segments.push_back(std::move(hs));
  }

  // Prefix cascade carrying branch weights and the segments' global phases
  // (zeroed on the wrapped copies). Estimate-only segments report no phase.
  CVector cascade_amps(static_cast<std::size_t>(branches), Complex(0.0, 0.0));
  for (const HybridSegment& s : segments)
    cascade_amps[s.prefix] = std::polar(s.weight, s.circuit.global_phase);
  CircuitIR cascade;
  cascade.num_system_qubits = depth;
  std::vector<int> prefix_qubits(depth);
  for (int q = 0; q < depth; ++q) prefix_qubits[q] = q;
  detail::append_prep_cascade(cascade, prefix_qubits, cascade_amps);

  double delta = detail::rotation_budget(cascade, opts.cost, seg_budget.eps_p);
  for (const HybridSegment& s : segments) delta = std::min(delta, segment_delta(s.plan));

  HybridCandidate cand;
  cand.plan.method = Method::Hybrid;
  cand.plan.budget = budget;
  cand.plan.hyperparams["depth"] = static_cast<double>(depth);
  cand.plan.hyperparams["segments"] = static_cast<double>(live);
  cand.plan.hyperparams["delta_rotation"] = delta;
  for (const HybridSegment& s : segments) {
    cand.plan.hyperparams["segment_" + std::to_string(s.prefix) + "_method"] =
        static_cast<double>(s.plan.method);
  }
  double err_sq = 0.0;
  for (const HybridSegment& s : segments)
    err_sq += s.weight * s.weight * s.plan.eps_a_predicted * s.plan.eps_a_predicted;
  cand.plan.eps_a_predicted = std::sqrt(err_sq);
  cand.plan.feasible = cand.plan.eps_a_predicted <= budget.eps_a + 1e-10;

  long long pool = 0;
  if (all_emitted) {
    for (const HybridSegment& s : segments)
      pool = std::max<long long>(pool, s.circuit.num_ancilla_qubits);
    CircuitIR full;
    full.num_system_qubits = n;
    full.num_ancilla_qubits = static_cast<int>(pool);
    full.global_phase = cascade.global_phase;
    full.gates = cascade.gates;
    for (const HybridSegment& s : segments) {
      CircuitIR wrapped = s.circuit;
      wrapped.global_phase = 0.0;
      auto remap = [&](int q) { return q < tail ? depth + q : n + (q - tail); };
      for (GateRecord& g : wrapped.gates) {
        for (int& q : g.targets) q = remap(q);
        for (auto& ctl : g.controls) ctl.first = remap(ctl.first);
      }
      std::vector<std::pair<int, bool>> prefix_controls;
      for (int q = 0; q < depth; ++q)
        prefix_controls.emplace_back(q, ((s.prefix >> (depth - 1 - q)) & 1) != 0);
      wrapped = add_controls(wrapped, prefix_controls);
      full.gates.insert(full.gates.end(), wrapped.gates.begin(), wrapped.gates.end());
    }
    SynthResult assembled;
    assembled.plan = cand.plan;
    assembled.circuit = std::move(full);
    detail::finalize_with_circuit(assembled, budget, opts, delta);
    assembled.plan.feasible = cand.plan.feasible;
    cand.plan = std::move(assembled.plan);
    cand.circuit = std::move(assembled.circuit);
    return cand;
  }

  // Closed-form accumulation: wrapped segment estimates plus the cascade,
  // ancillas drawn from a shared pool sized by the widest segment.
  ResourceEstimate acc = estimate_circuit(cascade, opts.cost, delta);
  for (const HybridSegment& s : segments) {
    ResourceEstimate w =
        wrap_estimate(s.plan.resources, depth, segment_delta(s.plan), opts.cost);
    acc.t_count += w.t_count;
    acc.cnot_count += w.cnot_count;
    acc.rotation_count += w.rotation_count;
    acc.toffoli_count += w.toffoli_count;
    pool = std::max(pool, s.plan.resources.ancilla_qubits);
  }
  acc.ancilla_qubits = pool;
  acc.total_qubits = n + pool;
  cand.plan.resources = acc;
  cand.plan.note = "estimate only: register exceeds the emission limit";
  return cand;
}

struct HybridScan {
  std::vector<PlanEntry> entries;
  std::optional<HybridCandidate> best;
};

HybridScan scan_hybrid(const PlanRequest& request, const TargetVector& target) {
  HybridScan scan;
  const int max_depth = std::min(request.hybrid_max_depth, target.n_qubits - 1);
  for (int depth = 1; depth <= max_depth; ++depth) {
    for (double omega : omega_grid(request.omega_grid_step)) {
      std::string fail_note;
      std::optional<HybridCandidate> cand;
      try {
        cand = build_hybrid_candidate(request, target, depth, omega, fail_note);
      } catch (const Error& e) {
        fail_note = e.what();
      }
      if (!cand) {
        scan.entries.push_back(
            {omega, infeasible_plan(Method::Hybrid, make_budget(request.epsilon, omega),
                                    fail_note)});
        continue;
      }
      scan.entries.push_back({omega, cand->plan});
      if (plan_is_feasible(cand->plan) &&
          (!scan.best || beats(request.metric, cand->plan, scan.best->plan)))
        scan.best = std::move(cand);
    }
  }
  return scan;
}

}  // namespace

PlanReport hybrid_plan(const PlanRequest& request) {
  TargetVector target = validate_target(request.target);
  if (target.task != Task::StatePrep)
    throw UnsupportedError("hybrid planning applies to state preparation only");
  PlanReport report = sweep(request);
  if (request.hybrid_max_depth <= 0) return report;

  HybridScan scan = scan_hybrid(request, target);
  report.per_method_per_omega.insert(report.per_method_per_omega.end(), scan.entries.begin(),
                                     scan.entries.end());
  if (scan.best &&
      (!report.selected || beats(request.metric, scan.best->plan, *report.selected))) {
    report.selected = scan.best->plan;
    report.infeasibility.clear();
  }
  return report;
}

SynthResult synthesize_hybrid(const PlanRequest& request) {
  TargetVector target = validate_target(request.target);
  if (target.task != Task::StatePrep)
    throw UnsupportedError("hybrid planning applies to state preparation only");
  if (request.hybrid_max_depth <= 0)
    throw DomainError("hybrid synthesis needs hybrid_max_depth >= 1");
  HybridScan scan = scan_hybrid(request, target);
  SynthResult result;
  if (!scan.best) {
    result.plan = infeasible_plan(Method::Hybrid, make_budget(request.epsilon, 1.0),
                                  "no feasible hybrid partition up to depth " +
                                      std::to_string(request.hybrid_max_depth));
    return result;
  }
  result.plan = scan.best->plan;
  result.circuit = scan.best->circuit;
  return result;
}

}  // namespace qdl
