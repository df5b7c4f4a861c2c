// Budget-split grid search over methods, feasibility filtering, cost-minimal
// selection, and hybrid dyadic partitioning.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdl/costmodel.hpp"
#include "qdl/synthesis.hpp"
#include "qdl/types.hpp"

namespace qdl {

enum class SelectionMetric { TCount, CnotCount, WeightedSum };

struct PlanRequest {
  TargetVector target;
  double epsilon = 0.0;
  double omega_grid_step = 0.05;
  std::vector<Method> methods;  // empty = task-default allowlist
  int hybrid_max_depth = 0;     // 0 = flat planning only
  CostConfig cost_config;
  SelectionMetric metric = SelectionMetric::TCount;
  int emit_qubit_limit = 24;
};

struct PlanEntry {
  double omega = 0.0;
  MethodPlan plan;
};

struct PlanReport {
  std::vector<PlanEntry> per_method_per_omega;
  std::optional<MethodPlan> selected;
  SelectionMetric metric = SelectionMetric::TCount;
  // Per-method limiting constraint when nothing is feasible.
  std::vector<std::pair<std::string, std::string>> infeasibility;

  bool feasible() const { return selected.has_value(); }
};

// Default method allowlist for a task. Alias sampling is excluded from
// state-prep defaults (entangled garbage register; opt in via the allowlist).
std::vector<Method> default_methods(Task task);

// The omega grid: linear with the given step over (0, 1], always ending at 1.
std::vector<double> omega_grid(double step);

// Full (omega x method) sweep in estimate-only mode; metric-minimal feasible
// plan wins, ties broken by fewer total qubits then method order.
PlanReport sweep(const PlanRequest& request);

// Re-synthesizes the selected plan's method at its budget, with IR emission.
SynthResult synthesize_plan(const MethodPlan& plan, const TargetVector& target,
                            const CostConfig& cost, int emit_qubit_limit = 24);

struct OmegaCurvePoint {
  double omega = 0.0;
  long long t_count = 0;
  long long cnot_count = 0;
  bool feasible = false;
  double eps_a_predicted = 0.0;
};

// Per-omega T-count curve for a single method (CSV-ready).
std::vector<OmegaCurvePoint> omega_tradeoff_curve(const PlanRequest& request,
                                                  Method method);

// Dyadic-split hybrid planning (StatePrep only). Each segment is planned
// independently, wrapped with prefix controls (costed with the documented
// surcharge), and glued by a prefix multiplexer cascade carrying the segment
// weights. Returns the hybrid plan iff it beats the best flat plan.
PlanReport hybrid_plan(const PlanRequest& request);

// Builds the hybrid circuit for a report produced by hybrid_plan at desk
// scale (used by verification tests).
SynthResult synthesize_hybrid(const PlanRequest& request);

}  // namespace qdl
