// Diagonal encoders built on one multiplexed rotation of an encoding ancilla:
// direct branch-per-entry form and the lookup-based angle-register form.
#include <algorithm>
#include <cmath>

#include "qdl/diagenc.hpp"
#include "qdl/metrics.hpp"
#include "synth_common.hpp"

namespace qdl {

double solve_diag_mottonen(int n, double eps_p) {
  if (n < 1) throw DomainError("need at least one qubit");
  if (!(eps_p > 0.0)) throw DomainError("precision budget must be positive");
  return eps_p * std::pow(2.0, -0.5 * n);
}

double solve_qsp_delta(long long degree, double eps_p) {
  if (degree < 0) throw DomainError("degree must be nonnegative");
  if (!(eps_p > 0.0)) throw DomainError("precision budget must be positive");
  return eps_p / std::sqrt(static_cast<double>(std::max<long long>(degree, 1)));
}

namespace detail {

RVector diagonal_entries(const TargetVector& target) {
  if (target.task != Task::DiagonalEncode) {
    throw ValidationError("diagonal encoder requires a diagonal task");
  }
  RVector values(target.dim());
  for (std::size_t i = 0; i < target.dim(); ++i) {
    if (std::abs(target.amplitudes[i].imag()) > 1e-12) {
      throw DomainError("diagonal entries must be real");
    }
    values[i] = std::clamp(target.amplitudes[i].real(), -1.0, 1.0);
  }
  return values;
}

}  // namespace detail

SynthResult synth_diag_multiplexer(const TargetVector& target, const ErrorBudget& budget,
                                   bool via_qrom, const SynthOptions& opts) {
  const int n = target.n_qubits;
  const RVector values = detail::diagonal_entries(target);
  RVector thetas(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) thetas[i] = 2.0 * std::acos(values[i]);

  const double delta = solve_diag_mottonen(n, budget.eps_p);
  int m = 0;
  if (via_qrom) {
    const double raw = std::log2(M_PI / budget.eps_p * std::pow(2.0, 0.5 * n));
    m = std::max(1, static_cast<int>(std::ceil(raw)));
  }

  SynthResult result;
  result.plan.method = via_qrom ? Method::QromDiag : Method::MottonenDiag;
  result.plan.hyperparams["delta_rotation"] = delta;
  if (via_qrom) result.plan.hyperparams["angle_bits"] = m;
  result.plan.eps_a_predicted = 0.0;
  result.plan.feasible = true;

  const int enc = n;  // encoding ancilla sits right after the system register
  const int registers = n + 1 + (via_qrom ? m : 0);
  if (registers <= opts.emit_qubit_limit) {
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    ir.num_ancilla_qubits = 1 + (via_qrom ? m : 0);
    GateRecord lookup;
    if (via_qrom) {
      lookup.kind = GateKind::QROMLookup;
      for (int q = 0; q < n; ++q) lookup.controls.emplace_back(q, true);
      for (int b = 0; b < m; ++b) lookup.targets.push_back(n + 1 + b);
      lookup.table.resize(values.size());
      // Codes live on a 4*pi grid (full rotation period, no sign wraps).
      const double scale = std::pow(2.0, m) / (4.0 * M_PI);
      for (std::size_t i = 0; i < thetas.size(); ++i) {
        long long code = std::llround(thetas[i] * scale) % (1LL << m);
        if (code < 0) code += 1LL << m;
        lookup.table[i] = code;
      }
      ir.gates.push_back(lookup);
    }
    GateRecord rot;
    rot.kind = GateKind::MultiplexedRY;
    rot.targets = {enc};
    for (int q = 0; q < n; ++q) rot.controls.emplace_back(q, true);
    rot.params = thetas;
    bool all_zero = true;
    for (double t : thetas) all_zero &= t == 0.0;
    if (via_qrom && !all_zero) rot.cost_hint = "phase-gradient(" + std::to_string(m) + ")";
    ir.gates.push_back(std::move(rot));
    if (via_qrom) ir.gates.push_back(lookup);  // uncompute the angle register
  } else {
    ResourceEstimate acc;
    acc.total_qubits = registers;
    if (via_qrom) {
      const QromCost qc = qrom_cost(static_cast<long long>(values.size()), m, opts.cost);
      acc.toffoli_count += 2 * qc.toffolis + 2 * m;
      acc.cnot_count += 2 * qc.cnots;
      acc.ancilla_qubits += qc.ancillas;
      acc.total_qubits += qc.ancillas;
      acc.t_count = acc.toffoli_count * opts.cost.toffoli_t_cost;
    } else {
      const long long branches = 1LL << n;
      acc.rotation_count = branches;
      acc.cnot_count = branches;
      acc.t_count = branches * t_count_for_rotation(delta, opts.cost);
    }
    result.plan.resources = acc;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
