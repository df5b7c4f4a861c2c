// Sparse select-and-map preparation: load the D kept amplitudes on a compact
// index register, write each kept basis index into the system by lookup, then
// erase the index register with a second lookup keyed on the system.
#include <algorithm>
#include <cmath>
#include <numeric>

#include "qdl/metrics.hpp"
#include "qdl/stateprep.hpp"
#include "synth_common.hpp"

namespace qdl {

namespace {

struct SparseSelection {
  std::vector<std::size_t> kept;  // ascending basis indices
  double truncation_error = 0.0;  // l2 of the renormalized kept state
  CVector predicted;
};

SparseSelection select_support(const TargetVector& target, double eps_a) {
  const std::size_t dim = target.dim();
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(target.amplitudes[a]) > std::abs(target.amplitudes[b]);
  });
  // err(D) = sqrt(2*(1 - r)), r = sqrt(prefix probability): exact for the
  // renormalized kept vector.
  double prefix = 0.0;
  std::size_t d = dim;
  for (std::size_t i = 0; i < dim; ++i) {
    prefix += std::norm(target.amplitudes[order[i]]);
    const double err = std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(std::min(prefix, 1.0)))));
    if (err <= eps_a + 1e-12) {
      d = i + 1;
      break;
    }
  }
  SparseSelection sel;
  sel.kept.assign(order.begin(), order.begin() + d);
  std::sort(sel.kept.begin(), sel.kept.end());
  sel.predicted.assign(dim, Complex(0.0, 0.0));
  const double r = std::sqrt(std::min(prefix, 1.0));
  for (std::size_t i : sel.kept) sel.predicted[i] = target.amplitudes[i];
  const double norm = l2_norm(sel.predicted);
  for (Complex& c : sel.predicted) c /= norm;
  sel.truncation_error = l2_distance(sel.predicted, target.amplitudes);
  (void)r;
  return sel;
}

}  // namespace

SynthResult synth_sparse_sos(const TargetVector& target, const ErrorBudget& budget,
                             const SynthOptions& opts) {
  const int n = target.n_qubits;
  const SparseSelection sel = select_support(target, budget.eps_a);
  const long long d = static_cast<long long>(sel.kept.size());
  const int r = detail::ceil_log2ll(d);

  SynthResult result;
  result.plan.method = Method::SparseSOS;
  result.plan.hyperparams["support"] = static_cast<double>(d);
  result.plan.hyperparams["index_bits"] = r;
  result.plan.eps_a_predicted = sel.truncation_error;
  result.plan.feasible = sel.truncation_error <= budget.eps_a + 1e-10;

  double delta = budget.eps_p;
  if (n + r <= opts.emit_qubit_limit) {
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    ir.num_ancilla_qubits = r;
    // Kept amplitudes on the index register (slot s <-> s-th kept index).
    if (r > 0) {
      CVector slots(std::size_t{1} << r, Complex(0.0, 0.0));
      for (long long s = 0; s < d; ++s) slots[s] = sel.predicted[sel.kept[s]];
      std::vector<int> index_qubits(r);
      for (int b = 0; b < r; ++b) index_qubits[b] = n + b;
      detail::append_prep_cascade(ir, index_qubits, slots);
    } else {
      // Single kept amplitude: only its phase matters.
      const Complex a = sel.predicted[sel.kept[0]];
      ir.global_phase += std::arg(a);
    }
    // Map: write the kept basis index into the system.
    {
      GateRecord map;
      map.kind = GateKind::QROMLookup;
      for (int b = 0; b < r; ++b) map.controls.emplace_back(n + b, true);
      for (int q = 0; q < n; ++q) map.targets.push_back(q);
      map.table.assign(std::size_t{1} << r, 0);
      for (long long s = 0; s < d; ++s) map.table[s] = static_cast<long long>(sel.kept[s]);
      ir.gates.push_back(std::move(map));
    }
    // Erase: keyed on the system, XOR the slot number back off the register.
    if (r > 0) {
      GateRecord clean;
      clean.kind = GateKind::QROMLookup;
      for (int q = 0; q < n; ++q) clean.controls.emplace_back(q, true);
      for (int b = 0; b < r; ++b) clean.targets.push_back(n + b);
      clean.table.assign(std::size_t{1} << n, 0);
      for (long long s = 0; s < d; ++s) clean.table[sel.kept[s]] = s;
      ir.gates.push_back(std::move(clean));
    }
    delta = detail::rotation_budget(ir, opts.cost, budget.eps_p);
  } else {
    // Closed form: prep cascade over r qubits (assume dense), one lookup of d
    // words of n bits, one erasing lookup of ~d nonzero words of r bits.
    ResourceEstimate acc;
    acc.total_qubits = n + r;
    const long long slots = 1LL << r;
    ResourceEstimate prep;
    prep.rotation_count = slots - 1;
    prep.cnot_count = std::max<long long>(slots - 2, 0);
    prep.total_qubits = n + r;
    delta = budget.eps_p / std::sqrt(static_cast<double>(std::max<long long>(prep.rotation_count, 1)));
    prep.t_count = prep.rotation_count * t_count_for_rotation(delta, opts.cost);
    acc += prep;
    if (d > 0) {
      const QromCost map = qrom_cost(d, n, opts.cost);
      ResourceEstimate e;
      e.toffoli_count = map.toffolis;
      e.t_count = map.t_count;
      e.cnot_count = map.cnots;
      e.ancilla_qubits = map.ancillas;
      e.total_qubits = n + r + map.ancillas;
      acc += e;
      if (r > 0) {
        const QromCost clean = qrom_cost(d, r, opts.cost);
        ResourceEstimate c;
        c.toffoli_count = clean.toffolis;
        c.t_count = clean.t_count;
        c.cnot_count = clean.cnots;
        c.ancilla_qubits = clean.ancillas;
        c.total_qubits = n + r + clean.ancillas;
        acc += c;
      }
    }
    result.plan.resources = acc;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  result.plan.hyperparams["delta_rotation"] = delta;
  detail::finalize_with_circuit(result, budget, opts, delta);
  return result;
}

}  // namespace qdl
