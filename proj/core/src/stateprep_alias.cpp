// Alias sampling: quantize the distribution into equal blocks, pair surplus
// with deficit columns, then draw (column, block) uniformly and swap in the
// alias destination when the block index clears the column threshold.
#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "qdl/metrics.hpp"
#include "qdl/stateprep.hpp"
#include "synth_common.hpp"

namespace qdl {

AliasTable build_alias_table(const RVector& probabilities, int mu) {
  if (mu < 1) throw DomainError("block resolution must be at least one bit");
  const long long l = static_cast<long long>(probabilities.size());
  if (l <= 0) throw DimensionError("empty distribution");
  double mass = 0.0;
  for (double p : probabilities) {
    if (p < 0.0) throw DomainError("negative probability");
    mass += p;
  }
  if (mass <= 0.0) throw DegenerateInputError("zero-mass distribution");

  // Largest-remainder rounding to l * 2^mu blocks (ties to the lower index).
  const long long capacity = 1LL << mu;
  const long long total = l * capacity;
  std::vector<long long> blocks(l);
  std::vector<std::pair<double, long long>> remainders(l);
  long long assigned = 0;
  for (long long i = 0; i < l; ++i) {
    const double exact = probabilities[i] / mass * static_cast<double>(total);
    blocks[i] = static_cast<long long>(std::floor(exact));
    remainders[i] = {exact - std::floor(exact), i};
    assigned += blocks[i];
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (long long k = 0; k < total - assigned; ++k) blocks[remainders[k].second] += 1;

  AliasTable table;
  table.mu = mu;
  table.thresholds.assign(l, capacity);
  table.destinations.resize(l);
  std::iota(table.destinations.begin(), table.destinations.end(), 0);
  std::queue<long long> deficit, surplus;
  std::vector<long long> fill = blocks;
  for (long long i = 0; i < l; ++i) {
    if (fill[i] < capacity) deficit.push(i);
    if (fill[i] > capacity) surplus.push(i);
  }
  while (!deficit.empty() && !surplus.empty()) {
    const long long s = deficit.front();
    deficit.pop();
    const long long g = surplus.front();
    table.thresholds[s] = fill[s];
    table.destinations[s] = g;
    fill[g] -= capacity - fill[s];
    if (fill[g] < capacity) {
      surplus.pop();
      deficit.push(g);
    } else if (fill[g] == capacity) {
      surplus.pop();
    }
  }
  table.reconstructed.resize(l);
  for (long long i = 0; i < l; ++i) {
    table.reconstructed[i] = static_cast<double>(blocks[i]) / static_cast<double>(total);
  }
  return table;
}

SynthResult synth_alias(const TargetVector& target, const ErrorBudget& budget,
                        const SynthOptions& opts) {
  const int n = target.n_qubits;
  const std::size_t dim = target.dim();
  for (const Complex& a : target.amplitudes) {
    if (a.imag() != 0.0 || a.real() < 0.0) {
      throw UnsupportedError(
          "alias sampling loads classical distributions: amplitudes must be nonnegative reals");
    }
  }
  RVector p(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = std::norm(target.amplitudes[i]);
  const int mu = solve_alias_mu(budget.eps_p);
  const AliasTable table = build_alias_table(p, mu);
  double err2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double diff = table.reconstructed[i] - p[i];
    err2 += diff * diff;
  }

  SynthResult result;
  result.plan.method = Method::AliasSampling;
  result.plan.hyperparams["mu"] = mu;
  result.plan.hyperparams["delta_rotation"] = 1.0;
  result.plan.eps_a_predicted = std::sqrt(err2);
  result.plan.feasible = result.plan.eps_a_predicted <= budget.eps_a + 1e-10;

  // Registers: system | uniform block | threshold (mu+1 bits) | destination | flag.
  const int uniform0 = n;
  const int threshold0 = n + mu;
  const int dest0 = n + 2 * mu + 1;
  const int flag = 2 * n + 2 * mu + 1;
  const int total_qubits = flag + 1;
  std::vector<long long> packed(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    packed[i] = (table.thresholds[i] << n) | table.destinations[i];
  }

  if (total_qubits <= opts.emit_qubit_limit) {
    CircuitIR& ir = result.circuit;
    ir.num_system_qubits = n;
    ir.num_ancilla_qubits = total_qubits - n;
    auto h_on = [&](int q) {
      GateRecord g;
      g.kind = GateKind::H;
      g.targets = {q};
      ir.gates.push_back(std::move(g));
    };
    for (int q = 0; q < n; ++q) h_on(q);
    for (int b = 0; b < mu; ++b) h_on(uniform0 + b);
    {
      GateRecord g;
      g.kind = GateKind::QROMLookup;
      for (int q = 0; q < n; ++q) g.controls.emplace_back(q, true);
      for (int b = 0; b <= mu; ++b) g.targets.push_back(threshold0 + b);
      for (int q = 0; q < n; ++q) g.targets.push_back(dest0 + q);
      g.table = packed;
      ir.gates.push_back(std::move(g));
    }
    {
      GateRecord g;
      g.kind = GateKind::Comparator;
      for (int b = 0; b < mu; ++b) g.controls.emplace_back(uniform0 + b, true);
      for (int b = 0; b <= mu; ++b) g.controls.emplace_back(threshold0 + b, true);
      g.targets = {flag};
      g.table = {mu};
      ir.gates.push_back(std::move(g));
    }
    for (int q = 0; q < n; ++q) {
      GateRecord g;
      g.kind = GateKind::CSwap;
      g.targets = {q, dest0 + q};
      g.controls.emplace_back(flag, true);
      ir.gates.push_back(std::move(g));
    }
  } else {
    ResourceEstimate acc;
    acc.total_qubits = total_qubits;
    long long live = 0;
    for (long long w : packed) live += w != 0 ? 1 : 0;
    if (live > 0) {
      const QromCost qc = qrom_cost(live, mu + 1 + n, opts.cost);
      acc.toffoli_count += qc.toffolis;
      acc.cnot_count += qc.cnots;
      acc.ancilla_qubits += qc.ancillas;
      acc.total_qubits += qc.ancillas;
    }
    acc.toffoli_count += mu + 1;               // comparator
    acc.toffoli_count += n;                    // one per controlled swap
    acc.cnot_count += 2LL * n;
    acc.t_count = acc.toffoli_count * opts.cost.toffoli_t_cost;
    result.plan.resources = acc;
    result.plan.note = "estimate only: register exceeds the emission limit";
  }
  detail::finalize_with_circuit(result, budget, opts, 1.0);
  const std::string garbage_note =
      "coefficient state carries an entangled garbage register (LCU Prep usage)";
  result.plan.note = result.plan.note.empty() ? garbage_note : result.plan.note + "; " + garbage_note;
  return result;
}

}  // namespace qdl
