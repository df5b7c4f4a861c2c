// Internal synthesizer plumbing shared across methods (not installed).
#pragma once

#include <string>
#include <vector>

#include "qdl/circuit.hpp"
#include "qdl/costmodel.hpp"
#include "qdl/stateprep.hpp"
#include "qdl/types.hpp"

namespace qdl::detail {

// Appends the multiplexed-rotation cascade preparing `amps` (length 2^|qubits|,
// automatically normalized) on the listed qubits from |0...0>. Angles are
// exact; real inputs use signed rotations and emit no phase layer. Any global
// phase lands in ir.global_phase.
void append_prep_cascade(CircuitIR& ir, const std::vector<int>& qubits, const CVector& amps);

// Zero-pads to the next power of two (lookups and prep registers).
template <typename T>
std::vector<T> pad_pow2(std::vector<T> v) {
  std::size_t cap = 1;
  while (cap < v.size()) cap <<= 1;
  v.resize(cap, T{});
  return v;
}

inline int ceil_log2ll(long long v) {
  int b = 0;
  while ((1LL << b) < v) ++b;
  return b;
}

// Generic per-rotation tolerance: eps_p spread in quadrature over the
// circuit's synthesized-rotation count (delta = eps_p / sqrt(max(R, 1))).
double rotation_budget(const CircuitIR& ir, const CostConfig& cfg, double eps_p);

// Real diagonal entries clamped to [-1, 1]; rejects non-diagonal tasks and
// complex-valued entries.
RVector diagonal_entries(const TargetVector& target);

// Common plan assembly: fills budget/feasibility and, when the register fits
// under opts.emit_qubit_limit, estimates from the emitted circuit; otherwise
// the caller's closed-form estimate stands and the circuit is dropped.
void finalize_with_circuit(SynthResult& result, const ErrorBudget& budget,
                           const SynthOptions& opts, double delta_g);

}  // namespace qdl::detail
