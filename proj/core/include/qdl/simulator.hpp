// Dense statevector interpreter for the semantic IR, block extraction for
// encodings, plan verification, and the sampling / KL shot-count study.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdl/circuit.hpp"
#include "qdl/types.hpp"

namespace qdl {

struct SimLimits {
  int apply_qubits = 14;        // default refusal threshold for apply()
  int extract_qubits = 12;      // block extraction threshold
  static constexpr int hard_cap = 26;  // 2^26 amplitudes memory guard
};

// Basis convention: qubit 0 is the most significant index bit; system qubits
// precede ancilla qubits, so basis index = sys_value * 2^ancillas + anc_value.
struct StateVector {
  int n_qubits = 0;
  CVector amplitudes;

  static StateVector zero_state(int n_qubits);
};

// Applies the IR to the initial state. Rotations are exact (precision error
// is a cost-model concept); QROMLookup is a basis-indexed XOR write;
// InPlaceAdder/ConstantAdder are modular; Comparator flips its flag on
// val(A) >= val(B); BlockGate applies its dense matrix or functional label.
// Throws ResourceError above the limits, ValidationError on malformed records.
StateVector apply(const CircuitIR& ir, const StateVector& initial,
                  const SimLimits& limits = {});

// <0_anc, i | U | 0_anc, j> as a dense 2^n_sys x 2^n_sys row-major matrix.
CVector extract_block(const CircuitIR& ir, int ancilla_count,
                      const SimLimits& limits = {});

struct VerificationRecord {
  std::string method;
  double achieved_error = 0.0;
  double bound = 0.0;
  bool pass = false;
  std::string norm;  // "l2" or "linf"
  bool at_scale = true;  // false => "unverified-at-scale"
};

// StatePrep: l2 between the simulated state and target (alias plans use the
// marginal-probability metric); DiagonalEncode: linf over the extracted block
// diagonal. Bound = eps_a_predicted + 1e-10. Returns at_scale=false instead
// of failing when the register exceeds the desk-scale limits.
VerificationRecord verify_plan(const MethodPlan& plan, const CircuitIR& ir,
                               const TargetVector& target,
                               const SimLimits& limits = {});

}  // namespace qdl
