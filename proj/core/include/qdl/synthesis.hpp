// Shared synthesizer plumbing: every synth_* returns a plan plus IR, and can
// run in estimate-only mode (plan without gates) above a register threshold.
#pragma once

#include "qdl/circuit.hpp"
#include "qdl/costmodel.hpp"
#include "qdl/types.hpp"

namespace qdl {

struct SynthOptions {
  // Above this many total qubits the synthesizer skips IR emission and
  // returns an empty circuit alongside the fully-populated plan.
  int emit_qubit_limit = 24;
  CostConfig cost;
};

struct SynthResult {
  MethodPlan plan;
  CircuitIR circuit;
};

}  // namespace qdl
