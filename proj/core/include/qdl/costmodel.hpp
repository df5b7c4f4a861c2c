// Clifford+T resource accounting: rotation-synthesis T-counts, QROM
// SelectSwap costs, and whole-circuit estimation. Every formula here is
// documented in the generated COST_LEDGER.md.
#pragma once

#include <string>

#include "qdl/circuit.hpp"
#include "qdl/types.hpp"

namespace qdl {

struct CostConfig {
  double t_per_rotation_slope = 3.02;
  double t_per_rotation_offset = 1.77;
  int toffoli_t_cost = 4;  // 4 (ancilla-assisted) or 7 (strict unitary)
  // 0 = auto (power-of-two scan minimizing Toffolis); otherwise a fixed width.
  long long qrom_swap_width = 0;
  double adder_toffoli_per_bit = 2.0;
};

CostConfig cost_config_from_json_file(const std::string& path);
std::string cost_config_to_json(const CostConfig& cfg);

// ceil(slope*log2(1/delta_g) + offset), minimum 0. delta_g >= 1 is a free
// rotation (0); delta_g <= 0 throws DomainError.
long long t_count_for_rotation(double delta_g, const CostConfig& cfg = {});

struct QromCost {
  long long toffolis = 0;
  long long t_count = 0;
  long long cnots = 0;
  long long ancillas = 0;
  long long swap_width = 1;  // the lambda actually used
};

// SelectSwap lookup of num_entries words of bits_per_entry bits:
//   Toffolis = ceil(E/lambda) + b*(lambda-1), T = toffoli_t_cost * Toffolis,
//   CNOTs = 2*b*E, ancillas = b*lambda + ceil(log2 lambda).
QromCost qrom_cost(long long num_entries, long long bits_per_entry,
                   const CostConfig& cfg = {});

// Walks the IR and sums per-gate costs at the given per-rotation synthesis
// tolerance delta_g. See COST_LEDGER.md for the exact per-kind rules,
// including identity elision (all-zero rotation angles and all-zero lookup
// tables cost nothing) and the extra-control surcharge.
ResourceEstimate estimate_circuit(const CircuitIR& ir, const CostConfig& cfg,
                                  double delta_g);

// Markdown table of every rule above, rendered from the live defaults.
std::string cost_ledger_markdown(const CostConfig& cfg = {});

}  // namespace qdl
