// Block encodings built from the diagonal encoders: the single-adder
// d-diagonal construction and the three-axis kinetic-energy operator.
#pragma once

#include <vector>

#include "qdl/synthesis.hpp"
#include "qdl/types.hpp"

namespace qdl {

struct DiagonalBand {
  long long shift = 0;   // signed; |shift| < 2^n
  double weight = 0.0;   // alpha_i > 0 (signs live in the entries)
  RVector entries;       // c_ij in [-1, 1], length 2^n
};

struct DDiagonalSpec {
  int n_qubits = 0;
  std::vector<DiagonalBand> diagonals;

  long long d() const { return static_cast<long long>(diagonals.size()); }
  double lcu_norm() const;  // lambda = sum alpha_i
};

// Emits Prep(sqrt(alpha/lambda)) -> shift lookup -> ONE in-place adder ->
// lookup uncompute -> unified diagonal encoding over (select, system) ->
// Prep^dagger. The zero-ancilla block equals sum alpha_i D_i / (lambda * s_d).
SynthResult synth_ddiagonal(const DDiagonalSpec& spec, const ErrorBudget& budget,
                            const SynthOptions& opts = {});

// Adders in the emitted circuit (always 1) versus the one-adder-per-diagonal
// baseline (d). Exposed for the resource-comparison report.
struct AdderCount {
  long long emitted = 1;
  long long baseline = 1;
};
AdderCount adder_count(const DDiagonalSpec& spec);

struct KineticSpec {
  int qubits_per_axis = 0;
  double omega = 1.0;  // cell volume

  double prefactor() const;  // (1/2) * (2*pi / omega^(1/3))^2
};

// Three-branch LCU of per-axis squared-coordinate diagonals, each an exact
// degree-2 polynomial encoding; block = prefactor*diag(x^2+y^2+z^2)/lambda_T.
SynthResult synth_kinetic(const KineticSpec& spec, const ErrorBudget& budget,
                          const SynthOptions& opts = {});

// Analytic diagonal the kinetic block must equal (before subnormalization
// division), length 2^(3n): prefactor * (x^2 + y^2 + z^2).
RVector kinetic_reference_diagonal(const KineticSpec& spec);

}  // namespace qdl
