// Diagonal-operator encoders: multiplexed-rotation (direct or lookup-based),
// polynomial signal processing, and Walsh-spectrum phase circuits.
#pragma once

#include <vector>

#include "qdl/synthesis.hpp"
#include "qdl/types.hpp"

namespace qdl {

// ---------------------------------------------------------------------------
// Solvers.
// ---------------------------------------------------------------------------

// delta_g = eps_p * 2^(-n/2) for the 2^n-branch diagonal multiplexer.
double solve_diag_mottonen(int n, double eps_p);

// delta_g = eps_p / sqrt(d) for a degree-d polynomial sequence.
double solve_qsp_delta(long long degree, double eps_p);

// ---------------------------------------------------------------------------
// Walsh machinery.
// ---------------------------------------------------------------------------

// Orthonormal fast Walsh-Hadamard transform (self-inverse). Index bit b of k
// selects the Z factor on the qubit carrying index bit b. Length must be a
// power of two (DimensionError otherwise).
RVector walsh_transform(const RVector& samples);

struct WalshSpectrum {
  RVector coefficients;                 // full orthonormal transform of g
  std::vector<long long> kept_indices;  // kappa largest |c_k|, k >= 1
  long long truncation_order = 0;       // kappa
  double linf_phase_error = 0.0;        // reconstruction error at this kappa
};

// Spectrum of the phase samples g_j = 2*arccos(alpha_j) with the smallest
// kappa (k>=1 terms; the mean term is always kept) reaching linf error <= tol.
WalshSpectrum walsh_select(const RVector& g, double tol);

// Standalone parity-phase primitive: CNOT ladder over the qubits with k_i = 1
// plus RZ(-2c) on the last of them, equal to exp(i*c * tensor Z^{k_i}).
// k = 0 yields a bare global phase record.
CircuitIR walsh_term_circuit(int n, long long k, double c);

// ---------------------------------------------------------------------------
// Polynomial diagonal spec.
// ---------------------------------------------------------------------------

enum class SignalEmbedding { SinEmbedding, LinearEmbedding };

struct QspDiagonalSpec {
  RVector chebyshev_coefficients;  // basis T_parity, T_parity+2, ..., T_d
  long long degree = 0;
  SignalEmbedding embedding = SignalEmbedding::SinEmbedding;
  CVector predicted_diagonal;
  double residual_linf = 0.0;
  bool feasible = true;
};

// Least-squares fit of the lowest parity-constrained Chebyshev polynomial with
// linf residual <= eps_a over all grid points; escalates degree up to
// max_degree. Infeasible fits are reported, not thrown.
QspDiagonalSpec qsp_fit(const RVector& values, SignalEmbedding embedding,
                        long long max_degree, double eps_a);

// ---------------------------------------------------------------------------
// Synthesizers (DiagonalEncode targets, real entries in [-1, 1]).
// ---------------------------------------------------------------------------

SynthResult synth_diag_multiplexer(const TargetVector& target, const ErrorBudget& budget,
                                   bool via_qrom = false, const SynthOptions& opts = {});

SynthResult synth_diag_qsp(const TargetVector& target, const ErrorBudget& budget,
                           long long max_degree = 64, const SynthOptions& opts = {});

struct WalshSynthOptions : SynthOptions {
  bool gray_code_order = false;  // adjacent-ladder CNOT cancellation
};

SynthResult synth_diag_walsh(const TargetVector& target, const ErrorBudget& budget,
                             const WalshSynthOptions& opts = {});

}  // namespace qdl
