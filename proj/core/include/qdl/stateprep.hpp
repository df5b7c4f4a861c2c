// State-preparation synthesizers: multiplexed-rotation cascade, lookup-based
// cascade (optionally phase-gradient), sparse select-and-map, matrix-product
// factorization, Fourier-coefficient loading, and alias sampling.
#pragma once

#include <vector>

#include "qdl/synthesis.hpp"
#include "qdl/types.hpp"

namespace qdl {

// ---------------------------------------------------------------------------
// Hyperparameter solvers (closed-form precision bounds).
// ---------------------------------------------------------------------------

// Uniform per-rotation tolerance for the 2^n-1 rotation cascade:
// delta_g = eps_p / sqrt(2^n - 1).
double solve_mottonen(int n, double eps_p);

// Angle-register resolution: m = ceil(log2(pi * eps_p^-1 * sqrt(2^n - 1))).
int solve_qrom_bits(int n, double eps_p);

// Per-rotation tolerance for a block sequence with per-site bond dimensions:
// delta_g = eps_p / sqrt(4 * sum chi_k^2). Empty list throws DomainError.
double solve_mps_delta(const std::vector<long long>& bond_dims, double eps_p);

// Block-index resolution for alias sampling: mu = ceil(log2(1/eps_p)).
int solve_alias_mu(double eps_p);

// ---------------------------------------------------------------------------
// Classical preprocessing artifacts.
// ---------------------------------------------------------------------------

struct GroverRudolphAngles {
  // levels[k] holds 2^k RY angles: 2*arccos(sqrt(p_left/p_node)).
  std::vector<RVector> ry_levels;
  // Present for complex targets: multiplexed RZ phase levels plus a global
  // phase remainder.
  std::vector<RVector> rz_levels;
  double global_phase = 0.0;
  bool has_phases = false;
};

GroverRudolphAngles grover_rudolph_angles(const TargetVector& target);

struct MpsFactorization {
  // tensors[k] is site k's dense block: (2 * chi_in) x chi_out column-major
  // isometry stored row-major with leading dimension chi_out.
  std::vector<CVector> tensors;
  std::vector<long long> left_dims;   // chi_{k-1} per site
  std::vector<long long> right_dims;  // chi_k per site
  std::vector<long long> bond_dims;   // per-site max(chi_{k-1}, chi_k)
  CVector predicted_state;            // contraction, renormalized
  double truncation_error = 0.0;      // l2 to the (normalized) input
};

MpsFactorization mps_compress(const TargetVector& target, long long chi_max);

struct AliasTable {
  std::vector<long long> thresholds;   // t_i in {0..2^mu}
  std::vector<long long> destinations; // d_i in {0..L-1}
  int mu = 0;
  RVector reconstructed;               // block-count probabilities
};

// Largest-remainder quantization of the distribution into L*2^mu blocks, then
// alias pairing so every index exports to exactly one destination.
AliasTable build_alias_table(const RVector& probabilities, int mu);

struct FourierTruncation {
  std::vector<std::pair<long long, Complex>> kept_coefficients;
  long long num_kept = 0;  // d, a power of two
  CVector predicted_state;
  double truncation_error = 0.0;
  bool band_layout = false;  // kept set is the symmetric band around zero
};

FourierTruncation fsl_truncate(const TargetVector& target, double eps_a);

// ---------------------------------------------------------------------------
// Synthesizers. All take a validated target; plans carry eps_a_predicted and
// resources; circuits are omitted above opts.emit_qubit_limit.
// ---------------------------------------------------------------------------

SynthResult synth_mottonen(const TargetVector& target, const ErrorBudget& budget,
                           const SynthOptions& opts = {});

SynthResult synth_qrom_stateprep(const TargetVector& target, const ErrorBudget& budget,
                                 bool use_phase_gradient = true,
                                 const SynthOptions& opts = {});

SynthResult synth_sparse_sos(const TargetVector& target, const ErrorBudget& budget,
                             const SynthOptions& opts = {});

SynthResult synth_mps(const TargetVector& target, const ErrorBudget& budget,
                      const SynthOptions& opts = {});

SynthResult synth_fsl(const TargetVector& target, const ErrorBudget& budget,
                      const SynthOptions& opts = {});

SynthResult synth_alias(const TargetVector& target, const ErrorBudget& budget,
                        const SynthOptions& opts = {});

}  // namespace qdl
