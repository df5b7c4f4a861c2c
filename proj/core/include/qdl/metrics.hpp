// Norms and target validation.
#pragma once

#include "qdl/types.hpp"

namespace qdl {

// sqrt(sum |a_i - b_i|^2). Throws DimensionError on length mismatch.
double l2_distance(const CVector& a, const CVector& b);

// max_i |a_i - b_i|. Throws DimensionError on length mismatch.
double linf_distance(const CVector& a, const CVector& b);

double l2_norm(const CVector& a);
double linf_norm(const CVector& a);

// StatePrep targets are renormalized to unit l2 (scale recorded); diagonal
// targets must already satisfy linf <= 1 (+1e-12) and are never rescaled.
// Throws DegenerateInputError on the zero vector, NormViolationError on a
// diagonal target exceeding the bound, DimensionError if the length is not
// 2^n_qubits.
TargetVector validate_target(const TargetVector& v);

}  // namespace qdl
