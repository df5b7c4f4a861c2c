// Core domain types shared by every module: target vectors, error budgets,
// resource estimates, and method plans.
#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdl {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;
using RVector = std::vector<double>;

// ---------------------------------------------------------------------------
// Error taxonomy. Thin wrappers so call sites and tests can discriminate.
// ---------------------------------------------------------------------------
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DimensionError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct NormViolationError : Error {
  using Error::Error;
};
struct DegenerateInputError : Error {
  using Error::Error;
};
struct UnsupportedError : Error {
  using Error::Error;
};
struct ResourceError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Targets and budgets.
// ---------------------------------------------------------------------------
enum class Task { StatePrep, DiagonalEncode };

std::string task_name(Task t);
Task task_from_name(const std::string& name);

// The vector to load. For StatePrep the amplitudes are a unit l2 vector; for
// DiagonalEncode they are diagonal entries bounded by 1 in magnitude.
struct TargetVector {
  int n_qubits = 0;
  CVector amplitudes;
  Task task = Task::StatePrep;
  // Scale factor recorded by validate_target when a StatePrep input had to be
  // renormalized (original = scale * stored amplitudes).
  double scale = 1.0;

  std::size_t dim() const { return amplitudes.size(); }
};

// Splits a total tolerance epsilon into a precision share eps_p = omega*eps
// (rotation synthesis, register resolution) and an approximation share
// eps_a = (1-omega)*eps (truncation, bond dimension, sparsity).
struct ErrorBudget {
  double epsilon = 0.0;
  double omega = 1.0;
  double eps_p = 0.0;
  double eps_a = 0.0;
};

ErrorBudget make_budget(double epsilon, double omega);

// ---------------------------------------------------------------------------
// Resource estimates (Clifford+T accounting).
// ---------------------------------------------------------------------------
struct ResourceEstimate {
  long long t_count = 0;
  long long cnot_count = 0;
  long long rotation_count = 0;
  long long toffoli_count = 0;
  long long ancilla_qubits = 0;
  long long total_qubits = 0;

  ResourceEstimate& operator+=(const ResourceEstimate& o) {
    t_count += o.t_count;
    cnot_count += o.cnot_count;
    rotation_count += o.rotation_count;
    toffoli_count += o.toffoli_count;
    ancilla_qubits += o.ancilla_qubits;
    total_qubits = std::max(total_qubits, o.total_qubits);
    return *this;
  }
};

// ---------------------------------------------------------------------------
// Method plans.
// ---------------------------------------------------------------------------
enum class Method {
  Mottonen,
  QromStatePrep,
  SparseSOS,
  MPS,
  FSL,
  AliasSampling,
  MottonenDiag,
  QromDiag,
  QspDiag,
  WalshDiag,
  Hybrid,
};

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct MethodPlan {
  Method method = Method::Mottonen;
  std::map<std::string, double> hyperparams;  // delta_g, m, mu, chi, D, d, kappa ...
  ErrorBudget budget;
  ResourceEstimate resources;
  bool feasible = true;
  double eps_a_predicted = 0.0;
  // Present when infeasible: the limiting constraint, for planner reports.
  std::string note;
};

}  // namespace qdl
