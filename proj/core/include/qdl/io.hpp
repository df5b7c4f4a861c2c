// File interchange: vector/circuit/plan/verification JSON, KL-study CSV, and
// reproducibility manifests (input hashes, config, tool version; no
// timestamps, so identical runs produce identical bytes).
#pragma once

#include <string>
#include <vector>

#include "qdl/circuit.hpp"
#include "qdl/planner.hpp"
#include "qdl/sampling.hpp"
#include "qdl/simulator.hpp"
#include "qdl/types.hpp"

namespace qdl {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolName = "qdlc";
inline constexpr const char* kToolVersion = "0.1.0";

// Vector file: {"n_qubits": int, "task": "state-prep"|"diagonal",
//               "amplitudes": [[re, im], ...]}
TargetVector load_target(const std::string& path);
void save_target(const TargetVector& v, const std::string& path);

// Circuit file: {"schema_version", "system_qubits", "ancilla_qubits",
//                "gates": [...], "global_phase", "metadata"}
CircuitIR load_circuit(const std::string& path);
void save_circuit(const CircuitIR& ir, const std::string& path);

std::string plan_report_to_json(const PlanReport& report);
PlanReport plan_report_from_json_file(const std::string& path);
void save_plan_report(const PlanReport& report, const std::string& path);

// Human-readable method x {CNOT, T} table for a report.
std::string plan_report_table(const PlanReport& report);

std::string verification_to_json(const VerificationRecord& rec);
void save_verification(const VerificationRecord& rec, const std::string& path);

// KL study CSV: header comments documenting the smoothing rule, then
// transform,shots,trial,kl,seed rows.
std::string kl_curve_csv(const std::vector<std::pair<std::string, KlCurve>>& curves,
                         std::uint64_t study_seed, double tol);

// SHA-256 of a file's bytes, lowercase hex. Throws IoError if unreadable.
std::string sha256_file(const std::string& path);
std::string sha256_bytes(const std::string& bytes);

struct ManifestInput {
  std::string path;
  std::string sha256;
};

// Written beside every CLI output: {"schema_version", "tool", "inputs",
// "config", "outputs"}.
void write_manifest(const std::string& out_path,
                    const std::vector<ManifestInput>& inputs,
                    const std::vector<std::pair<std::string, std::string>>& config,
                    const std::vector<std::string>& outputs);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qdl
