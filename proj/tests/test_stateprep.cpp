// State-preparation synthesizers: classical preprocessing artifacts, emitted
// circuits, closed-form estimates, and simulated loader error per method.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "qdl/costmodel.hpp"
#include "qdl/metrics.hpp"
#include "qdl/simulator.hpp"
#include "qdl/stateprep.hpp"
#include "support/fixtures.hpp"

using namespace qdl;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector run(const CircuitIR& ir) { return apply(ir, StateVector::zero_state(ir.total_qubits())); }

// l2 distance between the ancilla-0 block of a run and the target amplitudes.
double loader_error(const CircuitIR& ir, const TargetVector& target) {
  const StateVector out = run(ir);
  const int anc = ir.num_ancilla_qubits;
  CVector sys(target.dim());
  for (std::size_t i = 0; i < sys.size(); ++i) sys[i] = out.amplitudes[i << anc];
  return l2_distance(sys, target.amplitudes);
}

// Test-side copy of the angle quantizer: m-bit code over a 4*pi period.
long long code_of(double theta, int m) {
  const double scaled = theta / (4.0 * kPi) * std::pow(2.0, m);
  long long code = static_cast<long long>(std::llround(scaled));
  const long long cap = 1LL << m;
  code %= cap;
  if (code < 0) code += cap;
  return code;
}

double decode(long long code, int m) {
  return 4.0 * kPi * static_cast<double>(code) / std::pow(2.0, m);
}

}  // namespace

TEST_CASE("probability-tree angles") {
  const GroverRudolphAngles basis = grover_rudolph_angles(fix::make_state({1, 0}, 1));
  REQUIRE(basis.ry_levels.size() == 1);
  CHECK(basis.ry_levels[0][0] == doctest::Approx(0.0));
  CHECK_FALSE(basis.has_phases);

  const GroverRudolphAngles plus =
      grover_rudolph_angles(fix::make_state({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}, 1));
  CHECK(plus.ry_levels[0][0] == doctest::Approx(kPi / 2));

  const GroverRudolphAngles tilted = grover_rudolph_angles(fix::make_state({0.6, 0.8}, 1));
  CHECK(tilted.ry_levels[0][0] == doctest::Approx(2.0 * std::acos(0.6)));

  // Real targets keep amplitude signs in signed leaf angles, with no phase layer.
  const GroverRudolphAngles signed_leaf = grover_rudolph_angles(fix::make_state({0.6, -0.8}, 1));
  CHECK(signed_leaf.ry_levels[0][0] == doctest::Approx(-2.0 * std::acos(0.6)));
  CHECK_FALSE(signed_leaf.has_phases);

  const GroverRudolphAngles uniform2 =
      grover_rudolph_angles(fix::make_state(CVector(4, Complex(0.5, 0.0)), 2));
  REQUIRE(uniform2.ry_levels.size() == 2);
  CHECK(uniform2.ry_levels[0][0] == doctest::Approx(kPi / 2));
  CHECK(uniform2.ry_levels[1][0] == doctest::Approx(kPi / 2));
  CHECK(uniform2.ry_levels[1][1] == doctest::Approx(kPi / 2));

  CHECK(grover_rudolph_angles(fix::random_state(3, 9)).has_phases);
}

TEST_CASE("rotation-cascade synthesis") {
  const ErrorBudget budget = make_budget(1e-3, 1.0);

  SUBCASE("basis state needs one silent rotation") {
    const SynthResult r = synth_mottonen(fix::make_state({1, 0}, 1), budget);
    CHECK(r.plan.resources.rotation_count == 1);
    CHECK(r.plan.resources.t_count == 0);
    CHECK(r.plan.eps_a_predicted == 0.0);
    CHECK(loader_error(r.circuit, fix::make_state({1, 0}, 1)) < 1e-14);
  }

  SUBCASE("uniform two-qubit state is exact") {
    const TargetVector t = fix::make_state(CVector(4, Complex(0.5, 0.0)), 2);
    const SynthResult r = synth_mottonen(t, budget);
    CHECK(r.plan.resources.rotation_count == 3);
    CHECK(loader_error(r.circuit, t) < 1e-13);
  }

  SUBCASE("random complex targets load exactly") {
    for (std::uint64_t seed : {21ULL, 22ULL}) {
      const TargetVector t = fix::random_state(6, seed);
      const SynthResult r = synth_mottonen(t, budget);
      CHECK(r.plan.eps_a_predicted == 0.0);
      CHECK(loader_error(r.circuit, t) < 1e-12);
      const VerificationRecord rec = verify_plan(r.plan, r.circuit, t);
      CHECK(rec.pass);
      CHECK(rec.norm == "l2");
    }
  }

  SUBCASE("smooth 11-qubit profile: full cascade width") {
    const TargetVector t = fix::gaussian_state(11, 0.5);
    const SynthResult r = synth_mottonen(t, budget);
    CHECK(r.plan.resources.rotation_count == 2047);
    CHECK(r.plan.resources.cnot_count == 2046);
    CHECK(loader_error(r.circuit, t) < 1e-12);

    // The closed-form estimate agrees with pricing the emitted circuit.
    SynthOptions narrow;
    narrow.emit_qubit_limit = 5;
    const SynthResult est = synth_mottonen(t, budget, narrow);
    CHECK(est.circuit.gates.empty());
    CHECK(est.plan.resources.t_count == r.plan.resources.t_count);
    CHECK(est.plan.resources.rotation_count == r.plan.resources.rotation_count);
    CHECK(est.plan.resources.cnot_count == r.plan.resources.cnot_count);
    CHECK(est.plan.note.find("estimate only") != std::string::npos);
  }
}

TEST_CASE("lookup-cascade synthesis") {
  SUBCASE("emission is exact; the register width solves the budget") {
    const TargetVector t = fix::random_state(3, 31);
    const ErrorBudget budget = make_budget(1e-3, 0.8);
    const SynthResult r = synth_qrom_stateprep(t, budget);
    CHECK(r.plan.hyperparams.at("m") == doctest::Approx(solve_qrom_bits(3, budget.eps_p)));
    CHECK(r.plan.eps_a_predicted == 0.0);
    CHECK(loader_error(r.circuit, t) < 1e-12);
  }

  SUBCASE("phase-gradient and angle-register realizations differ only in cost") {
    const TargetVector t = fix::gaussian_state(4, 0.3);
    const ErrorBudget budget = make_budget(1e-3, 0.8);
    const SynthResult grad = synth_qrom_stateprep(t, budget, true);
    const SynthResult reg = synth_qrom_stateprep(t, budget, false);
    CHECK(grad.plan.resources.toffoli_count > reg.plan.resources.toffoli_count);
    CHECK(reg.plan.resources.rotation_count > grad.plan.resources.rotation_count);
    CHECK(loader_error(grad.circuit, t) < 1e-12);
    CHECK(loader_error(reg.circuit, t) < 1e-12);
  }

  SUBCASE("quantized table angles stay within the register bound") {
    // Decode the emitted angle codes, rebuild the cascade from the quantized
    // angles only, and check the end-to-end error against pi * 2^-m * sqrt(2^n-1).
    const TargetVector t = fix::gaussian_state(3, 0.35);
    const ErrorBudget budget = fix::budget_pa(0.2, 0.1);
    const SynthResult r = synth_qrom_stateprep(t, budget);
    const int m = static_cast<int>(r.plan.hyperparams.at("m"));

    CircuitIR quantized;
    quantized.num_system_qubits = 3;
    const std::vector<long long>* pending_table = nullptr;
    for (const GateRecord& g : r.circuit.gates) {
      if (g.kind == GateKind::QROMLookup) {
        pending_table = &g.table;
      } else if (g.kind == GateKind::RY) {
        GateRecord q = g;
        for (double& a : q.params) a = decode(code_of(a, m), m);
        quantized.gates.push_back(std::move(q));
      } else if (g.kind == GateKind::MultiplexedRY) {
        REQUIRE(pending_table != nullptr);
        GateRecord q;
        q.kind = GateKind::MultiplexedRY;
        q.targets = g.targets;
        q.controls = g.controls;
        for (long long code : *pending_table) q.params.push_back(decode(code, m));
        quantized.gates.push_back(std::move(q));
        pending_table = nullptr;
      }
    }
    const double bound = kPi * std::pow(2.0, -m) * std::sqrt(7.0);
    CHECK(bound <= budget.eps_p);
    CHECK(loader_error(quantized, t) <= bound + 1e-12);
  }
}

TEST_CASE("sparse select-and-map synthesis") {
  SUBCASE("dominant-entry fixture keeps one index") {
    const double big = std::sqrt(0.97), small = std::sqrt(0.01);
    const TargetVector t = fix::make_state({big, small, small, small}, 2);
    const SynthResult r = synth_sparse_sos(t, fix::budget_pa(0.3, 0.2));
    CHECK(r.plan.hyperparams.at("support") == doctest::Approx(1.0));
    const double expect = std::sqrt(2.0 * (1.0 - std::sqrt(0.97)));
    CHECK(r.plan.eps_a_predicted == doctest::Approx(expect).epsilon(1e-9));
    CHECK(r.plan.feasible);
    CHECK(loader_error(r.circuit, t) == doctest::Approx(expect).epsilon(1e-9));
  }

  SUBCASE("magnitude ties break toward the lower index") {
    const TargetVector t = fix::make_state(CVector(4, Complex(0.5, 0.0)), 2);
    const SynthResult r = synth_sparse_sos(t, fix::budget_pa(0.3, 0.8));
    CHECK(r.plan.hyperparams.at("support") == doctest::Approx(2.0));
    const StateVector out = run(r.circuit);
    const int anc = r.circuit.num_ancilla_qubits;
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(out.amplitudes[0 << anc] - Complex(inv_rt2, 0)) < 1e-12);
    CHECK(std::abs(out.amplitudes[1 << anc] - Complex(inv_rt2, 0)) < 1e-12);
    CHECK(std::abs(out.amplitudes[2 << anc]) < 1e-13);
    CHECK(std::abs(out.amplitudes[3 << anc]) < 1e-13);
  }

  SUBCASE("support size is the brute-force minimum") {
    for (std::uint64_t seed : {41ULL, 42ULL, 43ULL}) {
      const TargetVector t = fix::random_state(6, seed);
      const double eps_a = 0.25;
      const SynthResult r = synth_sparse_sos(t, fix::budget_pa(0.3, eps_a));

      RVector weights(t.dim());
      for (std::size_t i = 0; i < t.dim(); ++i) weights[i] = std::norm(t.amplitudes[i]);
      std::sort(weights.begin(), weights.end(), std::greater<>());
      double prefix = 0.0;
      long long minimal = 0;
      for (std::size_t d = 0; d < weights.size(); ++d) {
        prefix += weights[d];
        if (std::sqrt(2.0 * (1.0 - std::sqrt(std::min(prefix, 1.0)))) <= eps_a + 1e-12) {
          minimal = static_cast<long long>(d + 1);
          break;
        }
      }
      CHECK(static_cast<long long>(r.plan.hyperparams.at("support")) == minimal);
      const VerificationRecord rec = verify_plan(r.plan, r.circuit, t);
      CHECK(rec.pass);
    }
  }

  SUBCASE("20-qubit estimate stays classical") {
    const TargetVector t = fix::random_sparse_state(20, 16, 5);
    SynthOptions narrow;
    narrow.emit_qubit_limit = 16;
    const SynthResult r = synth_sparse_sos(t, make_budget(1e-3, 1.0), narrow);
    CHECK(r.circuit.gates.empty());
    CHECK(r.plan.hyperparams.at("support") == doctest::Approx(16.0));
    CHECK(r.plan.hyperparams.at("index_bits") == doctest::Approx(4.0));
    CHECK(r.plan.resources.t_count > 0);
  }
}

TEST_CASE("matrix-product factorization") {
  SUBCASE("product states factor at bond dimension one") {
    CVector q0 = {Complex(0.8, 0), Complex(0.6, 0)};
    CVector q1 = {Complex(0.28, 0), Complex(0.96, 0)};
    CVector amps(4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) amps[a * 2 + b] = q0[a] * q1[b];
    const MpsFactorization f = mps_compress(fix::make_state(amps, 2), 1);
    CHECK(f.truncation_error < 1e-12);
    for (long long b : f.bond_dims) CHECK(b == 1);
  }

  SUBCASE("maximal entanglement defeats bond dimension one") {
    const double inv_rt2 = 1.0 / std::sqrt(2.0);
    const TargetVector bell = fix::make_state({inv_rt2, 0, 0, inv_rt2}, 2);
    CHECK(mps_compress(bell, 1).truncation_error > 0.2);
    CHECK(mps_compress(bell, 2).truncation_error < 1e-12);
  }

  SUBCASE("GHZ needs exactly bond dimension two") {
    CVector amps(64, Complex(0, 0));
    amps[0] = amps[63] = 1.0 / std::sqrt(2.0);
    const TargetVector ghz = fix::make_state(amps, 6);
    CHECK(mps_compress(ghz, 1).truncation_error > 0.2);
    CHECK(mps_compress(ghz, 2).truncation_error < 1e-12);
  }

  SUBCASE("site tensors are isometries and bonds respect the Schmidt caps") {
    const TargetVector t = fix::random_state(6, 77);
    const MpsFactorization f = mps_compress(t, 4);
    REQUIRE(f.tensors.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
      const long long rows = 2 * f.left_dims[k];
      const long long cols = f.right_dims[k];
      Eigen::MatrixXcd a(rows, cols);
      for (long long r = 0; r < rows; ++r)
        for (long long c = 0; c < cols; ++c) a(r, c) = f.tensors[k][r * cols + c];
      const Eigen::MatrixXcd gram = a.adjoint() * a;
      CHECK((gram - Eigen::MatrixXcd::Identity(cols, cols)).norm() < 1e-10);
      const int cap_exp = std::min<int>(static_cast<int>(k) + 1, 6 - 1 - static_cast<int>(k));
      CHECK(f.bond_dims[k] <= (1LL << std::max(cap_exp, 0)));
    }
    CHECK(l2_distance(f.predicted_state, t.amplitudes) ==
          doctest::Approx(f.truncation_error).epsilon(1e-8));
  }

  SUBCASE("error is monotone in the bond cap and vanishes at full rank") {
    const TargetVector t = fix::random_state(8, 99);
    double prev = 2.0;
    for (long long chi : {1LL, 2LL, 4LL, 8LL, 16LL}) {
      const double err = mps_compress(t, chi).truncation_error;
      CHECK(err <= prev + 1e-12);
      prev = err;
    }
    CHECK(mps_compress(t, 16).truncation_error < 1e-10);
  }
}

TEST_CASE("matrix-product synthesis") {
  const TargetVector t = fix::gaussian_state(11, 0.2);
  const SynthResult r = synth_mps(t, make_budget(6e-4, 0.5));
  CHECK(r.plan.hyperparams.at("chi_max") == doctest::Approx(2.0));
  CHECK(r.plan.eps_a_predicted <= 3e-4);
  CHECK(r.plan.feasible);
  long long blocks = 0;
  for (const GateRecord& g : r.circuit.gates) blocks += g.kind == GateKind::BlockGate;
  CHECK(blocks == 11);
  const VerificationRecord rec = verify_plan(r.plan, r.circuit, t);
  CHECK(rec.pass);
  CHECK(rec.at_scale);
}

TEST_CASE("Fourier truncation") {
  SUBCASE("uniform state is a single coefficient") {
    const TargetVector t = fix::make_state(CVector(8, Complex(1, 0)), 3);
    const FourierTruncation fr = fsl_truncate(t, 1e-12);
    CHECK(fr.num_kept == 1);
    CHECK(fr.truncation_error < 1e-12);
    CHECK(fr.band_layout);
  }

  SUBCASE("shifted cosine keeps a band of four") {
    const std::size_t dim = 256;
    CVector amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(dim);
      amps[i] = 1.0 + 0.5 * std::cos(2.0 * kPi * x);
    }
    const FourierTruncation fr = fsl_truncate(fix::make_state(amps, 8), 1e-10);
    CHECK(fr.num_kept == 4);
    CHECK(fr.band_layout);
    CHECK(fr.truncation_error < 1e-12);
  }

  SUBCASE("pure cosine is Fourier-sparse but not band-shaped") {
    const std::size_t dim = 256;
    CVector amps(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(dim);
      amps[i] = std::cos(2.0 * kPi * x);
    }
    const FourierTruncation fr = fsl_truncate(fix::make_state(amps, 8), 1e-10);
    CHECK(fr.num_kept == 2);
    CHECK_FALSE(fr.band_layout);
    CHECK(fr.truncation_error < 1e-12);
  }

  SUBCASE("keeping the whole spectrum is exact") {
    const TargetVector t = fix::random_state(5, 55);
    const FourierTruncation fr = fsl_truncate(t, 0.0);
    CHECK(fr.num_kept == 32);
    CHECK(fr.truncation_error < 1e-12);
    CHECK(l2_distance(fr.predicted_state, t.amplitudes) < 1e-12);
  }

  SUBCASE("smooth 11-qubit profile truncates dyadically") {
    const TargetVector t = fix::gaussian_state(11, 0.5);
    CHECK(fsl_truncate(t, 9.5e-4).num_kept == 32);
    CHECK(fsl_truncate(t, 3.3e-4).num_kept == 64);
    const double err32 = fsl_truncate(t, 9.5e-4).truncation_error;
    CHECK(err32 > 8e-4);
    CHECK(err32 < 9.5e-4);
  }
}

TEST_CASE("Fourier-loading synthesis") {
  const std::size_t dim = 64;
  CVector amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(dim);
    amps[i] = 1.0 + 0.5 * std::cos(2.0 * kPi * x);
  }
  const TargetVector band = fix::make_state(amps, 6);
  const SynthResult r = synth_fsl(band, make_budget(1e-3, 0.5));
  CHECK(r.plan.hyperparams.at("band_layout") == doctest::Approx(1.0));
  CHECK(r.plan.resources.rotation_count >= 30);  // includes the synthesized iqft
  const VerificationRecord rec = verify_plan(r.plan, r.circuit, band);
  CHECK(rec.pass);
  CHECK(rec.achieved_error == doctest::Approx(r.plan.eps_a_predicted).epsilon(1e-8));

  SUBCASE("non-band spectra route through a permutation block") {
    CVector pure(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = static_cast<double>(i) / static_cast<double>(dim);
      pure[i] = std::cos(2.0 * kPi * x);
    }
    const TargetVector t = fix::make_state(pure, 6);
    const SynthResult p = synth_fsl(t, make_budget(1e-3, 0.5));
    bool has_permutation = false;
    for (const GateRecord& g : p.circuit.gates)
      has_permutation |= g.kind == GateKind::BlockGate && g.block && g.block->label == "permutation";
    CHECK(has_permutation);
    CHECK(verify_plan(p.plan, p.circuit, t).pass);
  }
}

TEST_CASE("alias table construction") {
  SUBCASE("uniform distribution saturates every threshold") {
    const AliasTable t = build_alias_table(RVector(4, 0.25), 2);
    for (long long th : t.thresholds) CHECK(th == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(t.reconstructed[i] == doctest::Approx(0.25));
  }

  SUBCASE("two-outcome fixture") {
    const AliasTable t = build_alias_table({0.75, 0.25}, 2);
    REQUIRE(t.thresholds.size() == 2);
    CHECK(t.thresholds[0] == 4);
    CHECK(t.thresholds[1] == 2);
    CHECK(t.destinations[1] == 0);
    CHECK(t.reconstructed[0] == doctest::Approx(0.75));
    CHECK(t.reconstructed[1] == doctest::Approx(0.25));
  }

  SUBCASE("largest-remainder quantization error bound") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.01, 1.0);
    RVector p(8);
    double norm = 0.0;
    for (double& v : p) norm += (v = uni(rng));
    for (double& v : p) v /= norm;
    const AliasTable t = build_alias_table(p, 10);
    double err2 = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
      const double d = t.reconstructed[i] - p[i];
      err2 += d * d;
    }
    CHECK(std::sqrt(err2) <= std::pow(2.0, -10) / std::sqrt(8.0) + 1e-15);
  }
}

TEST_CASE("alias sampling synthesis") {
  SUBCASE("the simulated marginal reproduces the quantized distribution") {
    const CVector amps = {std::sqrt(0.4), std::sqrt(0.3), std::sqrt(0.2), std::sqrt(0.1)};
    const TargetVector t = fix::make_state(amps, 2);
    const SynthResult r = synth_alias(t, fix::budget_pa(0.25, 0.1));
    CHECK(r.plan.hyperparams.at("mu") == doctest::Approx(2.0));
    CHECK(r.plan.note.find("garbage") != std::string::npos);
    const VerificationRecord rec = verify_plan(r.plan, r.circuit, t);
    CHECK(rec.at_scale);
    CHECK(rec.achieved_error == doctest::Approx(r.plan.eps_a_predicted).epsilon(1e-8));
    CHECK(rec.pass);
  }

  SUBCASE("uniform targets are loaded exactly") {
    const TargetVector t = fix::make_state(CVector(4, Complex(0.5, 0.0)), 2);
    const SynthResult r = synth_alias(t, fix::budget_pa(0.25, 0.1));
    CHECK(r.plan.eps_a_predicted < 1e-14);
    CHECK(verify_plan(r.plan, r.circuit, t).achieved_error < 1e-12);
  }

  SUBCASE("amplitude signs and phases are unsupported") {
    CHECK_THROWS_AS(synth_alias(fix::make_state({0.6, -0.8}, 1), fix::budget_pa(0.25, 0.1)),
                    UnsupportedError);
    CHECK_THROWS_AS(synth_alias(fix::random_state(2, 3), fix::budget_pa(0.25, 0.1)),
                    UnsupportedError);
  }
}

TEST_CASE("loader error never exceeds the predicted bound") {
  // Cross-method property at desk scale.
  const ErrorBudget tight = fix::budget_pa(0.5, 0.05);
  for (std::uint64_t seed : {301ULL, 302ULL}) {
    const TargetVector t = fix::random_state(5, seed);
    for (int method = 0; method < 4; ++method) {
      SynthResult r;
      switch (method) {
        case 0: r = synth_mottonen(t, tight); break;
        case 1: r = synth_qrom_stateprep(t, tight); break;
        case 2: r = synth_sparse_sos(t, tight); break;
        default: r = synth_mps(t, tight); break;
      }
      if (r.circuit.gates.empty()) continue;
      const VerificationRecord rec = verify_plan(r.plan, r.circuit, t);
      CHECK(rec.achieved_error <= r.plan.eps_a_predicted + 1e-10);
    }
  }
}
