// Cost model: rotation synthesis cost, lookup costing, and the per-gate
// accounting rules, pinned against hand-computed values.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "qdl/circuit.hpp"
#include "qdl/costmodel.hpp"
#include "qdl/io.hpp"

using namespace qdl;

namespace {

GateRecord gate(GateKind kind, std::vector<int> targets, std::vector<int> controls = {},
                RVector params = {}) {
  GateRecord g;
  g.kind = kind;
  g.targets = std::move(targets);
  for (int c : controls) g.controls.emplace_back(c, true);
  g.params = std::move(params);
  return g;
}

CircuitIR single(GateRecord g, int n_sys, int n_anc = 0) {
  CircuitIR ir;
  ir.num_system_qubits = n_sys;
  ir.num_ancilla_qubits = n_anc;
  ir.gates.push_back(std::move(g));
  return ir;
}

}  // namespace

TEST_CASE("rotation synthesis T-count") {
  CHECK(t_count_for_rotation(0.5) == 5);
  CHECK(t_count_for_rotation(1e-5) == 52);
  CHECK(t_count_for_rotation(0.999999) == 2);
  CHECK(t_count_for_rotation(1.0) == 0);
  CHECK(t_count_for_rotation(2.0) == 0);
  CHECK_THROWS_AS(t_count_for_rotation(0.0), DomainError);
  CHECK_THROWS_AS(t_count_for_rotation(-0.1), DomainError);

  SUBCASE("monotone non-increasing in the tolerance") {
    long long prev = t_count_for_rotation(1e-9);
    for (double d = 1e-8; d < 1.0; d *= 1.7) {
      const long long now = t_count_for_rotation(d);
      CHECK(now <= prev);
      prev = now;
    }
  }

  SUBCASE("configurable slope and offset") {
    CostConfig cfg;
    cfg.t_per_rotation_slope = 1.0;
    cfg.t_per_rotation_offset = 0.0;
    CHECK(t_count_for_rotation(0.25, cfg) == 2);
  }
}

TEST_CASE("lookup cost formula") {
  SUBCASE("single entry, fixed width 1") {
    CostConfig cfg;
    cfg.qrom_swap_width = 1;
    const QromCost qc = qrom_cost(1, 8, cfg);
    CHECK(qc.toffolis == 1);
    CHECK(qc.t_count == 4);
    CHECK(qc.cnots == 16);
    CHECK(qc.ancillas == 8);
    CHECK(qc.swap_width == 1);
  }

  SUBCASE("two entries, one output bit") {
    CostConfig cfg;
    cfg.qrom_swap_width = 1;
    const QromCost qc = qrom_cost(2, 1, cfg);
    CHECK(qc.toffolis == 2);
    CHECK(qc.t_count == 8);
  }

  SUBCASE("1024 x 16 with optimized swap width") {
    const QromCost qc = qrom_cost(1024, 16);
    CHECK(qc.swap_width == 8);
    CHECK(qc.toffolis == 240);
    CHECK(qc.t_count == 960);
    CHECK(qc.cnots == 32768);
    CHECK(qc.ancillas == 131);
  }

  SUBCASE("optimized width never loses to width 1") {
    for (long long entries : {1LL, 2LL, 5LL, 64LL, 100LL, 1000LL, 4096LL}) {
      for (long long bits : {1LL, 4LL, 16LL}) {
        const QromCost opt = qrom_cost(entries, bits);
        CostConfig cfg;
        cfg.qrom_swap_width = 1;
        const QromCost plain = qrom_cost(entries, bits, cfg);
        CHECK(opt.toffolis <= plain.toffolis);
      }
    }
  }

  SUBCASE("domain checks") {
    CHECK_THROWS_AS(qrom_cost(0, 4), DomainError);
    CHECK_THROWS_AS(qrom_cost(4, 0), DomainError);
  }

  SUBCASE("seven-T Toffoli configuration") {
    CostConfig cfg;
    cfg.toffoli_t_cost = 7;
    cfg.qrom_swap_width = 1;
    CHECK(qrom_cost(2, 1, cfg).t_count == 14);
  }
}

TEST_CASE("per-gate accounting") {
  const CostConfig cfg;
  const double delta = 1e-5;  // 52 T per rotation

  SUBCASE("empty circuit costs nothing") {
    CircuitIR ir;
    const ResourceEstimate e = estimate_circuit(ir, cfg, delta);
    CHECK(e.t_count == 0);
    CHECK(e.cnot_count == 0);
    CHECK(e.rotation_count == 0);
    CHECK(e.toffoli_count == 0);
    CHECK(e.ancilla_qubits == 0);
  }

  SUBCASE("Clifford gates are free, even controlled") {
    CircuitIR ir;
    ir.num_system_qubits = 4;
    ir.gates.push_back(gate(GateKind::H, {0}));
    ir.gates.push_back(gate(GateKind::S, {1}, {0, 2}));
    const ResourceEstimate e = estimate_circuit(ir, cfg, delta);
    CHECK(e.t_count == 0);
    CHECK(e.cnot_count == 0);
    CHECK(e.total_qubits == 4);
  }

  SUBCASE("multi-controlled X ladder") {
    CHECK(estimate_circuit(single(gate(GateKind::X, {0}), 1), cfg, delta).cnot_count == 0);
    CHECK(estimate_circuit(single(gate(GateKind::CNOT, {1}, {0}), 2), cfg, delta).cnot_count == 1);
    const ResourceEstimate two = estimate_circuit(single(gate(GateKind::X, {2}, {0, 1}), 3), cfg, delta);
    CHECK(two.toffoli_count == 1);
    CHECK(two.t_count == 4);
    CHECK(two.ancilla_qubits == 0);
    const ResourceEstimate five = estimate_circuit(single(gate(GateKind::X, {5}, {0, 1, 2, 3, 4}), 6), cfg, delta);
    CHECK(five.toffoli_count == 7);
    CHECK(five.ancilla_qubits == 3);
    CHECK(five.total_qubits == 9);
  }

  SUBCASE("swap family") {
    CHECK(estimate_circuit(single(gate(GateKind::SWAP, {0, 1}), 2), cfg, delta).cnot_count == 3);
    const ResourceEstimate cswap = estimate_circuit(single(gate(GateKind::CSwap, {1, 2}, {0}), 3), cfg, delta);
    CHECK(cswap.cnot_count == 2);
    CHECK(cswap.toffoli_count == 1);  // middle CNOT with two controls
    const ResourceEstimate ctrl_swap = estimate_circuit(single(gate(GateKind::SWAP, {1, 2}, {0}), 3), cfg, delta);
    CHECK(ctrl_swap.cnot_count == 2);
    CHECK(ctrl_swap.toffoli_count == 1);
  }

  SUBCASE("plain and controlled rotations") {
    const ResourceEstimate plain = estimate_circuit(single(gate(GateKind::RY, {0}, {}, {0.3}), 1), cfg, delta);
    CHECK(plain.rotation_count == 1);
    CHECK(plain.t_count == 52);

    const ResourceEstimate zero = estimate_circuit(single(gate(GateKind::RY, {0}, {}, {0.0}), 1), cfg, delta);
    CHECK(zero.rotation_count == 1);
    CHECK(zero.t_count == 0);

    const ResourceEstimate one_ctl = estimate_circuit(single(gate(GateKind::RZ, {1}, {0}, {0.3}), 2), cfg, delta);
    CHECK(one_ctl.rotation_count == 2);
    CHECK(one_ctl.cnot_count == 2);
    CHECK(one_ctl.toffoli_count == 0);
    CHECK(one_ctl.t_count == 104);

    const ResourceEstimate three_ctl = estimate_circuit(single(gate(GateKind::RZ, {3}, {0, 1, 2}, {0.3}), 4), cfg, delta);
    CHECK(three_ctl.rotation_count == 2);
    CHECK(three_ctl.toffoli_count == 4);
    CHECK(three_ctl.t_count == 2 * 52 + 4 * 4);

    const ResourceEstimate five_ctl = estimate_circuit(
        single(gate(GateKind::RZ, {5}, {0, 1, 2, 3, 4}, {0.3}), 6), cfg, delta);
    CHECK(five_ctl.rotation_count == 32);
    CHECK(five_ctl.cnot_count == 32);
    CHECK(five_ctl.t_count == 32 * 52);

    // ControlledRZ prices its control even when none is listed explicitly.
    const ResourceEstimate crz = estimate_circuit(single(gate(GateKind::ControlledRZ, {1}, {}, {0.3}), 2), cfg, delta);
    CHECK(crz.rotation_count == 2);
    CHECK(crz.cnot_count == 2);
  }

  SUBCASE("multiplexed rotation") {
    const ResourceEstimate m3 = estimate_circuit(
        single(gate(GateKind::MultiplexedRY, {3}, {0, 1, 2}, RVector(8, 0.1)), 4), cfg, delta);
    CHECK(m3.rotation_count == 8);
    CHECK(m3.cnot_count == 8);
    CHECK(m3.t_count == 416);

    const ResourceEstimate silent = estimate_circuit(
        single(gate(GateKind::MultiplexedRY, {3}, {0, 1, 2}, RVector(8, 0.0)), 4), cfg, delta);
    CHECK(silent.rotation_count == 1);
    CHECK(silent.t_count == 0);

    GateRecord reg = gate(GateKind::MultiplexedRZ, {3}, {0, 1, 2}, RVector(8, 0.1));
    reg.cost_hint = "angle-register(18)";
    const ResourceEstimate hinted = estimate_circuit(single(reg, 4), cfg, delta);
    CHECK(hinted.rotation_count == 36);
    CHECK(hinted.cnot_count == 36);
    CHECK(hinted.t_count == 36 * 52);

    reg.cost_hint = "phase-gradient(18)";
    const ResourceEstimate gradient = estimate_circuit(single(reg, 4), cfg, delta);
    CHECK(gradient.rotation_count == 0);
    CHECK(gradient.toffoli_count == 36);
    CHECK(gradient.t_count == 144);
  }

  SUBCASE("lookup is charged on live entries only") {
    GateRecord q = gate(GateKind::QROMLookup, {2, 3}, {0, 1});
    q.table = {5, 0, 0, 0};
    const ResourceEstimate live = estimate_circuit(single(q, 4), cfg, delta);
    const QromCost ref = qrom_cost(1, 2, cfg);
    CHECK(live.toffoli_count == ref.toffolis);
    CHECK(live.cnot_count == ref.cnots);
    CHECK(live.ancilla_qubits == ref.ancillas);

    q.table = {0, 0, 0, 0};
    const ResourceEstimate silent = estimate_circuit(single(q, 4), cfg, delta);
    CHECK(silent.t_count == 0);
    CHECK(silent.toffoli_count == 0);
  }

  SUBCASE("adders and comparator") {
    GateRecord add = gate(GateKind::InPlaceAdder, {2, 3, 4, 5}, {0, 1});
    const ResourceEstimate in_place = estimate_circuit(single(add, 6), cfg, delta);
    CHECK(in_place.toffoli_count == 8);
    CHECK(in_place.t_count == 32);

    GateRecord cadd = gate(GateKind::ConstantAdder, {1, 2, 3, 4}, {0});
    cadd.table = {3};
    const ResourceEstimate constant = estimate_circuit(single(cadd, 5), cfg, delta);
    CHECK(constant.toffoli_count == 16);  // doubled by the control

    GateRecord cmp = gate(GateKind::Comparator, {5}, {0, 1, 2, 3, 4});
    cmp.table = {2};  // |A| = 2, |B| = 3
    const ResourceEstimate comparator = estimate_circuit(single(cmp, 6), cfg, delta);
    CHECK(comparator.toffoli_count == 3);
    CHECK(comparator.t_count == 12);
  }

  SUBCASE("dense block and pre-costed block") {
    GateRecord dense = gate(GateKind::BlockGate, {0, 1});
    dense.block = BlockSpec{};
    dense.block->matrix.assign(16, Complex(0.0, 0.0));
    const ResourceEstimate generic = estimate_circuit(single(dense, 2), cfg, delta);
    CHECK(generic.rotation_count == 16);
    CHECK(generic.t_count == 16 * 52);

    GateRecord pre = gate(GateKind::BlockGate, {0, 1});
    pre.block = BlockSpec{};
    pre.block->label = "iqft";
    pre.block->cost = PreCost{3, 5, 7, 2};
    const ResourceEstimate priced = estimate_circuit(single(pre, 2), cfg, delta);
    CHECK(priced.rotation_count == 3);
    CHECK(priced.cnot_count == 5);
    CHECK(priced.toffoli_count == 7);
    CHECK(priced.ancilla_qubits == 2);
    CHECK(priced.t_count == 3 * 52 + 7 * 4);

    GateRecord ctl = pre;
    ctl.controls = {{3, true}};
    const ResourceEstimate wrapped = estimate_circuit(single(ctl, 4), cfg, delta);
    CHECK(wrapped.rotation_count == 6);
    CHECK(wrapped.cnot_count == 5 + 2 * 3);
    CHECK(wrapped.toffoli_count == 7);
  }

  SUBCASE("estimates are additive over concatenation") {
    CircuitIR a;
    a.num_system_qubits = 4;
    a.gates.push_back(gate(GateKind::RY, {0}, {}, {0.2}));
    a.gates.push_back(gate(GateKind::CNOT, {1}, {0}));
    CircuitIR b;
    b.num_system_qubits = 4;
    b.gates.push_back(gate(GateKind::MultiplexedRY, {3}, {0, 1, 2}, RVector(8, 0.1)));
    b.gates.push_back(gate(GateKind::InPlaceAdder, {2, 3}, {0, 1}));

    CircuitIR both = a;
    both.append(b);
    const ResourceEstimate ea = estimate_circuit(a, cfg, delta);
    const ResourceEstimate eb = estimate_circuit(b, cfg, delta);
    const ResourceEstimate eab = estimate_circuit(both, cfg, delta);
    CHECK(eab.t_count == ea.t_count + eb.t_count);
    CHECK(eab.cnot_count == ea.cnot_count + eb.cnot_count);
    CHECK(eab.rotation_count == ea.rotation_count + eb.rotation_count);
    CHECK(eab.toffoli_count == ea.toffoli_count + eb.toffoli_count);
  }

  SUBCASE("tighter tolerance never reduces the estimate") {
    CircuitIR ir;
    ir.num_system_qubits = 4;
    ir.gates.push_back(gate(GateKind::RY, {0}, {}, {0.2}));
    ir.gates.push_back(gate(GateKind::MultiplexedRZ, {3}, {0, 1, 2}, RVector(8, 0.1)));
    long long prev = estimate_circuit(ir, cfg, 0.9).t_count;
    for (double d = 1e-1; d > 1e-12; d /= 10.0) {
      const long long now = estimate_circuit(ir, cfg, d).t_count;
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("cost configuration file round-trip") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qdl_cost_cfg_test";
  fs::create_directories(dir);

  CostConfig cfg;
  cfg.toffoli_t_cost = 7;
  cfg.adder_toffoli_per_bit = 2.5;
  const std::string path = (dir / "cost.json").string();
  write_text_file(path, cost_config_to_json(cfg));
  const CostConfig loaded = cost_config_from_json_file(path);
  CHECK(loaded.toffoli_t_cost == 7);
  CHECK(loaded.adder_toffoli_per_bit == doctest::Approx(2.5));

  const std::string bad = (dir / "bad.json").string();
  write_text_file(bad, "{\"t_per_rotation_slope\": -1.0}");
  CHECK_THROWS_AS(cost_config_from_json_file(bad), ValidationError);

  fs::remove_all(dir);
}

TEST_CASE("cost ledger text reflects the live configuration") {
  const std::string text = cost_ledger_markdown();
  CHECK(text.find("Toffoli") != std::string::npos);
  CHECK(text.find("3.02") != std::string::npos);
  CostConfig cfg;
  cfg.toffoli_t_cost = 7;
  CHECK(cost_ledger_markdown(cfg).find("| `toffoli_t_cost` | 7 |") != std::string::npos);
}
