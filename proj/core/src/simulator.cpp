// Dense statevector interpreter and plan verification.
#include "qdl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qdl/metrics.hpp"

namespace qdl {

namespace {

using std::size_t;

// Big-endian helpers: qubit 0 carries the most significant index bit.
inline size_t qubit_mask(int q, int n) { return size_t{1} << (n - 1 - q); }

struct ControlMask {
  size_t mask = 0;
  size_t want = 0;
  bool satisfied(size_t i) const { return (i & mask) == want; }
};

ControlMask make_mask(const std::vector<std::pair<int, bool>>& controls, size_t first,
                      size_t count, int n) {
  ControlMask cm;
  for (size_t k = first; k < first + count; ++k) {
    const size_t m = qubit_mask(controls[k].first, n);
    cm.mask |= m;
    if (controls[k].second) cm.want |= m;
  }
  return cm;
}

// Value of the listed qubits (first = MSB) in basis index i.
size_t register_value(size_t i, const std::vector<int>& qubits, int n) {
  size_t v = 0;
  for (int q : qubits) v = (v << 1) | ((i >> (n - 1 - q)) & 1);
  return v;
}

size_t control_value(size_t i, const std::vector<std::pair<int, bool>>& controls, size_t first,
                     size_t count, int n) {
  size_t v = 0;
  for (size_t k = first; k < first + count; ++k) {
    v = (v << 1) | ((i >> (n - 1 - controls[k].first)) & 1);
  }
  return v;
}

// Replaces the listed qubits' bits in i with the bits of value (first = MSB).
size_t with_register_value(size_t i, const std::vector<int>& qubits, size_t value, int n) {
  const int w = static_cast<int>(qubits.size());
  for (int b = 0; b < w; ++b) {
    const size_t m = qubit_mask(qubits[b], n);
    if ((value >> (w - 1 - b)) & 1) {
      i |= m;
    } else {
      i &= ~m;
    }
  }
  return i;
}

int int_log2(size_t v) {
  int b = 0;
  while ((size_t{1} << b) < v) ++b;
  return b;
}

bool is_power_of_two(size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// In-place radix-2 FFT with the +i kernel and 1/sqrt(dim) normalization:
// x_j <- dim^(-1/2) * sum_k x_k exp(+2*pi*i*j*k/dim)  (the inverse DFT).
void inverse_dft(CVector& x) {
  const size_t dim = x.size();
  for (size_t i = 1, j = 0; i < dim; ++i) {
    size_t bit = dim >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (size_t len = 2; len <= dim; len <<= 1) {
    const double ang = 2.0 * std::numbers::pi / static_cast<double>(len);
    const Complex wl(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < dim; i += len) {
      Complex w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const Complex u = x[i + k];
        const Complex v = x[i + k + len / 2] * w;
        x[i + k] = u + v;
        x[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Complex& c : x) c *= norm;
}

class Interpreter {
 public:
  Interpreter(const CircuitIR& ir, CVector amps)
      : ir_(ir), n_(ir.total_qubits()), amps_(std::move(amps)) {}

  CVector run() {
    for (const GateRecord& g : ir_.gates) dispatch(g);
    if (ir_.global_phase != 0.0) {
      const Complex ph(std::cos(ir_.global_phase), std::sin(ir_.global_phase));
      for (Complex& a : amps_) a *= ph;
    }
    return std::move(amps_);
  }

 private:
  const CircuitIR& ir_;
  int n_;
  CVector amps_;

  size_t dim() const { return amps_.size(); }

  void dispatch(const GateRecord& g) {
    switch (g.kind) {
      case GateKind::H: return hadamard(g);
      case GateKind::X: return pauli_x(g, g.controls.size());
      case GateKind::S: return phase_s(g);
      case GateKind::RY: return rotate_y(g);
      case GateKind::RZ: return rotate_z(g);
      case GateKind::CNOT: return pauli_x(g, g.controls.size());
      case GateKind::SWAP: return swap_gate(g);
      case GateKind::ControlledRZ: return rotate_z(g);
      case GateKind::MultiplexedRY: return multiplexed(g, /*is_ry=*/true);
      case GateKind::MultiplexedRZ: return multiplexed(g, /*is_ry=*/false);
      case GateKind::QROMLookup: return lookup(g);
      case GateKind::InPlaceAdder: return in_place_add(g);
      case GateKind::ConstantAdder: return constant_add(g);
      case GateKind::Comparator: return comparator(g);
      case GateKind::CSwap: return swap_gate(g);
      case GateKind::BlockGate: return block(g);
    }
  }

  void hadamard(const GateRecord& g) {
    const ControlMask cm = make_mask(g.controls, 0, g.controls.size(), n_);
    const size_t tm = qubit_mask(g.targets.at(0), n_);
    const double r = 1.0 / std::sqrt(2.0);
    for (size_t i = 0; i < dim(); ++i) {
      if ((i & tm) != 0 || !cm.satisfied(i)) continue;
      const Complex a = amps_[i], b = amps_[i | tm];
      amps_[i] = r * (a + b);
      amps_[i | tm] = r * (a - b);
    }
  }

  void pauli_x(const GateRecord& g, size_t num_controls) {
    const ControlMask cm = make_mask(g.controls, 0, num_controls, n_);
    const size_t tm = qubit_mask(g.targets.at(0), n_);
    for (size_t i = 0; i < dim(); ++i) {
      if ((i & tm) != 0 || !cm.satisfied(i)) continue;
      std::swap(amps_[i], amps_[i | tm]);
    }
  }

  void phase_s(const GateRecord& g) {
    const ControlMask cm = make_mask(g.controls, 0, g.controls.size(), n_);
    const size_t tm = qubit_mask(g.targets.at(0), n_);
    const Complex im(0.0, 1.0);
    for (size_t i = 0; i < dim(); ++i) {
      if ((i & tm) != 0 && cm.satisfied(i)) amps_[i] *= im;
    }
  }

  void rotate_y(const GateRecord& g) {
    const ControlMask cm = make_mask(g.controls, 0, g.controls.size(), n_);
    const size_t tm = qubit_mask(g.targets.at(0), n_);
    const double c = std::cos(g.params.at(0) / 2.0), s = std::sin(g.params.at(0) / 2.0);
    for (size_t i = 0; i < dim(); ++i) {
      if ((i & tm) != 0 || !cm.satisfied(i)) continue;
      const Complex a = amps_[i], b = amps_[i | tm];
      amps_[i] = c * a - s * b;
      amps_[i | tm] = s * a + c * b;
    }
  }

  void rotate_z(const GateRecord& g) {
    const ControlMask cm = make_mask(g.controls, 0, g.controls.size(), n_);
    const size_t tm = qubit_mask(g.targets.at(0), n_);
    const double half = g.params.at(0) / 2.0;
    const Complex lo(std::cos(half), -std::sin(half));
    const Complex hi(std::cos(half), std::sin(half));
    for (size_t i = 0; i < dim(); ++i) {
      if (!cm.satisfied(i)) continue;
      amps_[i] *= ((i & tm) != 0) ? hi : lo;
    }
  }

  void swap_gate(const GateRecord& g) {
    const ControlMask cm = make_mask(g.controls, 0, g.controls.size(), n_);
    const size_t m0 = qubit_mask(g.targets.at(0), n_);
    const size_t m1 = qubit_mask(g.targets.at(1), n_);
    for (size_t i = 0; i < dim(); ++i) {
      // Act once per {01, 10} pair: pick the representative with t0=0, t1=1.
      if ((i & m0) != 0 || (i & m1) == 0 || !cm.satisfied(i)) continue;
      std::swap(amps_[i], amps_[(i | m0) & ~m1]);
    }
  }

  void multiplexed(const GateRecord& g, bool is_ry) {
    const size_t selectors = static_cast<size_t>(int_log2(g.params.size()));
    const ControlMask cond =
        make_mask(g.controls, selectors, g.controls.size() - selectors, n_);
    const size_t tm = qubit_mask(g.targets.at(0), n_);
    for (size_t i = 0; i < dim(); ++i) {
      if (!cond.satisfied(i)) continue;
      if (is_ry) {
        if ((i & tm) != 0) continue;
        const double theta = g.params[control_value(i, g.controls, 0, selectors, n_)];
        const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
        const Complex a = amps_[i], b = amps_[i | tm];
        amps_[i] = c * a - s * b;
        amps_[i | tm] = s * a + c * b;
      } else {
        const double half = g.params[control_value(i, g.controls, 0, selectors, n_)] / 2.0;
        const double sign = ((i & tm) != 0) ? 1.0 : -1.0;
        amps_[i] *= Complex(std::cos(half), sign * std::sin(half));
      }
    }
  }

  void lookup(const GateRecord& g) {
    const size_t index_bits = static_cast<size_t>(int_log2(g.table.size()));
    const ControlMask cond =
        make_mask(g.controls, index_bits, g.controls.size() - index_bits, n_);
    const int width = static_cast<int>(g.targets.size());
    CVector out(dim(), Complex(0.0, 0.0));
    for (size_t i = 0; i < dim(); ++i) {
      size_t j = i;
      if (cond.satisfied(i)) {
        const size_t idx = control_value(i, g.controls, 0, index_bits, n_);
        const long long word = idx < g.table.size() ? g.table[idx] : 0;
        if (word != 0) {
          for (int b = 0; b < width; ++b) {
            if ((word >> (width - 1 - b)) & 1) j ^= qubit_mask(g.targets[b], n_);
          }
        }
      }
      out[j] = amps_[i];
    }
    amps_ = std::move(out);
  }

  void in_place_add(const GateRecord& g) {
    const size_t width = g.targets.size();
    const size_t modulus = size_t{1} << width;
    const long long sign = (!g.table.empty() && g.table[0] < 0) ? -1 : 1;
    std::vector<int> source;
    source.reserve(g.controls.size());
    for (const auto& [q, pol] : g.controls) {
      (void)pol;
      source.push_back(q);
    }
    CVector out(dim(), Complex(0.0, 0.0));
    for (size_t i = 0; i < dim(); ++i) {
      const size_t add = register_value(i, source, n_);
      const size_t dst = register_value(i, g.targets, n_);
      const size_t sum =
          (dst + (sign > 0 ? add : modulus - (add % modulus))) & (modulus - 1);
      out[with_register_value(i, g.targets, sum, n_)] = amps_[i];
    }
    amps_ = std::move(out);
  }

  void constant_add(const GateRecord& g) {
    const size_t width = g.targets.size();
    const long long modulus = 1LL << width;
    const long long k = ((g.table.at(0) % modulus) + modulus) % modulus;
    const ControlMask cond = make_mask(g.controls, 0, g.controls.size(), n_);
    CVector out(dim(), Complex(0.0, 0.0));
    for (size_t i = 0; i < dim(); ++i) {
      size_t j = i;
      if (cond.satisfied(i)) {
        const long long dst = static_cast<long long>(register_value(i, g.targets, n_));
        j = with_register_value(i, g.targets, static_cast<size_t>((dst + k) % modulus), n_);
      }
      out[j] = amps_[i];
    }
    amps_ = std::move(out);
  }

  void comparator(const GateRecord& g) {
    const size_t len_a = static_cast<size_t>(g.table.at(0));
    const size_t len_b = g.controls.size() - len_a;
    const size_t fm = qubit_mask(g.targets.at(0), n_);
    CVector out(dim(), Complex(0.0, 0.0));
    for (size_t i = 0; i < dim(); ++i) {
      const size_t a = control_value(i, g.controls, 0, len_a, n_);
      const size_t b = control_value(i, g.controls, len_a, len_b, n_);
      out[a >= b ? (i ^ fm) : i] = amps_[i];
    }
    amps_ = std::move(out);
  }

  void block(const GateRecord& g) {
    const BlockSpec& spec = *g.block;
    const ControlMask cond = make_mask(g.controls, 0, g.controls.size(), n_);
    if (!spec.matrix.empty()) return dense_block(g, cond);
    if (spec.label == "iqft") return iqft_block(g, cond);
    if (spec.label == "permutation") return permutation_block(g, cond);
    if (spec.label == "qsp-reflection") return qsp_reflection_block(g, cond);
    throw UnsupportedError("unknown functional block: " + spec.label);
  }

  void dense_block(const GateRecord& g, const ControlMask& cond) {
    const size_t m = g.targets.size();
    const size_t bdim = size_t{1} << m;
    const CVector& mat = g.block->matrix;
    size_t tmask = 0;
    for (int t : g.targets) tmask |= qubit_mask(t, n_);
    CVector sub(bdim), mixed(bdim);
    for (size_t i = 0; i < dim(); ++i) {
      if ((i & tmask) != 0 || !cond.satisfied(i)) continue;
      for (size_t v = 0; v < bdim; ++v) sub[v] = amps_[with_register_value(i, g.targets, v, n_)];
      for (size_t r = 0; r < bdim; ++r) {
        Complex acc(0.0, 0.0);
        for (size_t c = 0; c < bdim; ++c) acc += mat[r * bdim + c] * sub[c];
        mixed[r] = acc;
      }
      for (size_t v = 0; v < bdim; ++v) amps_[with_register_value(i, g.targets, v, n_)] = mixed[v];
    }
  }

  void iqft_block(const GateRecord& g, const ControlMask& cond) {
    const size_t bdim = size_t{1} << g.targets.size();
    size_t tmask = 0;
    for (int t : g.targets) tmask |= qubit_mask(t, n_);
    CVector sub(bdim);
    for (size_t i = 0; i < dim(); ++i) {
      if ((i & tmask) != 0 || !cond.satisfied(i)) continue;
      for (size_t v = 0; v < bdim; ++v) sub[v] = amps_[with_register_value(i, g.targets, v, n_)];
      inverse_dft(sub);
      for (size_t v = 0; v < bdim; ++v) amps_[with_register_value(i, g.targets, v, n_)] = sub[v];
    }
  }

  void permutation_block(const GateRecord& g, const ControlMask& cond) {
    CVector out(dim(), Complex(0.0, 0.0));
    for (size_t i = 0; i < dim(); ++i) {
      size_t j = i;
      if (cond.satisfied(i)) {
        const size_t v = register_value(i, g.targets, n_);
        j = with_register_value(i, g.targets, static_cast<size_t>(g.table.at(v)), n_);
      }
      out[j] = amps_[i];
    }
    amps_ = std::move(out);
  }

  void qsp_reflection_block(const GateRecord& g, const ControlMask& cond) {
    // targets[0] = the encoding ancilla; the rest index the diagonal values in
    // params: [[D, sqrt(1-D^2)], [sqrt(1-D^2), -D]] on the ancilla per branch.
    const size_t am = qubit_mask(g.targets.at(0), n_);
    const std::vector<int> sys(g.targets.begin() + 1, g.targets.end());
    for (size_t i = 0; i < dim(); ++i) {
      if ((i & am) != 0 || !cond.satisfied(i)) continue;
      const double d = g.params.at(register_value(i, sys, n_));
      const double off = std::sqrt(std::max(0.0, 1.0 - d * d));
      const Complex a = amps_[i], b = amps_[i | am];
      amps_[i] = d * a + off * b;
      amps_[i | am] = off * a - d * b;
    }
  }
};

void check_limits(const CircuitIR& ir, int threshold, const char* what) {
  const int total = ir.total_qubits();
  if (total > SimLimits::hard_cap) {
    throw ResourceError(std::string(what) + ": " + std::to_string(total) +
                        " qubits exceeds the hard simulator cap");
  }
  if (total > threshold) {
    throw ResourceError(std::string(what) + ": " + std::to_string(total) +
                        " qubits exceeds the configured limit of " + std::to_string(threshold));
  }
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
  StateVector s;
  s.n_qubits = n_qubits;
  s.amplitudes.assign(size_t{1} << n_qubits, Complex(0.0, 0.0));
  s.amplitudes[0] = Complex(1.0, 0.0);
  return s;
}

StateVector apply(const CircuitIR& ir, const StateVector& initial, const SimLimits& limits) {
  check_limits(ir, limits.apply_qubits, "apply");
  validate_circuit(ir);
  if (initial.n_qubits != ir.total_qubits() ||
      initial.amplitudes.size() != (size_t{1} << ir.total_qubits())) {
    throw DimensionError("initial state does not match the circuit registers");
  }
  for (const GateRecord& g : ir.gates) {
    if (g.kind == GateKind::QROMLookup && !is_power_of_two(g.table.size())) {
      throw ValidationError("lookup tables must be zero-padded to a power of two");
    }
    if ((g.kind == GateKind::MultiplexedRY || g.kind == GateKind::MultiplexedRZ) &&
        !is_power_of_two(g.params.size())) {
      throw ValidationError("multiplexer branch count must be a power of two");
    }
  }
  StateVector out;
  out.n_qubits = initial.n_qubits;
  out.amplitudes = Interpreter(ir, initial.amplitudes).run();
  return out;
}

CVector extract_block(const CircuitIR& ir, int ancilla_count, const SimLimits& limits) {
  check_limits(ir, limits.extract_qubits, "extract_block");
  const int total = ir.total_qubits();
  if (ancilla_count < 0 || ancilla_count > total) {
    throw DimensionError("ancilla count out of range");
  }
  const int n_sys = total - ancilla_count;
  const size_t sdim = size_t{1} << n_sys;
  SimLimits inner = limits;
  inner.apply_qubits = std::max(limits.apply_qubits, total);
  CVector blockm(sdim * sdim, Complex(0.0, 0.0));
  for (size_t j = 0; j < sdim; ++j) {
    StateVector in;
    in.n_qubits = total;
    in.amplitudes.assign(size_t{1} << total, Complex(0.0, 0.0));
    in.amplitudes[j << ancilla_count] = Complex(1.0, 0.0);
    const StateVector out = apply(ir, in, inner);
    for (size_t i = 0; i < sdim; ++i) {
      blockm[i * sdim + j] = out.amplitudes[i << ancilla_count];
    }
  }
  return blockm;
}

VerificationRecord verify_plan(const MethodPlan& plan, const CircuitIR& ir,
                               const TargetVector& target, const SimLimits& limits) {
  VerificationRecord rec;
  rec.method = method_name(plan.method);
  rec.bound = plan.eps_a_predicted + 1e-10;
  rec.norm = target.task == Task::StatePrep ? "l2" : "linf";
  const int total = ir.total_qubits();
  if (ir.gates.empty() && total == 0) {
    rec.at_scale = false;
    return rec;
  }
  if (target.task == Task::StatePrep) {
    if (total > limits.apply_qubits || total > SimLimits::hard_cap) {
      rec.at_scale = false;
      return rec;
    }
    const StateVector out = apply(ir, StateVector::zero_state(total), limits);
    const size_t sdim = target.dim();
    const int anc = ir.num_ancilla_qubits;
    if (plan.method == Method::AliasSampling) {
      // Marginal-probability metric: the index register's distribution.
      double err2 = 0.0;
      for (size_t i = 0; i < sdim; ++i) {
        double p = 0.0;
        for (size_t a = 0; a < (size_t{1} << anc); ++a) {
          p += std::norm(out.amplitudes[(i << anc) + a]);
        }
        const double q = std::norm(target.amplitudes[i]);
        err2 += (p - q) * (p - q);
      }
      rec.achieved_error = std::sqrt(err2);
    } else {
      CVector sub(sdim);
      for (size_t i = 0; i < sdim; ++i) sub[i] = out.amplitudes[i << anc];
      rec.achieved_error = l2_distance(sub, target.amplitudes);
    }
  } else {
    if (total > limits.extract_qubits || total > SimLimits::hard_cap) {
      rec.at_scale = false;
      return rec;
    }
    const CVector blockm = extract_block(ir, ir.num_ancilla_qubits, limits);
    const size_t sdim = target.dim();
    double worst = 0.0;
    for (size_t j = 0; j < sdim; ++j) {
      worst = std::max(worst, std::abs(blockm[j * sdim + j] - target.amplitudes[j]));
    }
    rec.achieved_error = worst;
  }
  rec.at_scale = true;
  rec.pass = rec.achieved_error <= rec.bound;
  return rec;
}

}  // namespace qdl
