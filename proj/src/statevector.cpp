#include "qpilot/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "qpilot/detail/overloaded.hpp"
#include "qpilot/error.hpp"

namespace qpilot {

namespace {

constexpr Amplitude kI{0.0, 1.0};

using detail::Overloaded;

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
  if (n_qubits > kMaxOracleQubits) {
    throw CapacityError("oracle supports at most " + std::to_string(kMaxOracleQubits) +
                        " qubits, got " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits > kMaxOracleQubits) {
    throw CapacityError("oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
  }
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw InvalidArgument("amplitude count does not match qubit count");
  }
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) {
    s += std::norm(a);
  }
  return s;
}

void StateVector::apply_1q(const Matrix2& m, std::size_t q) {
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) {
      continue;
    }
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | bit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_cphase(std::size_t a, std::size_t b, double phase) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  const Amplitude f = std::polar(1.0, phase);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) {
      amps_[i] *= f;
    }
  }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  const std::size_t cb = std::size_t{1} << control;
  const std::size_t tb = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cb) && !(i & tb)) {
      std::swap(amps_[i], amps_[i | tb]);
    }
  }
}

void StateVector::apply_swap(std::size_t a, std::size_t b) {
  const std::size_t ab = std::size_t{1} << a;
  const std::size_t bb = std::size_t{1} << b;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & ab) && !(i & bb)) {
      std::swap(amps_[i], amps_[(i & ~ab) | bb]);
    }
  }
}

void StateVector::apply(const Gate& g) {
  switch (g.kind) {
  case GateKind::CZ: apply_cphase(g.qubits[0], g.qubits[1], std::numbers::pi); break;
  case GateKind::CNOT: apply_cnot(g.qubits[0], g.qubits[1]); break;
  case GateKind::SWAP: apply_swap(g.qubits[0], g.qubits[1]); break;
  case GateKind::ZZ: {
    // exp(-i angle/2 Z Z): phase by parity.
    const std::size_t ab = std::size_t{1} << g.qubits[0];
    const std::size_t bb = std::size_t{1} << g.qubits[1];
    const Amplitude even = std::polar(1.0, -g.angle / 2);
    const Amplitude odd = std::polar(1.0, g.angle / 2);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      amps_[i] *= (((i & ab) != 0) != ((i & bb) != 0)) ? odd : even;
    }
    break;
  }
  default: apply_1q(gate_matrix(g.kind, g.angle), g.qubits[0]); break;
  }
}

double StateVector::excited_amplitude(std::size_t q) const {
  const std::size_t bit = std::size_t{1} << q;
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) {
      p += std::norm(amps_[i]);
    }
  }
  return std::sqrt(p);
}

void StateVector::reset_to_zero(std::size_t q) {
  const std::size_t bit = std::size_t{1} << q;
  double p0 = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) {
      amps_[i] = 0.0;
    } else {
      p0 += std::norm(amps_[i]);
    }
  }
  if (p0 > 0.0) {
    const double s = 1.0 / std::sqrt(p0);
    for (auto& a : amps_) {
      a *= s;
    }
  }
}

StateVector StateVector::truncated(std::size_t keep) const {
  std::vector<Amplitude> out(std::size_t{1} << keep);
  std::copy_n(amps_.begin(), out.size(), out.begin());
  return StateVector(keep, std::move(out));
}

StateVector StateVector::product(const std::vector<std::array<Amplitude, 2>>& factors) {
  StateVector sv(factors.size());
  for (std::size_t i = 0; i < sv.amps_.size(); ++i) {
    Amplitude a = 1.0;
    for (std::size_t q = 0; q < factors.size(); ++q) {
      a *= factors[q][(i >> q) & 1U];
    }
    sv.amps_[i] = a;
  }
  return sv;
}

Matrix2 gate_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  const double r = (1.0 / std::numbers::sqrt2);
  switch (kind) {
  case GateKind::RX: return {c, -kI * s, -kI * s, c};
  case GateKind::RY: return {c, -s, s, c};
  case GateKind::RZ: return {std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2)};
  case GateKind::H: return {r, r, r, -r};
  case GateKind::S: return {1.0, 0.0, 0.0, kI};
  case GateKind::Sdg: return {1.0, 0.0, 0.0, -kI};
  default: throw InvalidArgument("not a single-qubit gate: " + std::string(to_string(kind)));
  }
}

Matrix2 local_matrix(const LocalOp& op) {
  if (op.kind != GateKind::U3) {
    return gate_matrix(op.kind, op.angle);
  }
  const double c = std::cos(op.angle / 2);
  const double s = std::sin(op.angle / 2);
  return {c, -std::polar(s, op.lambda), std::polar(s, op.phi), std::polar(c, op.phi + op.lambda)};
}

double overlap_fidelity(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw InvalidArgument("overlap of states with different qubit counts");
  }
  Amplitude ip = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    ip += std::conj(a[i]) * b[i];
  }
  return std::norm(ip);
}

StateVector random_product_state(std::size_t n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::array<Amplitude, 2>> f(n_qubits);
  for (auto& q : f) {
    Amplitude a{gauss(rng), gauss(rng)};
    Amplitude b{gauss(rng), gauss(rng)};
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    q = {a / n, b / n};
  }
  return StateVector::product(f);
}

StateVector simulate(const Circuit& c) { return simulate(c, StateVector(c.n_qubits())); }

StateVector simulate(const Circuit& c, StateVector input) {
  if (input.n_qubits() != c.n_qubits()) {
    throw InvalidArgument("input state size does not match circuit");
  }
  for (const Gate& g : c.gates()) {
    input.apply(g);
  }
  return input;
}

ScheduleRun simulate_schedule(const Schedule& s, const StateVector& input, double tolerance) {
  if (input.n_qubits() != s.n_qubits) {
    throw InvalidArgument("input state size does not match schedule");
  }
  // Size the register for the peak number of simultaneously loaded ancillas.
  std::size_t live = s.initial_aod.occupied.size();
  std::size_t peak = live;
  for (const Stage& st : s.stages) {
    if (const auto* t = std::get_if<TransferStage>(&st)) {
      for (const Transfer& tr : t->transfers) {
        live = tr.load ? live + 1 : live - 1;
        peak = std::max(peak, live);
      }
    }
  }
  const std::size_t total = s.n_qubits + peak;
  if (total > kMaxOracleQubits) {
    throw CapacityError("schedule needs " + std::to_string(total) + " simulated atoms");
  }
  std::vector<Amplitude> amps(std::size_t{1} << total, 0.0);
  std::copy(input.amplitudes().begin(), input.amplitudes().end(), amps.begin());
  StateVector sv(total, std::move(amps));

  std::map<AtomId, std::size_t> slot;
  std::vector<bool> used(total, false);
  for (std::size_t q = 0; q < s.n_qubits; ++q) {
    slot[static_cast<AtomId>(q)] = q;
    used[q] = true;
  }
  auto acquire = [&](AtomId a) {
    const auto it = std::find(used.begin() + static_cast<std::ptrdiff_t>(s.n_qubits), used.end(), false);
    if (it == used.end()) {
      throw CapacityError("no free oracle slot for ancilla " + std::to_string(a));
    }
    *it = true;
    slot[a] = static_cast<std::size_t>(it - used.begin());
  };
  auto slot_of = [&](AtomId a) {
    const auto it = slot.find(a);
    if (it == slot.end()) {
      throw InvalidArgument("schedule references unloaded atom " + std::to_string(a));
    }
    return it->second;
  };
  for (const auto& [crossing, atom] : s.initial_aod.occupied) {
    acquire(atom);
  }

  double max_leak = 0.0;
  auto retire = [&](AtomId a) {
    const std::size_t q = slot_of(a);
    const double leak = sv.excited_amplitude(q);
    max_leak = std::max(max_leak, leak);
    if (leak > tolerance) {
      throw AncillaLeakError("ancilla " + std::to_string(a) + " not disentangled (|1> amplitude " +
                             std::to_string(leak) + ")");
    }
    sv.reset_to_zero(q);
    used[q] = false;
    slot.erase(a);
  };

  for (const Stage& st : s.stages) {
    std::visit(Overloaded{
                   [&](const RamanStage& r) {
                     for (const LocalOp& op : r.ops) {
                       sv.apply_1q(local_matrix(op), slot_of(op.atom));
                     }
                   },
                   [&](const RydbergStage& r) {
                     for (const auto& [a, b] : r.pairs) {
                       sv.apply_cphase(slot_of(a), slot_of(b), r.phase);
                     }
                   },
                   [&](const TransferStage& t) {
                     for (const Transfer& tr : t.transfers) {
                       if (tr.load) {
                         acquire(tr.atom);
                       } else {
                         retire(tr.atom);
                       }
                     }
                   },
                   [](const MoveStage&) {},
                   [](const MeasureStage&) {},
               },
               st);
  }
  std::vector<AtomId> remaining;
  for (const auto& [atom, q] : slot) {
    if (atom >= s.n_qubits) {
      remaining.push_back(atom);
    }
  }
  for (const AtomId a : remaining) {
    retire(a);
  }
  return {sv.truncated(s.n_qubits), max_leak};
}

StateVector simulate_schedule(const Schedule& s) {
  return simulate_schedule(s, StateVector(s.n_qubits)).data;
}

double equivalence(const Circuit& c, const Schedule& s, std::size_t n_random, std::uint64_t seed) {
  if (c.n_qubits() != s.n_qubits) {
    throw InvalidArgument("circuit and schedule act on different qubit counts");
  }
  double worst = overlap_fidelity(simulate(c), simulate_schedule(s));
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < n_random; ++k) {
    const StateVector in = random_product_state(c.n_qubits(), rng);
    worst = std::min(worst, overlap_fidelity(simulate(c, in), simulate_schedule(s, in).data));
  }
  return worst;
}

} // namespace qpilot
