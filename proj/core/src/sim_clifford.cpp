#include "pbench/sim_clifford.hpp"

#include <cmath>
#include <cstdlib>

#include "pbench/errors.hpp"
#include "pbench/rng.hpp"

namespace pbench {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

PauliString localized_gate_pauli(const RotationGate& gate,
                                 const QubitSubset& subset,
                                 std::uint32_t num_local) {
  PauliString p(num_local);
  for (int i = 0; i < gate.width; ++i) {
    p.set_letter(subset.local_index(gate.qubits[i]), gate.letters[i]);
  }
  return p;
}

}  // namespace

int quarter_turns(double angle, double tol) {
  const double ratio = angle / kHalfPi;
  const long long k = std::llround(ratio);
  if (std::abs(angle - static_cast<double>(k) * kHalfPi) > tol) {
    throw EngineMismatchError(
        "rotation angle is not a multiple of pi/2 within tolerance");
  }
  return static_cast<int>(((k % 4) + 4) % 4);
}

bool is_clifford_angle(double angle, double tol) {
  const double ratio = angle / kHalfPi;
  const long long k = std::llround(ratio);
  return std::abs(angle - static_cast<double>(k) * kHalfPi) <= tol;
}

bool is_clifford_circuit(const Circuit& circuit, double tol) {
  bool ok = true;
  circuit.for_each_gate([&](const RotationGate& gate, LayerTag, std::size_t) {
    if (!is_clifford_angle(gate.angle, tol)) ok = false;
  });
  return ok;
}

Tableau::Tableau(std::uint32_t num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits == 0) {
    throw DomainError("tableau needs at least one qubit");
  }
  stab_.reserve(num_qubits);
  destab_.reserve(num_qubits);
  for (std::uint32_t q = 0; q < num_qubits; ++q) {
    stab_.push_back(PauliString::single(num_qubits, q, Letter::Z));
    destab_.push_back(PauliString::single(num_qubits, q, Letter::X));
  }
  stab_sign_.assign(num_qubits, 1);
  destab_sign_.assign(num_qubits, 1);
}

void Tableau::apply_rotation(const PauliString& p, double angle) {
  if (p.num_qubits() != num_qubits_ || p.phase_exp() != 0) {
    throw DomainError("tableau rotation needs a phase-free register Pauli");
  }
  const int k = quarter_turns(angle);
  if (k == 0) return;
  auto conjugate_row = [&](PauliString& row, int& sign) {
    if (commutes(p, row)) return;
    if (k == 2) {
      sign = -sign;
      return;
    }
    // Quarter turn: row -> i*P*row (k == 1) or -i*P*row (k == 3); the product
    // of anticommuting Hermitian Paulis has odd phase, so both results are
    // Hermitian again.
    const PauliString pr = multiply(p, row);
    const int shift = (k == 1) ? 1 : 3;
    if ((pr.phase_exp() + shift) & 2) sign = -sign;
    row = pr.canonical_letters();
  };
  for (std::uint32_t i = 0; i < num_qubits_; ++i) {
    conjugate_row(stab_[i], stab_sign_[i]);
    conjugate_row(destab_[i], destab_sign_[i]);
  }
}

int Tableau::expectation(const PauliString& obs) const {
  if (obs.num_qubits() != num_qubits_) {
    throw DimensionError("observable size does not match tableau");
  }
  const int obs_sign = obs.sign();
  const PauliString obs_letters = obs.canonical_letters();
  for (std::uint32_t i = 0; i < num_qubits_; ++i) {
    if (!commutes(obs_letters, stab_[i])) return 0;
  }
  // obs commutes with the full stabilizer group, hence equals (up to sign)
  // the product of the stabilizers whose destabilizer partners anticommute
  // with it.
  PauliString g(num_qubits_);
  int g_sign = 1;
  for (std::uint32_t i = 0; i < num_qubits_; ++i) {
    if (commutes(obs_letters, destab_[i])) continue;
    const PauliString pr = multiply(g, stab_[i]);
    if (pr.phase_exp() & 2) g_sign = -g_sign;
    if (stab_sign_[i] < 0) g_sign = -g_sign;
    g = pr.canonical_letters();
  }
  if (!(g == obs_letters)) {
    throw DomainError("stabilizer expansion does not reproduce observable");
  }
  return (g_sign == obs_sign) ? 1 : -1;
}

const PauliString& Tableau::stabilizer_letters(std::uint32_t i) const {
  if (i >= num_qubits_) throw DomainError("stabilizer index out of range");
  return stab_[i];
}

int Tableau::stabilizer_sign(std::uint32_t i) const {
  if (i >= num_qubits_) throw DomainError("stabilizer index out of range");
  return stab_sign_[i];
}

double clifford_expectation(const Circuit& circuit) {
  const QubitSubset& subset = circuit.qubits();
  const std::uint32_t n = static_cast<std::uint32_t>(subset.members.size());
  Tableau tableau(n);
  circuit.for_each_gate([&](const RotationGate& gate, LayerTag, std::size_t) {
    tableau.apply_rotation(localized_gate_pauli(gate, subset, n),
                           gate.angle);
  });
  return static_cast<double>(
      tableau.expectation(circuit.observable().compress(subset.members)));
}

NoisyEstimate clifford_noisy_expectation(const Circuit& circuit,
                                         const NoiseModel& noise,
                                         std::uint64_t trajectories,
                                         std::uint64_t seed) {
  noise.validate();
  if (trajectories == 0) {
    throw DomainError("trajectory count must be positive");
  }
  const double ideal = clifford_expectation(circuit);

  const QubitSubset& subset = circuit.qubits();
  const std::uint32_t n = static_cast<std::uint32_t>(subset.members.size());
  struct Slot {
    int width;
    std::array<std::uint32_t, 2> local{};
    PauliString frame;  // observable pulled back to just after this gate
  };
  std::vector<Slot> slots;
  circuit.for_each_gate([&](const RotationGate& gate, LayerTag, std::size_t) {
    Slot slot{gate.width, {}, PauliString(n)};
    for (int i = 0; i < slot.width; ++i) {
      slot.local[i] = subset.local_index(gate.qubits[i]);
    }
    slots.push_back(std::move(slot));
  });

  // Back-evolve the observable through the gate suffix; errors are Pauli, so
  // only the letters matter and sign tracking is unnecessary.
  {
    PauliString frame =
        circuit.observable().compress(subset.members).canonical_letters();
    std::size_t k = slots.size();
    circuit.for_each_gate_reverse(
        [&](const RotationGate& gate, LayerTag, std::size_t) {
          slots[--k].frame = frame;
          const PauliString p = localized_gate_pauli(gate, subset, n);
          if (!commutes(p, frame)) {
            const int turns = quarter_turns(gate.angle);
            if (turns == 1 || turns == 3) {
              frame = multiply(p, frame).canonical_letters();
            }
          }
        });
  }

  auto error_anticommutes = [](const SampledError& err, const Slot& slot) {
    int parity = 0;
    for (int i = 0; i < slot.width; ++i) {
      const Letter e = err.letters[i];
      if (e == Letter::I) continue;
      const Letter f = slot.frame.letter(slot.local[i]);
      if (f != Letter::I && f != e) parity ^= 1;
    }
    return parity != 0;
  };

  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trajectories; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    bool flip = false;
    for (const Slot& slot : slots) {
      const SampledError err = (slot.width == 2)
                                   ? sample_two_qubit_error(noise, rng)
                                   : sample_single_qubit_error(noise, rng);
      if (err.hit && error_anticommutes(err, slot)) flip = !flip;
    }
    const double v = flip ? -ideal : ideal;
    sum += v;
    sum_sq += v * v;
  }
  NoisyEstimate out;
  out.trajectories = trajectories;
  const double count = static_cast<double>(trajectories);
  out.mean = sum / count;
  if (trajectories > 1) {
    double var = (sum_sq - count * out.mean * out.mean) / (count - 1.0);
    if (var < 0.0) var = 0.0;
    out.std_error = std::sqrt(var / count);
  }
  return out;
}

}  // namespace pbench
