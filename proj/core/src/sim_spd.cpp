#include "pbench/sim_spd.hpp"

#include "pbench/errors.hpp"

namespace pbench {

namespace {

void check_observable(const Circuit& circuit, const PauliString& obs) {
  if (obs.num_qubits() != circuit.num_device_qubits()) {
    throw DimensionError("observable size differs from device size");
  }
  if (!obs.is_hermitian()) {
    throw DomainError("Heisenberg evolution needs a Hermitian observable");
  }
}

bool x_bits_zero(const PauliString& p) {
  for (std::size_t w = 0; w < p.word_count(); ++w) {
    if (p.x_word(w) != 0) return false;
  }
  return true;
}

}  // namespace

PauliSum heisenberg_evolve(const Circuit& circuit, const PauliString& obs,
                           double threshold) {
  check_observable(circuit, obs);
  if (threshold < 0.0) {
    throw DomainError("truncation threshold must be non-negative");
  }
  const std::uint32_t n = circuit.num_device_qubits();
  PauliSum sum(n);
  sum.add_term(obs, 1.0);
  circuit.for_each_gate_reverse(
      [&](const RotationGate& gate, LayerTag, std::size_t) {
        sum = conjugate_by_rotation(sum, gate.pauli(n), -gate.angle);
        if (threshold > 0.0) sum.truncate(threshold);
      });
  return sum;
}

double expectation_spd(const Circuit& circuit, const PauliString& obs,
                       double threshold) {
  const PauliSum evolved = heisenberg_evolve(circuit, obs, threshold);
  double value = 0.0;
  for (const auto& [key, coeff] : evolved) {
    if (x_bits_zero(key)) value += coeff;
  }
  return value;
}

GrowthProfile term_growth_profile(const Circuit& circuit,
                                  const PauliString& obs, double threshold,
                                  std::size_t term_cap) {
  check_observable(circuit, obs);
  if (threshold < 0.0) {
    throw DomainError("truncation threshold must be non-negative");
  }
  if (term_cap < 1) {
    throw DomainError("term cap must be at least 1");
  }
  const std::uint32_t n = circuit.num_device_qubits();
  PauliSum sum(n);
  sum.add_term(obs, 1.0);

  // Flatten once so the walk can stop early; for_each_gate_reverse has no
  // break channel.
  struct Step {
    RotationGate gate;
    LayerTag tag;
  };
  std::vector<Step> steps;
  steps.reserve(circuit.num_gates());
  circuit.for_each_gate_reverse(
      [&](const RotationGate& gate, LayerTag tag, std::size_t) {
        steps.push_back({gate, tag});
      });

  GrowthProfile profile;
  profile.points.reserve(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) {
    sum = conjugate_by_rotation(sum, steps[i].gate.pauli(n),
                                -steps[i].gate.angle);
    if (threshold > 0.0) sum.truncate(threshold);
    GrowthPoint point;
    point.gate_index = i;
    point.tag = steps[i].tag;
    point.num_terms = sum.size();
    point.capped = sum.size() > term_cap;
    profile.points.push_back(point);
    if (point.capped) {
      profile.capped = true;
      break;
    }
  }
  return profile;
}

}  // namespace pbench
