#include "pbench/bench_gen.hpp"

#include <cmath>

#include "pbench/errors.hpp"
#include "pbench/sim_clifford.hpp"

namespace pbench {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

void check_eigenstate(const EigenState& s) {
  if (s.axis == Letter::I || (s.sign != 1 && s.sign != -1)) {
    throw DomainError("eigenstate needs a non-I axis and sign +1 or -1");
  }
}

Letter random_letter(Rng& rng) {
  return static_cast<Letter>(1 + uniform_index(rng, 3));
}

}  // namespace

EigenState propagate_eigenstate(EigenState state, Letter letter,
                                double effective_angle) {
  check_eigenstate(state);
  if (letter == Letter::I) {
    throw DomainError("propagation letter must be non-I");
  }
  if (!is_clifford_angle(effective_angle)) {
    throw DomainError("eigenstate propagation needs a multiple of pi/2");
  }
  // A|psi> = s|psi> gives (R A R^dag)(R|psi>) = s R|psi>: the new state is
  // the s eigenstate of the conjugated axis, a single signed Pauli letter
  // for any quarter- or half-turn rotation.
  PauliSum axis(1);
  axis.add_term(PauliString::single(1, 0, state.axis), 1.0);
  const PauliSum image = conjugate_by_rotation(
      axis, PauliString::single(1, 0, letter), effective_angle);
  if (image.size() != 1) {
    throw DomainError("eigenstate propagation produced a non-Pauli image");
  }
  const auto& [key, coeff] = *image.begin();
  EigenState out;
  out.axis = key.letter(0);
  out.sign = (coeff > 0.0) ? state.sign : -state.sign;
  return out;
}

std::optional<std::pair<Letter, double>> alignment_rotation(EigenState from,
                                                            EigenState to) {
  check_eigenstate(from);
  check_eigenstate(to);
  if (from == to) return std::nullopt;
  if (from.axis == to.axis) {
    // Sign flip: half turn about either anticommuting letter; take the
    // lexicographically smaller one.
    const Letter about =
        (from.axis == Letter::X) ? Letter::Y : Letter::X;
    return std::make_pair(about, 2.0 * kHalfPi);
  }
  // Axis change: quarter turn about the third axis, direction fixed by
  // which of the two lands on the requested sign.
  const int third = 6 - static_cast<int>(from.axis) - static_cast<int>(to.axis);
  const Letter about = static_cast<Letter>(third);
  for (const double angle : {kHalfPi, -kHalfPi}) {
    if (propagate_eigenstate(from, about, angle) == to) {
      return std::make_pair(about, angle);
    }
  }
  throw DomainError("no quarter turn connects the given eigenstates");
}

Circuit generate_benchmark_circuit(const AnsatzSkeleton& skeleton,
                                   const PauliString& obs, Rng& rng,
                                   std::vector<EigenState>* frontier) {
  if (std::abs(skeleton.global_angle - kHalfPi) > 1e-12) {
    throw DomainError("benchmark generation needs global angle pi/2");
  }
  if (!obs.is_hermitian() || obs.sign() != 1) {
    // Alignment rotates into +1 eigenstates, which pins <obs> = +1 only for
    // a positive-sign observable.
    throw DomainError("benchmark observable must be Hermitian with + sign");
  }
  if (obs.num_qubits() != skeleton.num_device_qubits) {
    throw DimensionError("observable size differs from device size");
  }
  const QubitSubset& subset = skeleton.qubits;
  for (std::uint32_t q : obs.support()) {
    if (!subset.contains(q)) {
      throw DomainError("benchmark observable acts outside the subset");
    }
  }

  std::vector<EigenState> state(subset.members.size());  // all (Z, +1)
  const double theta = skeleton.global_angle;

  std::vector<Layer> layers;
  layers.reserve(skeleton.layers.size() + 1);
  for (const SkeletonLayer& sl : skeleton.layers) {
    Layer layer{sl.tag, {}};
    layer.gates.reserve(sl.slots.size());
    for (const Placeholder& slot : sl.slots) {
      if (slot.width == 1) {
        const std::uint32_t q = slot.qubits[0];
        const Letter l = random_letter(rng);
        layer.gates.push_back(RotationGate::one(q, l, theta));
        EigenState& s = state[subset.local_index(q)];
        s = propagate_eigenstate(s, l, theta);
      } else {
        // exp(i theta (P1 x P2)/2) on |q1>x|q2> with P1|q1> = s1|q1>
        // factorizes as |q1> x exp(i s1 theta P2/2)|q2>, so picking P1 as
        // q1's axis keeps the register a product state.
        const std::uint32_t q1 = slot.qubits[0];
        const std::uint32_t q2 = slot.qubits[1];
        EigenState& s1 = state[subset.local_index(q1)];
        EigenState& s2 = state[subset.local_index(q2)];
        const Letter l2 = random_letter(rng);
        layer.gates.push_back(RotationGate::two(q1, q2, s1.axis, l2, theta));
        s2 = propagate_eigenstate(s2, l2, s1.sign * theta);
      }
    }
    layers.push_back(std::move(layer));
  }

  if (frontier != nullptr) *frontier = state;

  Layer alignment{LayerTag::Alignment, {}};
  for (std::uint32_t q : obs.support()) {
    const EigenState target{obs.letter(q), +1};
    EigenState& s = state[subset.local_index(q)];
    if (const auto rot = alignment_rotation(s, target)) {
      alignment.gates.push_back(RotationGate::one(q, rot->first, rot->second));
      s = propagate_eigenstate(s, rot->first, rot->second);
    }
    if (s != target) {
      throw DomainError("alignment failed to reach the target eigenstate");
    }
  }
  layers.push_back(std::move(alignment));

  return Circuit(skeleton.num_device_qubits, subset, std::move(layers), obs);
}

}  // namespace pbench
