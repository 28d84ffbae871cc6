#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pbench/circuit.hpp"
#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"

namespace pbench {

// A single-qubit Pauli eigenstate: the `sign` eigenstate of `axis`
// (axis is never I). |0> is {Z, +1}.
struct EigenState {
  Letter axis = Letter::Z;
  int sign = +1;

  bool operator==(const EigenState& o) const {
    return axis == o.axis && sign == o.sign;
  }
  bool operator!=(const EigenState& o) const { return !(*this == o); }
};

// State after exp(i*effective_angle/2*letter): the image is the same-sign
// eigenstate of the conjugated axis operator, so commuting letters leave the
// state alone and quarter/half turns move it along the axis triad exactly.
// The angle must be a multiple of pi/2.
EigenState propagate_eigenstate(EigenState state, Letter letter,
                                double effective_angle);

// The single rotation (letter, angle) with angle in {+pi/2, -pi/2, pi}
// mapping `from` to `to`, or nullopt when they already agree. A sign flip
// rotates by pi about the lexicographically smaller anticommuting letter; an
// axis change is a quarter turn about the third axis.
std::optional<std::pair<Letter, double>> alignment_rotation(EigenState from,
                                                            EigenState to);

// Fills the skeleton front to back so the register state stays an exact
// product of single-qubit Pauli eigenstates, then appends one alignment
// layer rotating each observable-support qubit into the +1 eigenstate of
// its observable letter; the result therefore satisfies <obs> = 1 exactly.
//
// Draw protocol (frozen for reproducibility): one uniform_index(3) per
// single-qubit slot for its letter; one uniform_index(3) per two-qubit slot
// for the second qubit's letter (the first qubit's letter is its current
// axis, which keeps that qubit's state untouched).
//
// Requires skeleton.global_angle == pi/2 and support(obs) within the
// skeleton's members. If `frontier` is given it receives the pre-alignment
// register, one entry per member in member order.
Circuit generate_benchmark_circuit(const AnsatzSkeleton& skeleton,
                                   const PauliString& obs, Rng& rng,
                                   std::vector<EigenState>* frontier = nullptr);

}  // namespace pbench
