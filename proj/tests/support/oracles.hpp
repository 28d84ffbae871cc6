// Independent dense-matrix reference implementations used to cross-check the
// bit-twiddling fast paths. Everything here is deliberately naive: explicit
// Kronecker products, full 2^n x 2^n unitaries, textbook formulas.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pbench/bench_gen.hpp"
#include "pbench/circuit.hpp"
#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"

namespace oracles {

using Cplx = std::complex<double>;

inline Eigen::Matrix2cd letter_matrix(pbench::Letter l) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const Cplx i(0.0, 1.0);
  switch (l) {
    case pbench::Letter::I: m(0, 0) = 1; m(1, 1) = 1; break;
    case pbench::Letter::X: m(0, 1) = 1; m(1, 0) = 1; break;
    case pbench::Letter::Y: m(0, 1) = -i; m(1, 0) = i; break;
    case pbench::Letter::Z: m(0, 0) = 1; m(1, 1) = -1; break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Matrix of a Pauli string with qubit q on bit q of the basis index
// (little-endian, matching the statevector engine), including i^phase_exp.
inline Eigen::MatrixXcd pauli_matrix(const pbench::PauliString& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (std::uint32_t q = p.num_qubits(); q-- > 0;) {
    m = kron(m, letter_matrix(p.letter(q)));
  }
  const Cplx i(0.0, 1.0);
  Cplx phase = 1.0;
  for (std::uint32_t k = 0; k < p.phase_exp(); ++k) phase *= i;
  return phase * m;
}

// exp(+i*theta/2 * P) = cos(theta/2) I + i sin(theta/2) P for plain-letter
// Hermitian P; this is the codebase's gate convention.
inline Eigen::MatrixXcd rotation_matrix(const pbench::PauliString& p,
                                        double theta) {
  const Eigen::Index dim = Eigen::Index(1) << p.num_qubits();
  const Cplx i(0.0, 1.0);
  return std::cos(theta / 2) * Eigen::MatrixXcd::Identity(dim, dim) +
         i * std::sin(theta / 2) * pauli_matrix(p);
}

inline Eigen::MatrixXcd sum_matrix(const pbench::PauliSum& sum) {
  const Eigen::Index dim = Eigen::Index(1) << sum.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [term, coeff] : sum) {
    m += coeff * pauli_matrix(term);
  }
  return m;
}

// Gate's Pauli axis on the circuit's member register (local index = position
// of the device qubit in members).
inline pbench::PauliString localize_gate(const pbench::RotationGate& gate,
                                         const pbench::QubitSubset& subset) {
  pbench::PauliString p(static_cast<std::uint32_t>(subset.members.size()));
  for (int i = 0; i < gate.width; ++i) {
    p.set_letter(subset.local_index(gate.qubits[i]), gate.letters[i]);
  }
  return p;
}

// Full 2^N x 2^N unitary of the circuit on its member register.
inline Eigen::MatrixXcd circuit_unitary(const pbench::Circuit& circuit) {
  const std::uint32_t n =
      static_cast<std::uint32_t>(circuit.qubits().members.size());
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  circuit.for_each_gate([&](const pbench::RotationGate& gate,
                            pbench::LayerTag, std::size_t) {
    u = rotation_matrix(localize_gate(gate, circuit.qubits()), gate.angle) * u;
  });
  return u;
}

inline Eigen::VectorXcd zero_state(std::uint32_t n) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
  v(0) = 1.0;
  return v;
}

// Normalized single-qubit eigenvector of `state.axis` with eigenvalue
// `state.sign`.
inline Eigen::Vector2cd eigenstate_vector(const pbench::EigenState& state) {
  const Cplx i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Vector2cd v;
  switch (state.axis) {
    case pbench::Letter::X:
      v << r, (state.sign > 0 ? r : -r);
      break;
    case pbench::Letter::Y:
      v << r, (state.sign > 0 ? i * r : -i * r);
      break;
    default:  // Z
      if (state.sign > 0) {
        v << 1.0, 0.0;
      } else {
        v << 0.0, 1.0;
      }
      break;
  }
  return v;
}

// |a| == |<u, v>| up to tolerance iff u equals v up to a global phase.
inline bool same_up_to_phase(const Eigen::VectorXcd& u,
                             const Eigen::VectorXcd& v, double tol = 1e-10) {
  const Cplx inner = (u.adjoint() * v)(0, 0);
  return std::abs(std::abs(inner) - 1.0) < tol;
}

inline pbench::Letter random_letter(pbench::Rng& rng, bool allow_identity) {
  const std::uint64_t n = allow_identity ? 4 : 3;
  const std::uint64_t pick = pbench::uniform_index(rng, n);
  return static_cast<pbench::Letter>(allow_identity ? pick : pick + 1);
}

inline pbench::PauliString random_pauli(std::uint32_t num_qubits,
                                        pbench::Rng& rng,
                                        bool hermitian_only = false) {
  pbench::PauliString p(num_qubits);
  for (std::uint32_t q = 0; q < num_qubits; ++q) {
    p.set_letter(q, random_letter(rng, true));
  }
  const std::uint64_t phase = pbench::uniform_index(rng, 4);
  p.set_phase_exp(hermitian_only ? (phase & 2u) : static_cast<std::uint32_t>(phase));
  return p;
}

// Random circuit on a path layout over all `n` device qubits: per step a
// single-qubit layer on every qubit plus the induced color layers, every
// gate drawing fresh letters and an angle from `angles`.
inline pbench::Circuit random_circuit(const pbench::DeviceLayout& layout,
                                      const pbench::QubitSubset& subset,
                                      std::uint32_t steps,
                                      const std::vector<double>& angles,
                                      pbench::Rng& rng) {
  const pbench::AnsatzSkeleton sk =
      pbench::build_ansatz(layout, subset, steps, 0.0);
  std::vector<pbench::GateAssignment> fills;
  fills.reserve(sk.placeholder_count());
  for (const pbench::SkeletonLayer& layer : sk.layers) {
    for (const pbench::Placeholder& slot : layer.slots) {
      pbench::GateAssignment a;
      a.l0 = random_letter(rng, false);
      a.l1 = slot.width == 2 ? random_letter(rng, false) : pbench::Letter::I;
      a.angle = angles[pbench::uniform_index(rng, angles.size())];
      fills.push_back(a);
    }
  }
  return pbench::instantiate_skeleton(sk, fills);
}

// Path graph 0-1-2-...-(n-1) with alternating colors 1/2.
inline pbench::DeviceLayout path_layout(std::uint32_t n) {
  std::string text = "qubits " + std::to_string(n) + "\n";
  for (std::uint32_t q = 0; q + 1 < n; ++q) {
    text += std::to_string(q) + " " + std::to_string(q + 1) + " " +
            (q % 2 == 0 ? "1" : "2") + "\n";
  }
  return pbench::DeviceLayout::load_text(text);
}

// Even-length ring 0-1-...-(n-1)-0 with alternating colors 1/2.
inline pbench::DeviceLayout ring_layout(std::uint32_t n) {
  std::string text = "qubits " + std::to_string(n) + "\n";
  for (std::uint32_t q = 0; q < n; ++q) {
    text += std::to_string(q) + " " + std::to_string((q + 1) % n) + " " +
            (q % 2 == 0 ? "1" : "2") + "\n";
  }
  return pbench::DeviceLayout::load_text(text);
}

inline pbench::QubitSubset all_qubits(const pbench::DeviceLayout& layout,
                                      std::uint32_t anchor = 0) {
  std::vector<std::uint32_t> members(layout.num_qubits());
  for (std::uint32_t q = 0; q < layout.num_qubits(); ++q) members[q] = q;
  return pbench::QubitSubset{members, anchor};
}

}  // namespace oracles
