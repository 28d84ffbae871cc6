#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pbench/circuit.hpp"
#include "pbench/noise.hpp"

namespace pbench {

// Dense statevector engine. The register holds only the circuit's member
// qubits: local qubit i is members[i] and occupies bit i of the basis index.
// The initial state is |0...0>.
inline constexpr std::uint32_t kDenseQubitCap = 20;

// Throws CapacityError when the subset exceeds max_qubits.
std::vector<std::complex<double>> dense_final_state(
    const Circuit& circuit, std::uint32_t max_qubits = kDenseQubitCap);

// <psi|O|psi> for the circuit's observable on the noiseless final state.
double dense_expectation(const Circuit& circuit,
                         std::uint32_t max_qubits = kDenseQubitCap);

// Monte Carlo over error trajectories. Trajectory t uses
// make_rng(derive_seed(seed, t)) and consumes draws per the protocol in
// noise.hpp, so equal seeds reproduce equal error histories across engines.
NoisyEstimate dense_noisy_expectation(const Circuit& circuit,
                                      const NoiseModel& noise,
                                      std::uint64_t trajectories,
                                      std::uint64_t seed,
                                      std::uint32_t max_qubits = kDenseQubitCap);

// Reduced density matrix of member qubits (q1, q2) of the noiseless final
// state; q1 is the low bit of the 2-bit row index.
Eigen::Matrix4cd dense_pair_rdm(const Circuit& circuit, std::uint32_t q1,
                                std::uint32_t q2,
                                std::uint32_t max_qubits = kDenseQubitCap);

// Von Neumann entropy in bits, -sum lambda log2 lambda; eigenvalues below
// 1e-12 are treated as exact zeros.
double entanglement_entropy(const Eigen::MatrixXcd& rho);

}  // namespace pbench
