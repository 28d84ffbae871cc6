#pragma once

#include <cstdint>
#include <vector>

#include "pbench/circuit.hpp"
#include "pbench/noise.hpp"
#include "pbench/pauli.hpp"

namespace pbench {

// Number of quarter turns (multiples of pi/2) an angle represents, reduced
// mod 4; throws EngineMismatchError when the angle is not within tol of a
// multiple of pi/2.
int quarter_turns(double angle, double tol = 1e-12);
bool is_clifford_angle(double angle, double tol = 1e-12);
bool is_clifford_circuit(const Circuit& circuit, double tol = 1e-12);

// Stabilizer state of n qubits, stored as n stabilizer and n destabilizer
// rows (letters plus a sign each). Starts as |0...0>, i.e. stabilizer i is
// +Z_i and destabilizer i is +X_i; conjugation preserves the symplectic
// pairing <stab_j, destab_i> = delta_ij that expectation() relies on.
class Tableau {
 public:
  explicit Tableau(std::uint32_t num_qubits);

  std::uint32_t num_qubits() const { return num_qubits_; }

  // Conjugates every row by exp(i*angle/2*P); rows commuting with P are
  // untouched, anticommuting rows pick up i*P (quarter turn), -i*P (reverse
  // quarter turn) or a sign flip (half turn).
  void apply_rotation(const PauliString& p, double angle);

  // <obs> for the current state, exactly one of {-1, 0, +1}: 0 when obs
  // anticommutes with some stabilizer, else the sign matching obs against
  // the product of stabilizers flagged by destabilizer anticommutation.
  int expectation(const PauliString& obs) const;

  const PauliString& stabilizer_letters(std::uint32_t i) const;
  int stabilizer_sign(std::uint32_t i) const;

 private:
  std::uint32_t num_qubits_;
  std::vector<PauliString> stab_;    // phase-free letters
  std::vector<PauliString> destab_;  // phase-free letters
  std::vector<int> stab_sign_;       // +1 or -1
  std::vector<int> destab_sign_;
};

// Noiseless <observable> for a circuit whose angles are all multiples of
// pi/2; the state is simulated on the compressed member register.
double clifford_expectation(const Circuit& circuit);

// Trajectory sampling in the Pauli frame: errors never change the letters of
// the back-evolved observable, so each trajectory is the ideal value times
// -1 per sampled error that anticommutes with the observable pulled back to
// that gate. Uses the same per-trajectory RNG protocol as the dense engine,
// so equal seeds give identical trajectory values on Clifford circuits.
NoisyEstimate clifford_noisy_expectation(const Circuit& circuit,
                                         const NoiseModel& noise,
                                         std::uint64_t trajectories,
                                         std::uint64_t seed);

}  // namespace pbench
