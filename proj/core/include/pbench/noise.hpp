#pragma once

#include <array>
#include <cstdint>

#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"

namespace pbench {

// Depolarizing noise attached to gates. After each gate the register is hit,
// with the given probability, by a uniformly random non-identity Pauli on the
// gate's support (15 choices for width 2, 3 for width 1).
struct NoiseModel {
  double two_qubit_eps = 0.0;
  double single_qubit_eps = 0.0;

  bool enabled() const { return two_qubit_eps > 0.0 || single_qubit_eps > 0.0; }
  void validate() const;
};

struct SampledError {
  bool hit = false;
  std::array<Letter, 2> letters{Letter::I, Letter::I};
};

// Monte Carlo estimate over error trajectories, shared by all engines.
struct NoisyEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trajectories = 0;
};

// Enumeration order of the 15 two-qubit errors: (l1, l2) row-major over
// {I, X, Y, Z} x {I, X, Y, Z} with II skipped, so index 0 -> (I, X),
// index 3 -> (X, I), index 14 -> (Z, Z).
std::array<Letter, 2> two_qubit_error_letters(std::uint64_t index);

// Draw protocol, shared verbatim by every engine so that equal seeds give
// equal error histories: after a two-qubit gate one uniform_real is always
// consumed, plus one uniform_index(15) on a hit; after a single-qubit gate
// nothing is consumed unless single_qubit_eps > 0, then likewise
// uniform_real plus uniform_index(3) on a hit.
SampledError sample_two_qubit_error(const NoiseModel& noise, Rng& rng);
SampledError sample_single_qubit_error(const NoiseModel& noise, Rng& rng);

}  // namespace pbench
