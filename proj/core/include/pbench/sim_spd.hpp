#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pbench/circuit.hpp"
#include "pbench/pauli.hpp"

namespace pbench {

// Sparse Heisenberg-picture engine: the observable is conjugated through the
// circuit gate by gate as a Pauli sum, with coefficients below a threshold
// discarded after every gate. threshold 0 keeps the evolution exact.
inline constexpr std::size_t kDefaultTermCap = std::size_t{1} << 20;

// U^dag obs U as a Pauli sum, processing gates in reverse application order
// (each gate contributes e^{-i angle/2 P} . e^{+i angle/2 P}).
PauliSum heisenberg_evolve(const Circuit& circuit, const PauliString& obs,
                           double threshold);

// <0...0| U^dag obs U |0...0>: a term contributes its coefficient iff its
// letters are all I or Z (x bits zero).
double expectation_spd(const Circuit& circuit, const PauliString& obs,
                       double threshold);

struct GrowthPoint {
  std::size_t gate_index = 0;  // gates processed so far, reverse order
  LayerTag tag = LayerTag::SingleQubit;
  std::size_t num_terms = 0;
  bool capped = false;  // set on the row where the cap was exceeded
};

struct GrowthProfile {
  std::vector<GrowthPoint> points;
  bool capped = false;
};

// Term counts after each processed gate; stops after the first gate that
// pushes the sum past term_cap (a reported status, not an error).
GrowthProfile term_growth_profile(const Circuit& circuit,
                                  const PauliString& obs, double threshold,
                                  std::size_t term_cap = kDefaultTermCap);

}  // namespace pbench
