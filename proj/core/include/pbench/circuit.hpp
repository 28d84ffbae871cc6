#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pbench/layout.hpp"
#include "pbench/pauli.hpp"

namespace pbench {

// A Pauli rotation e^{+i angle/2 · P} with P a one- or two-letter string on
// the listed device qubits. Letters are never I.
struct RotationGate {
  std::uint8_t width = 1;
  std::array<std::uint32_t, 2> qubits{0, 0};
  std::array<Letter, 2> letters{Letter::I, Letter::I};
  double angle = 0.0;

  static RotationGate one(std::uint32_t q, Letter l, double angle);
  static RotationGate two(std::uint32_t q0, std::uint32_t q1, Letter l0,
                          Letter l1, double angle);

  // The gate's Pauli axis as a device-sized plain letter string.
  PauliString pauli(std::uint32_t num_qubits) const;

  bool operator==(const RotationGate& o) const;
};

enum class LayerTag : std::uint8_t {
  SingleQubit,
  TwoQubitColor1,
  TwoQubitColor2,
  TwoQubitColor3,
  Alignment,
};

const char* layer_tag_name(LayerTag tag);
LayerTag layer_tag_from_name(const std::string& name);
LayerTag color_layer_tag(std::uint8_t color);

struct Layer {
  LayerTag tag = LayerTag::SingleQubit;
  std::vector<RotationGate> gates;

  bool operator==(const Layer& o) const {
    return tag == o.tag && gates == o.gates;
  }
};

// A concrete rotation circuit over a connected subset of device qubits,
// together with the observable it is meant to estimate. Gates apply in
// layer order, front to back; within a layer in stored order (supports are
// disjoint there, so that order only matters for reproducibility).
class Circuit {
 public:
  Circuit(std::uint32_t num_device_qubits, QubitSubset qubits,
          std::vector<Layer> layers, PauliString observable);

  std::uint32_t num_device_qubits() const { return num_device_qubits_; }
  const QubitSubset& qubits() const { return qubits_; }
  const std::vector<Layer>& layers() const { return layers_; }
  const PauliString& observable() const { return observable_; }

  std::size_t num_gates() const;
  std::uint64_t num_two_qubit_gates() const;

  Circuit with_observable(PauliString obs) const;

  // Visits (gate, tag, application index) front to back / back to front.
  void for_each_gate(
      const std::function<void(const RotationGate&, LayerTag, std::size_t)>&
          fn) const;
  void for_each_gate_reverse(
      const std::function<void(const RotationGate&, LayerTag, std::size_t)>&
          fn) const;

  bool operator==(const Circuit& o) const;

 private:
  void validate() const;

  std::uint32_t num_device_qubits_;
  QubitSubset qubits_;
  std::vector<Layer> layers_;
  PauliString observable_;
};

// One unfilled rotation slot of an ansatz.
struct Placeholder {
  std::uint8_t width = 1;
  std::array<std::uint32_t, 2> qubits{0, 0};
};

struct SkeletonLayer {
  LayerTag tag = LayerTag::SingleQubit;
  std::vector<Placeholder> slots;
};

// The benchmarking ansatz shape: per step, a single-qubit slot on every
// member followed by the induced two-qubit slots of colors 1, 2, 3 (color
// layers with no induced edges are omitted). Letters are unassigned; the
// global angle is carried along for generators that fill the skeleton.
struct AnsatzSkeleton {
  std::uint32_t num_device_qubits = 0;
  QubitSubset qubits;
  std::uint32_t num_steps = 0;
  double global_angle = 0.0;
  std::vector<SkeletonLayer> layers;

  std::size_t placeholder_count() const;
};

AnsatzSkeleton build_ansatz(const DeviceLayout& layout, QubitSubset qubits,
                            std::uint32_t num_steps, double global_angle);

// Letters (and angle) for one placeholder, in skeleton slot order.
struct GateAssignment {
  Letter l0 = Letter::I;
  Letter l1 = Letter::I;
  double angle = 0.0;
};

// Fills every placeholder with its assignment; the observable defaults to
// Z on the anchor when none is given.
Circuit instantiate_skeleton(const AnsatzSkeleton& skeleton,
                             const std::vector<GateAssignment>& assignments,
                             std::optional<PauliString> observable = {});

// Trotterized transverse-field Ising evolution on the induced subgraph:
// per step, X rotations on all members then ZZ rotations over the color
// layers in order. theta_j and theta_h are the standard R-convention angles
// (R_P(θ) = e^{-iθP/2}); stored gate angles are negated to match the
// codebase convention (P, θ) = e^{+iθP/2}.
Circuit build_kicked_ising(const DeviceLayout& layout, QubitSubset qubits,
                           std::uint32_t num_steps, double theta_j,
                           double theta_h);

}  // namespace pbench
