#include "pbench/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace pbench {

RotationGate RotationGate::one(std::uint32_t q, Letter l, double angle) {
  if (l == Letter::I) {
    throw DomainError("RotationGate: identity letter is not a gate axis");
  }
  RotationGate g;
  g.width = 1;
  g.qubits = {q, 0};
  g.letters = {l, Letter::I};
  g.angle = angle;
  return g;
}

RotationGate RotationGate::two(std::uint32_t q0, std::uint32_t q1, Letter l0,
                               Letter l1, double angle) {
  if (l0 == Letter::I || l1 == Letter::I) {
    throw DomainError("RotationGate: two-qubit axis letters must be non-I");
  }
  if (q0 == q1) {
    throw DomainError("RotationGate: two-qubit gate needs distinct qubits");
  }
  RotationGate g;
  g.width = 2;
  g.qubits = {q0, q1};
  g.letters = {l0, l1};
  g.angle = angle;
  return g;
}

PauliString RotationGate::pauli(std::uint32_t num_qubits) const {
  PauliString p(num_qubits);
  p.set_letter(qubits[0], letters[0]);
  if (width == 2) p.set_letter(qubits[1], letters[1]);
  return p;
}

bool RotationGate::operator==(const RotationGate& o) const {
  return width == o.width && qubits == o.qubits && letters == o.letters &&
         angle == o.angle;
}

const char* layer_tag_name(LayerTag tag) {
  switch (tag) {
    case LayerTag::SingleQubit: return "single-qubit";
    case LayerTag::TwoQubitColor1: return "two-qubit-color-1";
    case LayerTag::TwoQubitColor2: return "two-qubit-color-2";
    case LayerTag::TwoQubitColor3: return "two-qubit-color-3";
    case LayerTag::Alignment: return "alignment";
  }
  throw DomainError("layer_tag_name: invalid tag");
}

LayerTag layer_tag_from_name(const std::string& name) {
  if (name == "single-qubit") return LayerTag::SingleQubit;
  if (name == "two-qubit-color-1") return LayerTag::TwoQubitColor1;
  if (name == "two-qubit-color-2") return LayerTag::TwoQubitColor2;
  if (name == "two-qubit-color-3") return LayerTag::TwoQubitColor3;
  if (name == "alignment") return LayerTag::Alignment;
  throw ValidationError("circuit: unknown layer tag \"" + name + "\"");
}

LayerTag color_layer_tag(std::uint8_t color) {
  switch (color) {
    case 1: return LayerTag::TwoQubitColor1;
    case 2: return LayerTag::TwoQubitColor2;
    case 3: return LayerTag::TwoQubitColor3;
  }
  throw DomainError("color_layer_tag: color must be 1, 2 or 3");
}

Circuit::Circuit(std::uint32_t num_device_qubits, QubitSubset qubits,
                 std::vector<Layer> layers, PauliString observable)
    : num_device_qubits_(num_device_qubits),
      qubits_(std::move(qubits)),
      layers_(std::move(layers)),
      observable_(std::move(observable)) {
  validate();
}

void Circuit::validate() const {
  if (qubits_.members.empty()) {
    throw ValidationError("circuit: qubit subset is empty");
  }
  for (std::size_t i = 0; i < qubits_.members.size(); ++i) {
    if (qubits_.members[i] >= num_device_qubits_) {
      throw ValidationError("circuit: member qubit out of device range");
    }
    if (i > 0 && qubits_.members[i] <= qubits_.members[i - 1]) {
      throw ValidationError("circuit: members must be sorted and unique");
    }
  }
  if (!qubits_.contains(qubits_.anchor)) {
    throw ValidationError("circuit: anchor is not a member");
  }
  if (observable_.num_qubits() != num_device_qubits_) {
    throw ValidationError(
        "circuit: observable size differs from device size");
  }
  if (!observable_.is_hermitian()) {
    throw ValidationError("circuit: observable must be Hermitian");
  }
  for (const Layer& layer : layers_) {
    layer_tag_name(layer.tag);  // throws on invalid enum values
    std::vector<std::uint32_t> touched;
    for (const RotationGate& g : layer.gates) {
      if (g.width != 1 && g.width != 2) {
        throw ValidationError("circuit: gate width must be 1 or 2");
      }
      if (!std::isfinite(g.angle)) {
        throw ValidationError("circuit: gate angle must be finite");
      }
      for (std::uint8_t k = 0; k < g.width; ++k) {
        if (g.letters[k] == Letter::I) {
          throw ValidationError("circuit: gate letters must be non-I");
        }
        if (!qubits_.contains(g.qubits[k])) {
          throw ValidationError("circuit: gate acts outside the subset");
        }
        touched.push_back(g.qubits[k]);
      }
      if (g.width == 2 && g.qubits[0] == g.qubits[1]) {
        throw ValidationError("circuit: two-qubit gate repeats a qubit");
      }
    }
    std::sort(touched.begin(), touched.end());
    if (std::adjacent_find(touched.begin(), touched.end()) != touched.end()) {
      throw ValidationError(
          "circuit: gate supports overlap within one layer");
    }
  }
}

std::size_t Circuit::num_gates() const {
  std::size_t n = 0;
  for (const Layer& layer : layers_) n += layer.gates.size();
  return n;
}

std::uint64_t Circuit::num_two_qubit_gates() const {
  std::uint64_t n = 0;
  for (const Layer& layer : layers_) {
    for (const RotationGate& g : layer.gates) {
      if (g.width == 2) ++n;
    }
  }
  return n;
}

Circuit Circuit::with_observable(PauliString obs) const {
  return Circuit(num_device_qubits_, qubits_, layers_, std::move(obs));
}

void Circuit::for_each_gate(
    const std::function<void(const RotationGate&, LayerTag, std::size_t)>& fn)
    const {
  std::size_t idx = 0;
  for (const Layer& layer : layers_) {
    for (const RotationGate& g : layer.gates) fn(g, layer.tag, idx++);
  }
}

void Circuit::for_each_gate_reverse(
    const std::function<void(const RotationGate&, LayerTag, std::size_t)>& fn)
    const {
  std::size_t idx = num_gates();
  for (auto lit = layers_.rbegin(); lit != layers_.rend(); ++lit) {
    for (auto git = lit->gates.rbegin(); git != lit->gates.rend(); ++git) {
      fn(*git, lit->tag, --idx);
    }
  }
}

bool Circuit::operator==(const Circuit& o) const {
  return num_device_qubits_ == o.num_device_qubits_ &&
         qubits_.members == o.qubits_.members &&
         qubits_.anchor == o.qubits_.anchor && layers_ == o.layers_ &&
         observable_ == o.observable_;
}

std::size_t AnsatzSkeleton::placeholder_count() const {
  std::size_t n = 0;
  for (const SkeletonLayer& layer : layers) n += layer.slots.size();
  return n;
}

AnsatzSkeleton build_ansatz(const DeviceLayout& layout, QubitSubset qubits,
                            std::uint32_t num_steps, double global_angle) {
  if (qubits.members.empty()) {
    throw DomainError("build_ansatz: qubit subset is empty");
  }
  if (num_steps < 1) {
    throw DomainError("build_ansatz: num_steps must be >= 1");
  }
  for (std::uint32_t q : qubits.members) {
    if (q >= layout.num_qubits()) {
      throw DomainError("build_ansatz: member qubit outside the layout");
    }
  }
  AnsatzSkeleton sk;
  sk.num_device_qubits = layout.num_qubits();
  sk.qubits = std::move(qubits);
  sk.num_steps = num_steps;
  sk.global_angle = global_angle;

  for (std::uint32_t step = 0; step < num_steps; ++step) {
    SkeletonLayer singles{LayerTag::SingleQubit, {}};
    for (std::uint32_t q : sk.qubits.members) {
      singles.slots.push_back(Placeholder{1, {q, 0}});
    }
    sk.layers.push_back(std::move(singles));

    for (std::uint8_t color = 1; color <= 3; ++color) {
      const auto edges = layout.edges_within(sk.qubits.members, color);
      if (edges.empty()) continue;
      SkeletonLayer twos{color_layer_tag(color), {}};
      for (const Edge& e : edges) {
        twos.slots.push_back(Placeholder{2, {e.a, e.b}});
      }
      sk.layers.push_back(std::move(twos));
    }
  }
  return sk;
}

Circuit instantiate_skeleton(const AnsatzSkeleton& skeleton,
                             const std::vector<GateAssignment>& assignments,
                             std::optional<PauliString> observable) {
  if (assignments.size() != skeleton.placeholder_count()) {
    throw DomainError(
        "instantiate_skeleton: assignment count differs from placeholders");
  }
  std::vector<Layer> layers;
  layers.reserve(skeleton.layers.size());
  std::size_t idx = 0;
  for (const SkeletonLayer& sl : skeleton.layers) {
    Layer layer{sl.tag, {}};
    layer.gates.reserve(sl.slots.size());
    for (const Placeholder& slot : sl.slots) {
      const GateAssignment& a = assignments[idx++];
      if (slot.width == 1) {
        layer.gates.push_back(
            RotationGate::one(slot.qubits[0], a.l0, a.angle));
      } else {
        layer.gates.push_back(RotationGate::two(slot.qubits[0],
                                                slot.qubits[1], a.l0, a.l1,
                                                a.angle));
      }
    }
    layers.push_back(std::move(layer));
  }
  PauliString obs =
      observable.has_value()
          ? std::move(*observable)
          : PauliString::single(skeleton.num_device_qubits,
                                skeleton.qubits.anchor, Letter::Z);
  return Circuit(skeleton.num_device_qubits, skeleton.qubits,
                 std::move(layers), std::move(obs));
}

Circuit build_kicked_ising(const DeviceLayout& layout, QubitSubset qubits,
                           std::uint32_t num_steps, double theta_j,
                           double theta_h) {
  AnsatzSkeleton sk =
      build_ansatz(layout, std::move(qubits), num_steps, 0.0);
  std::vector<GateAssignment> assignments;
  assignments.reserve(sk.placeholder_count());
  for (const SkeletonLayer& sl : sk.layers) {
    for (const Placeholder& slot : sl.slots) {
      if (slot.width == 1) {
        assignments.push_back({Letter::X, Letter::I, -theta_h});
      } else {
        assignments.push_back({Letter::Z, Letter::Z, -theta_j});
      }
    }
  }
  return instantiate_skeleton(sk, assignments);
}

}  // namespace pbench
