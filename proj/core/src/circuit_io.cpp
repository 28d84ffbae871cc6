#include "pbench/circuit_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbench/errors.hpp"

namespace pbench {

namespace {

using nlohmann::json;

json gate_to_json(const RotationGate& gate) {
  json j;
  std::vector<std::uint32_t> qubits;
  std::string letters;
  for (int i = 0; i < gate.width; ++i) {
    qubits.push_back(gate.qubits[i]);
    letters.push_back(letter_char(gate.letters[i]));
  }
  j["qubits"] = qubits;
  j["letters"] = letters;
  j["angle"] = gate.angle;
  return j;
}

RotationGate gate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("qubits") || !j.contains("letters") ||
      !j.contains("angle")) {
    throw ValidationError("gate entry needs qubits, letters, angle");
  }
  const json& jq = j.at("qubits");
  const std::string letters = j.at("letters").get<std::string>();
  if (!jq.is_array() || jq.empty() || jq.size() > 2 ||
      jq.size() != letters.size()) {
    throw ValidationError("gate qubits/letters must agree and have width 1 or 2");
  }
  if (!j.at("angle").is_number()) {
    throw ValidationError("gate angle must be a number");
  }
  const double angle = j.at("angle").get<double>();
  if (jq.size() == 1) {
    return RotationGate::one(jq.at(0).get<std::uint32_t>(),
                             letter_from_char(letters[0]), angle);
  }
  return RotationGate::two(jq.at(0).get<std::uint32_t>(),
                           jq.at(1).get<std::uint32_t>(),
                           letter_from_char(letters[0]),
                           letter_from_char(letters[1]), angle);
}

}  // namespace

std::string circuit_to_json(const Circuit& circuit, int indent) {
  json j;
  j["qubits"] = circuit.qubits().members;
  j["anchor"] = circuit.qubits().anchor;
  j["observable"] = circuit.observable().str();
  json layers = json::array();
  for (const Layer& layer : circuit.layers()) {
    json jl;
    jl["tag"] = layer_tag_name(layer.tag);
    json gates = json::array();
    for (const RotationGate& gate : layer.gates) {
      gates.push_back(gate_to_json(gate));
    }
    jl["gates"] = std::move(gates);
    layers.push_back(std::move(jl));
  }
  j["layers"] = std::move(layers);
  return j.dump(indent);
}

Circuit circuit_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("circuit JSON parse failed: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("qubits") || !j.contains("anchor") ||
        !j.contains("observable") || !j.contains("layers")) {
      throw ValidationError(
          "circuit JSON needs qubits, anchor, observable, layers");
    }
    QubitSubset subset;
    subset.members = j.at("qubits").get<std::vector<std::uint32_t>>();
    subset.anchor = j.at("anchor").get<std::uint32_t>();
    // The device size is carried by the observable, which always spans the
    // full device register.
    PauliString observable = PauliString::parse(
        j.at("observable").get<std::string>());
    std::vector<Layer> layers;
    for (const json& jl : j.at("layers")) {
      if (!jl.is_object() || !jl.contains("tag") || !jl.contains("gates")) {
        throw ValidationError("layer entry needs tag and gates");
      }
      Layer layer;
      layer.tag = layer_tag_from_name(jl.at("tag").get<std::string>());
      for (const json& jg : jl.at("gates")) {
        layer.gates.push_back(gate_from_json(jg));
      }
      layers.push_back(std::move(layer));
    }
    return Circuit(observable.num_qubits(), std::move(subset),
                   std::move(layers), std::move(observable));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("circuit JSON malformed: ") + e.what());
  }
}

}  // namespace pbench
