#pragma once

#include <string>

#include "pbench/circuit.hpp"

namespace pbench {

// Circuit JSON schema:
//   {
//     "qubits": [<member ids>...],
//     "anchor": <id>,
//     "observable": "<sign token + device-length letter string>",
//     "layers": [
//       { "tag": "single-qubit" | "two-qubit-color-1..3" | "alignment",
//         "gates": [ { "qubits": [q] | [q1, q2],
//                      "letters": "X" | "ZZ" | ...,
//                      "angle": <radians> } ] }
//     ]
//   }
// Doubles are emitted with shortest round-trip precision, so
// parse(dump(c)) == c holds bit-exactly.
std::string circuit_to_json(const Circuit& circuit, int indent = 2);
Circuit circuit_from_json(const std::string& text);

}  // namespace pbench
