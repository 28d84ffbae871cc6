#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "pbench/circuit.hpp"
#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"

namespace pbench {

// Phase-free set of Pauli strings; members are stored in canonical letter
// form (phase_exp 0), so X and -X are one element.
struct PauliSet {
  std::uint32_t num_qubits = 0;
  std::unordered_set<PauliString, PauliStringHash> members;

  explicit PauliSet(std::uint32_t n = 0) : num_qubits(n) {}

  std::size_t size() const { return members.size(); }
  bool insert(const PauliString& p);
  bool contains(const PauliString& p) const;
};

// |{s in S : p anticommutes with s}|.
std::size_t anticommute_count(const PauliString& p, const PauliSet& s);

struct HardGenTelemetryRow {
  std::size_t gate_index = 0;  // processing order (reverse application)
  std::uint32_t step = 0;      // ansatz step the gate belongs to, 1-based
  std::size_t set_size = 0;    // |S| after this gate's update
  bool brute = false;          // mode the letters were chosen in
};

struct HardGenResult {
  Circuit circuit;
  std::vector<HardGenTelemetryRow> telemetry;
  // True once |S| exceeded the member cap; from that point the set is frozen
  // and reported sizes stay at their last value.
  bool capped = false;
  // First gate filled randomly because the cap cut brute-forcing short
  // (unset when brute-forcing ran to its planned boundary).
  std::optional<std::size_t> switch_gate_index;
};

// Fills the skeleton in reverse application order. The last `brute_layers`
// ansatz steps are brute-forced: every placeholder takes the candidate
// maximizing anticommute_count against the running set S (9 candidates on an
// edge, 3 on a vertex, enumerated lexicographically with first-max
// tie-break), after which S absorbs the products P*s over anticommuting
// members. Earlier steps draw letters uniformly: uniform_index(9) per edge
// decoded as (index/3, index%3), uniform_index(3) per vertex. S keeps being
// tracked through the random region for telemetry until the cap freezes it;
// the drawn letters never depend on that tracking. All gates carry the
// skeleton's global angle.
HardGenResult generate_hard_circuit(const AnsatzSkeleton& skeleton,
                                    const PauliString& obs,
                                    std::uint32_t brute_layers,
                                    std::size_t member_cap, Rng& rng);

}  // namespace pbench
