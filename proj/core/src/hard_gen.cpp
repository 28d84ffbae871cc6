#include "pbench/hard_gen.hpp"

#include <algorithm>

#include "pbench/errors.hpp"

namespace pbench {

bool PauliSet::insert(const PauliString& p) {
  if (p.num_qubits() != num_qubits) {
    throw DimensionError("set insert: qubit count mismatch");
  }
  return members.insert(p.canonical_letters()).second;
}

bool PauliSet::contains(const PauliString& p) const {
  return members.find(p.canonical_letters()) != members.end();
}

std::size_t anticommute_count(const PauliString& p, const PauliSet& s) {
  if (p.num_qubits() != s.num_qubits) {
    throw DimensionError("anticommute_count: qubit count mismatch");
  }
  std::size_t count = 0;
  for (const PauliString& m : s.members) {
    if (anticommutes(p, m)) ++count;
  }
  return count;
}

namespace {

// S <- S union {P*s : s anticommutes with P}. Returns false when insertion
// pushed the set past the cap (the update stops there; S stays frozen
// afterwards, so a partial union is fine).
bool absorb_products(PauliSet& s, const PauliString& p, std::size_t cap) {
  std::vector<const PauliString*> anti;
  anti.reserve(s.members.size());
  for (const PauliString& m : s.members) {
    if (anticommutes(p, m)) anti.push_back(&m);
  }
  // Rehashing invalidates iterators but not element addresses.
  for (const PauliString* m : anti) {
    s.members.insert(multiply(p, *m).canonical_letters());
    if (s.members.size() > cap) return false;
  }
  return true;
}

struct Slot {
  Placeholder placeholder;
  std::size_t forward_index;  // placeholder index in skeleton order
  std::uint32_t step;         // 1-based ansatz step
};

}  // namespace

HardGenResult generate_hard_circuit(const AnsatzSkeleton& skeleton,
                                    const PauliString& obs,
                                    std::uint32_t brute_layers,
                                    std::size_t member_cap, Rng& rng) {
  if (member_cap < 1) {
    throw DomainError("member cap must be at least 1");
  }
  if (brute_layers > skeleton.num_steps) {
    throw DomainError("brute-forced layer count exceeds circuit depth");
  }
  if (obs.num_qubits() != skeleton.num_device_qubits) {
    throw DimensionError("observable size differs from device size");
  }
  if (!obs.is_hermitian()) {
    throw DomainError("hard-instance observable must be Hermitian");
  }
  for (std::uint32_t q : obs.support()) {
    if (!skeleton.qubits.contains(q)) {
      throw DomainError("hard-instance observable acts outside the subset");
    }
  }

  // Every step contributes the same layer shapes (the induced edges do not
  // change between steps), so the step of a layer is positional.
  const std::size_t layers_per_step =
      skeleton.num_steps == 0 ? 0 : skeleton.layers.size() / skeleton.num_steps;
  std::vector<Slot> order;
  order.reserve(skeleton.placeholder_count());
  {
    std::size_t forward = 0;
    for (std::size_t li = 0; li < skeleton.layers.size(); ++li) {
      for (const Placeholder& ph : skeleton.layers[li].slots) {
        order.push_back(
            {ph, forward++,
             static_cast<std::uint32_t>(li / layers_per_step) + 1});
      }
    }
    std::reverse(order.begin(), order.end());
  }

  const std::uint32_t n = skeleton.num_device_qubits;
  PauliSet s(n);
  s.insert(obs);

  std::vector<GateAssignment> assignments(skeleton.placeholder_count());
  std::vector<HardGenTelemetryRow> telemetry;
  telemetry.reserve(order.size());
  bool capped = false;
  std::optional<std::size_t> switch_gate_index;

  const std::uint32_t first_brute_step =
      skeleton.num_steps - brute_layers + 1;  // steps >= this are brute-forced

  for (std::size_t gi = 0; gi < order.size(); ++gi) {
    const Slot& slot = order[gi];
    const bool brute_planned =
        brute_layers > 0 && slot.step >= first_brute_step;
    const bool brute = brute_planned && !capped;
    if (brute_planned && capped && !switch_gate_index.has_value()) {
      switch_gate_index = gi;
    }

    GateAssignment a;
    a.angle = skeleton.global_angle;
    PauliString chosen;
    if (brute) {
      std::size_t best = 0;
      bool have = false;
      if (slot.placeholder.width == 1) {
        for (int l = 1; l <= 3; ++l) {
          PauliString cand = PauliString::single(
              n, slot.placeholder.qubits[0], static_cast<Letter>(l));
          const std::size_t count = anticommute_count(cand, s);
          if (!have || count > best) {
            have = true;
            best = count;
            a.l0 = static_cast<Letter>(l);
            chosen = std::move(cand);
          }
        }
      } else {
        for (int l0 = 1; l0 <= 3; ++l0) {
          for (int l1 = 1; l1 <= 3; ++l1) {
            PauliString cand(n);
            cand.set_letter(slot.placeholder.qubits[0],
                            static_cast<Letter>(l0));
            cand.set_letter(slot.placeholder.qubits[1],
                            static_cast<Letter>(l1));
            const std::size_t count = anticommute_count(cand, s);
            if (!have || count > best) {
              have = true;
              best = count;
              a.l0 = static_cast<Letter>(l0);
              a.l1 = static_cast<Letter>(l1);
              chosen = std::move(cand);
            }
          }
        }
      }
    } else {
      if (slot.placeholder.width == 1) {
        a.l0 = static_cast<Letter>(1 + uniform_index(rng, 3));
      } else {
        const std::uint64_t pick = uniform_index(rng, 9);
        a.l0 = static_cast<Letter>(1 + pick / 3);
        a.l1 = static_cast<Letter>(1 + pick % 3);
      }
      if (!capped) {
        chosen = PauliString(n);
        chosen.set_letter(slot.placeholder.qubits[0], a.l0);
        if (slot.placeholder.width == 2) {
          chosen.set_letter(slot.placeholder.qubits[1], a.l1);
        }
      }
    }

    if (!capped) {
      if (!absorb_products(s, chosen, member_cap)) capped = true;
    }
    assignments[slot.forward_index] = a;
    telemetry.push_back({gi, slot.step, s.size(), brute});
  }

  return HardGenResult{
      instantiate_skeleton(skeleton, assignments, obs), std::move(telemetry),
      capped, switch_gate_index};
}

}  // namespace pbench
