#include <cmath>
#include <vector>

#include <doctest.h>

#include "pbench/bench_gen.hpp"
#include "pbench/circuit.hpp"
#include "pbench/circuit_io.hpp"
#include "pbench/errors.hpp"
#include "pbench/layout.hpp"
#include "pbench/rng.hpp"
#include "pbench/sim_clifford.hpp"
#include "pbench/sim_dense.hpp"
#include "support/oracles.hpp"

using namespace pbench;

namespace {
constexpr double kPi = 3.14159265358979323846;

const std::vector<EigenState> kAllStates = {
    {Letter::X, +1}, {Letter::X, -1}, {Letter::Y, +1},
    {Letter::Y, -1}, {Letter::Z, +1}, {Letter::Z, -1},
};
}  // namespace

TEST_CASE("eigenstate propagation: pinned transitions") {
  // Commuting letter leaves the state alone.
  CHECK((propagate_eigenstate({Letter::Z, +1}, Letter::Z, kPi / 2) ==
         EigenState{Letter::Z, +1}));
  // e^{i pi X/4}|0> = |+i>.
  CHECK((propagate_eigenstate({Letter::Z, +1}, Letter::X, kPi / 2) ==
         EigenState{Letter::Y, +1}));
  CHECK((propagate_eigenstate({Letter::Z, +1}, Letter::X, -kPi / 2) ==
         EigenState{Letter::Y, -1}));
  // Half turn about an anticommuting axis flips the sign.
  CHECK((propagate_eigenstate({Letter::Z, +1}, Letter::X, kPi) ==
         EigenState{Letter::Z, -1}));
  // Full turns are the identity on eigen-data.
  CHECK((propagate_eigenstate({Letter::Y, -1}, Letter::X, 0.0) ==
         EigenState{Letter::Y, -1}));
  CHECK((propagate_eigenstate({Letter::Y, -1}, Letter::X, 2 * kPi) ==
         EigenState{Letter::Y, -1}));

  CHECK_THROWS_AS(propagate_eigenstate({Letter::Z, +1}, Letter::X, kPi / 4),
                  DomainError);
  CHECK_THROWS_AS(propagate_eigenstate({Letter::Z, +1}, Letter::I, kPi / 2),
                  DomainError);
}

TEST_CASE("eigenstate propagation matches the dense single-qubit oracle") {
  for (const EigenState& from : kAllStates) {
    for (Letter letter : {Letter::X, Letter::Y, Letter::Z}) {
      for (double angle : {kPi / 2, -kPi / 2, kPi, 0.0, 2 * kPi, -kPi}) {
        const EigenState to = propagate_eigenstate(from, letter, angle);
        const Eigen::MatrixXcd r = oracles::rotation_matrix(
            PauliString::single(1, 0, letter), angle);
        const Eigen::VectorXcd moved =
            r * oracles::eigenstate_vector(from);
        CHECK(oracles::same_up_to_phase(moved,
                                        oracles::eigenstate_vector(to)));
      }
    }
  }
}

TEST_CASE("alignment rotation: all 36 pairs verified densely") {
  for (const EigenState& from : kAllStates) {
    for (const EigenState& to : kAllStates) {
      const auto gate = alignment_rotation(from, to);
      if (from == to) {
        CHECK(!gate.has_value());
        continue;
      }
      REQUIRE(gate.has_value());
      const auto [letter, angle] = *gate;
      // Angle from the allowed alignment set.
      const bool allowed = angle == kPi || angle == kPi / 2 ||
                           angle == -kPi / 2;
      CHECK(allowed);
      // The returned rotation really maps from to to (dense check).
      const Eigen::MatrixXcd r = oracles::rotation_matrix(
          PauliString::single(1, 0, letter), angle);
      CHECK(oracles::same_up_to_phase(r * oracles::eigenstate_vector(from),
                                      oracles::eigenstate_vector(to)));
      // Propagation agrees.
      CHECK(propagate_eigenstate(from, letter, angle) == to);
    }
  }
  // Pinned choice: sign flip about the lexicographically smaller
  // anticommuting letter.
  const auto flip = alignment_rotation({Letter::Z, +1}, {Letter::Z, -1});
  REQUIRE(flip.has_value());
  CHECK(flip->first == Letter::X);
  CHECK(flip->second == kPi);
  const auto xflip = alignment_rotation({Letter::X, +1}, {Letter::X, -1});
  REQUIRE(xflip.has_value());
  CHECK(xflip->first == Letter::Y);
}

TEST_CASE("generated benchmark circuits satisfy <obs> = 1 exactly") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  Rng rng = make_rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t n = 2 + uniform_index(rng, 20);
    const std::uint32_t l = 1 + uniform_index(rng, 6);
    const std::uint32_t anchor = uniform_index(rng, layout.num_qubits());
    const QubitSubset subset = sample_connected_subset(layout, n, anchor, rng);
    const PauliString obs =
        PauliString::single(layout.num_qubits(), anchor, Letter::Z);
    const AnsatzSkeleton sk = build_ansatz(layout, subset, l, kPi / 2);
    const Circuit circuit = generate_benchmark_circuit(sk, obs, rng);
    CHECK(clifford_expectation(circuit) == 1.0);
    CHECK(is_clifford_circuit(circuit));
  }
}

TEST_CASE("benchmark guarantee holds for multi-site observables") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  Rng rng = make_rng(405);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t anchor = uniform_index(rng, layout.num_qubits());
    const QubitSubset subset = sample_connected_subset(layout, 8, anchor, rng);
    PauliString obs(layout.num_qubits());
    for (std::uint32_t q : subset.members) {
      obs.set_letter(q, oracles::random_letter(rng, true));
    }
    obs.set_letter(subset.anchor, Letter::Z);  // ensure non-identity
    const AnsatzSkeleton sk = build_ansatz(layout, subset, 3, kPi / 2);
    const Circuit circuit = generate_benchmark_circuit(sk, obs, rng);
    CHECK(clifford_expectation(circuit) == 1.0);
  }
}

TEST_CASE("benchmark circuit on 2 qubits verified densely") {
  const DeviceLayout pair = DeviceLayout::load_text("qubits 2\n0 1 1\n");
  Rng rng = make_rng(0);
  const AnsatzSkeleton sk =
      build_ansatz(pair, oracles::all_qubits(pair), 1, kPi / 2);
  const Circuit circuit =
      generate_benchmark_circuit(sk, PauliString::parse("ZI"), rng);
  CHECK(dense_expectation(circuit) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pre-alignment frontier matches the dense product state") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  Rng rng = make_rng(777);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t n = 2 + uniform_index(rng, 7);  // up to 8 qubits
    const std::uint32_t l = 1 + uniform_index(rng, 4);
    const std::uint32_t anchor = uniform_index(rng, layout.num_qubits());
    const QubitSubset subset = sample_connected_subset(layout, n, anchor, rng);
    const PauliString obs =
        PauliString::single(layout.num_qubits(), anchor, Letter::Z);
    const AnsatzSkeleton sk = build_ansatz(layout, subset, l, kPi / 2);

    std::vector<EigenState> frontier;
    const Circuit circuit = generate_benchmark_circuit(sk, obs, rng, &frontier);
    REQUIRE(frontier.size() == subset.size());

    // Rebuild the circuit minus its alignment layer and simulate densely.
    std::vector<Layer> body(circuit.layers().begin(),
                            circuit.layers().end() - 1);
    CHECK(circuit.layers().back().tag == LayerTag::Alignment);
    const Circuit pre(circuit.num_device_qubits(), circuit.qubits(),
                      std::move(body), circuit.observable());
    const auto amps = dense_final_state(pre);
    Eigen::VectorXcd dense_vec(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
      dense_vec(static_cast<Eigen::Index>(i)) = amps[i];
    }

    Eigen::VectorXcd product = Eigen::VectorXcd::Ones(1);
    for (std::size_t q = frontier.size(); q-- > 0;) {
      product = oracles::kron(product.eval(),
                              oracles::eigenstate_vector(frontier[q]).eval());
    }
    CHECK(oracles::same_up_to_phase(dense_vec, product, 1e-10));
  }
}

TEST_CASE("benchmark generation is deterministic per seed") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  const auto generate = [&](std::uint64_t seed) {
    Rng rng = make_rng(seed);
    const QubitSubset subset = sample_connected_subset(layout, 9, 30, rng);
    const PauliString obs = PauliString::single(layout.num_qubits(), 30,
                                                Letter::Z);
    const AnsatzSkeleton sk = build_ansatz(layout, subset, 4, kPi / 2);
    return circuit_to_json(generate_benchmark_circuit(sk, obs, rng));
  };
  CHECK(generate(11) == generate(11));
  CHECK(generate(11) != generate(12));
}

TEST_CASE("benchmark generator rejects bad inputs") {
  const DeviceLayout pair = DeviceLayout::load_text("qubits 2\n0 1 1\n");
  Rng rng = make_rng(1);

  // Wrong global angle.
  const AnsatzSkeleton bad_angle =
      build_ansatz(pair, oracles::all_qubits(pair), 1, kPi / 4);
  CHECK_THROWS_AS(
      generate_benchmark_circuit(bad_angle, PauliString::parse("ZI"), rng),
      DomainError);

  const AnsatzSkeleton sk =
      build_ansatz(pair, oracles::all_qubits(pair), 1, kPi / 2);
  // Non-Hermitian observable.
  CHECK_THROWS_AS(
      generate_benchmark_circuit(sk, PauliString::parse("iZI"), rng),
      DomainError);
  // Negative-sign observable cannot reach <obs> = +1.
  CHECK_THROWS_AS(
      generate_benchmark_circuit(sk, PauliString::parse("-ZI"), rng),
      DomainError);
  // Support outside the subset.
  const DeviceLayout chain = oracles::path_layout(3);
  const AnsatzSkeleton partial =
      build_ansatz(chain, QubitSubset{{0, 1}, 0}, 1, kPi / 2);
  CHECK_THROWS_AS(
      generate_benchmark_circuit(partial, PauliString::parse("IIZ"), rng),
      DomainError);
}

TEST_CASE("zero-step skeleton: alignment alone, expectation 1") {
  const DeviceLayout pair = DeviceLayout::load_text("qubits 2\n0 1 1\n");
  AnsatzSkeleton sk;
  sk.num_device_qubits = 2;
  sk.qubits = oracles::all_qubits(pair);
  sk.num_steps = 0;
  sk.global_angle = kPi / 2;
  Rng rng = make_rng(0);
  const Circuit circuit =
      generate_benchmark_circuit(sk, PauliString::parse("ZI"), rng);
  REQUIRE(circuit.layers().size() == 1);
  CHECK(circuit.layers()[0].tag == LayerTag::Alignment);
  // |0> is already the +1 eigenstate of Z: nothing to align.
  CHECK(circuit.layers()[0].gates.empty());
  CHECK(clifford_expectation(circuit) == 1.0);
}
