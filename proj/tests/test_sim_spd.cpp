#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "pbench/bench_gen.hpp"
#include "pbench/circuit.hpp"
#include "pbench/errors.hpp"
#include "pbench/layout.hpp"
#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"
#include "pbench/sim_dense.hpp"
#include "pbench/sim_spd.hpp"
#include "support/oracles.hpp"

using namespace pbench;

namespace {
constexpr double kPi = 3.14159265358979323846;

Circuit single_gate_circuit(std::uint32_t n, const RotationGate& gate,
                            const PauliString& obs) {
  Layer layer{gate.width == 1 ? LayerTag::SingleQubit
                              : LayerTag::TwoQubitColor1,
              {gate}};
  std::vector<std::uint32_t> members(n);
  for (std::uint32_t q = 0; q < n; ++q) members[q] = q;
  return Circuit(n, QubitSubset{members, 0}, {layer}, obs);
}
}  // namespace

TEST_CASE("conjugating Z through one X rotation splits into two terms") {
  const double theta = 0.37;
  const Circuit circuit = single_gate_circuit(
      1, RotationGate::one(0, Letter::X, theta), PauliString::parse("Z"));
  const PauliSum sum =
      heisenberg_evolve(circuit, PauliString::parse("Z"), 0.0);
  CHECK(sum.size() == 2);
  CHECK(sum.coefficient(PauliString::parse("Z")) ==
        doctest::Approx(std::cos(theta)).epsilon(1e-14));
  CHECK(sum.coefficient(PauliString::parse("Y")) ==
        doctest::Approx(-std::sin(theta)).epsilon(1e-14));
  CHECK(expectation_spd(circuit, PauliString::parse("Z"), 0.0) ==
        doctest::Approx(std::cos(theta)).epsilon(1e-14));
}

TEST_CASE("commuting rotations leave the observable untouched") {
  const Circuit circuit = single_gate_circuit(
      2, RotationGate::two(0, 1, Letter::Z, Letter::Z, 0.9),
      PauliString::parse("ZZ"));
  const PauliSum sum =
      heisenberg_evolve(circuit, PauliString::parse("ZI"), 0.0);
  CHECK(sum.size() == 1);
  CHECK(sum.coefficient(PauliString::parse("ZI")) == 1.0);
  CHECK(expectation_spd(circuit, PauliString::parse("ZI"), 0.0) == 1.0);
}

TEST_CASE("only x-free terms contribute to the vacuum expectation") {
  // After a quarter turn the observable is a single X-type term whose
  // vacuum expectation vanishes exactly.
  const Circuit circuit = single_gate_circuit(
      1, RotationGate::one(0, Letter::Y, kPi / 2), PauliString::parse("Z"));
  CHECK(expectation_spd(circuit, PauliString::parse("Z"), 0.0) == 0.0);
}

TEST_CASE("exact sparse evolution matches the dense engine") {
  const std::vector<double> angles = {0.37, -1.1, kPi / 2, kPi, 0.05};
  Rng rng = make_rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t n = 2 + uniform_index(rng, 5);  // 2..6 qubits
    const DeviceLayout layout = oracles::path_layout(n);
    const std::uint32_t steps = 1 + uniform_index(rng, 2);
    Circuit circuit = oracles::random_circuit(
        layout, oracles::all_qubits(layout), steps, angles, rng);
    PauliString obs(n);
    while (obs.weight() == 0) {
      obs = oracles::random_pauli(n, rng, true);
      obs.set_phase_exp(0);
    }
    circuit = circuit.with_observable(obs);
    const double sparse = expectation_spd(circuit, obs, 0.0);
    const double dense = dense_expectation(circuit);
    CHECK(std::abs(sparse - dense) < 1e-8);
  }
}

TEST_CASE("benchmark circuits evaluate to one under sparse evolution") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  Rng rng = make_rng(14);
  const QubitSubset subset = sample_connected_subset(layout, 9, 70, rng);
  const AnsatzSkeleton sk = build_ansatz(layout, subset, 3, kPi / 2);
  const PauliString obs =
      PauliString::single(layout.num_qubits(), subset.anchor, Letter::Z);
  const Circuit circuit = generate_benchmark_circuit(sk, obs, rng);
  CHECK(expectation_spd(circuit, obs, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("truncation never inflates the weight: sum of squares stays <= 1") {
  const std::vector<double> angles = {0.37, -1.1, 0.6};
  Rng rng = make_rng(56);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint32_t n = 2 + uniform_index(rng, 4);
    const DeviceLayout layout = oracles::path_layout(n);
    Circuit circuit = oracles::random_circuit(
        layout, oracles::all_qubits(layout), 2, angles, rng);
    const PauliString obs = PauliString::single(n, 0, Letter::Z);
    const PauliSum exact = heisenberg_evolve(circuit, obs, 0.0);
    CHECK(exact.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
    const PauliSum cut = heisenberg_evolve(circuit, obs, 0.05);
    CHECK(cut.squared_norm() <= 1.0 + 1e-12);
    CHECK(cut.size() <= exact.size());
  }
}

TEST_CASE("eighth-turn branching keeps coefficients at the product floor") {
  // One pi/4 rotation per qubit splits each branch by a factor of
  // cos(pi/4) = sin(pi/4) = 2^{-1/2}; with every gate on its own qubit no
  // recombination happens, so the 2^k coefficients all sit at 2^{-k/2}.
  const std::uint32_t k = 6;
  std::vector<std::uint32_t> members(k);
  for (std::uint32_t q = 0; q < k; ++q) members[q] = q;
  Layer layer{LayerTag::SingleQubit, {}};
  for (std::uint32_t q = 0; q < k; ++q) {
    layer.gates.push_back(RotationGate::one(q, Letter::X, kPi / 4));
  }
  PauliString obs(k);
  for (std::uint32_t q = 0; q < k; ++q) obs.set_letter(q, Letter::Z);
  const Circuit circuit(k, QubitSubset{members, 0}, {layer}, obs);

  const PauliSum sum = heisenberg_evolve(circuit, obs, 0.0);
  CHECK(sum.size() == (std::size_t{1} << k));
  CHECK(sum.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
  const double floor = std::pow(2.0, -static_cast<double>(k) / 2.0);
  for (const auto& [term, coeff] : sum) {
    CHECK(std::abs(coeff) == doctest::Approx(floor).epsilon(1e-12));
  }
}

TEST_CASE("a positive threshold prunes sub-threshold branches") {
  const double theta = 0.3;  // sin(0.3) ~ 0.295 < 0.5
  const Circuit circuit = single_gate_circuit(
      1, RotationGate::one(0, Letter::X, theta), PauliString::parse("Z"));
  const PauliSum sum =
      heisenberg_evolve(circuit, PauliString::parse("Z"), 0.5);
  CHECK(sum.size() == 1);
  CHECK(sum.coefficient(PauliString::parse("Z")) ==
        doctest::Approx(std::cos(theta)).epsilon(1e-14));
}

TEST_CASE("growth profile: commuting circuits stay at one term") {
  std::vector<Layer> layers;
  for (int g = 0; g < 5; ++g) {
    layers.push_back(
        Layer{LayerTag::SingleQubit, {RotationGate::one(0, Letter::Z, 0.7)}});
  }
  const Circuit circuit(2, QubitSubset{{0, 1}, 0}, std::move(layers),
                        PauliString::parse("ZI"));
  const GrowthProfile profile =
      term_growth_profile(circuit, PauliString::parse("ZI"), 0.0);
  CHECK(!profile.capped);
  REQUIRE(profile.points.size() == 5);
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    CHECK(profile.points[i].gate_index == i);
    CHECK(profile.points[i].num_terms == 1);
    CHECK(!profile.points[i].capped);
    CHECK(profile.points[i].tag == LayerTag::SingleQubit);
  }
}

TEST_CASE("growth profile stops at the term cap") {
  // Applied order: XX(0.9) then X0(pi/4). The reverse walk branches Z0 into
  // two terms at the single, then both terms split again at the entangler:
  // 2, then 4 > cap of 3.
  std::vector<Layer> layers;
  layers.push_back(Layer{
      LayerTag::TwoQubitColor1,
      {RotationGate::two(0, 1, Letter::X, Letter::X, 0.9)}});
  layers.push_back(
      Layer{LayerTag::SingleQubit, {RotationGate::one(0, Letter::X, kPi / 4)}});
  const Circuit circuit(2, QubitSubset{{0, 1}, 0}, std::move(layers),
                        PauliString::parse("ZI"));
  const GrowthProfile profile =
      term_growth_profile(circuit, PauliString::parse("ZI"), 0.0, 3);
  CHECK(profile.capped);
  REQUIRE(profile.points.size() == 2);
  CHECK(profile.points[0].gate_index == 0);
  CHECK(profile.points[0].num_terms == 2);
  CHECK(!profile.points[0].capped);
  CHECK(profile.points[0].tag == LayerTag::SingleQubit);
  CHECK(profile.points[1].num_terms == 4);
  CHECK(profile.points[1].capped);
  CHECK(profile.points[1].tag == LayerTag::TwoQubitColor1);
}

TEST_CASE("sparse evolution rejects bad inputs") {
  const Circuit circuit = single_gate_circuit(
      1, RotationGate::one(0, Letter::X, 0.3), PauliString::parse("Z"));
  CHECK_THROWS_AS(heisenberg_evolve(circuit, PauliString::parse("iZ"), 0.0),
                  DomainError);
  CHECK_THROWS_AS(heisenberg_evolve(circuit, PauliString::parse("ZZ"), 0.0),
                  DimensionError);
  CHECK_THROWS_AS(heisenberg_evolve(circuit, PauliString::parse("Z"), -0.1),
                  DomainError);
  CHECK_THROWS_AS(
      term_growth_profile(circuit, PauliString::parse("Z"), 0.0, 0),
      DomainError);
}
