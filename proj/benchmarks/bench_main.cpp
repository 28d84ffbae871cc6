// Microbenchmarks for the inner-loop primitives: Pauli algebra at device
// width, tableau updates, sparse Heisenberg steps and subset sampling.
// Build with -DPAULIBENCH_BUILD_BENCHMARKS=ON (default) and run
// ./benchmarks/microbench from the build tree.

#include <cstdint>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "pbench/circuit.hpp"
#include "pbench/layout.hpp"
#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"
#include "pbench/sim_clifford.hpp"
#include "pbench/sim_spd.hpp"

namespace {

using namespace pbench;

constexpr double kPi = std::numbers::pi;

PauliString random_letters(std::uint32_t n, Rng& rng) {
  PauliString p(n);
  for (std::uint32_t q = 0; q < n; ++q) {
    p.set_letter(q, static_cast<Letter>(uniform_index(rng, 4)));
  }
  return p;
}

void BM_PauliMultiply127(benchmark::State& state) {
  Rng rng = make_rng(1);
  const PauliString a = random_letters(127, rng);
  const PauliString b = random_letters(127, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(multiply(a, b));
  }
}
BENCHMARK(BM_PauliMultiply127);

void BM_PauliCommutes127(benchmark::State& state) {
  Rng rng = make_rng(2);
  const PauliString a = random_letters(127, rng);
  const PauliString b = random_letters(127, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(commutes(a, b));
  }
}
BENCHMARK(BM_PauliCommutes127);

void BM_TableauKickedIsingStep(benchmark::State& state) {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  std::vector<std::uint32_t> members(layout.num_qubits());
  for (std::uint32_t q = 0; q < layout.num_qubits(); ++q) members[q] = q;
  const Circuit circuit = build_kicked_ising(
      layout, QubitSubset{members, 62}, 1, -kPi / 2, kPi / 2);
  for (auto _ : state) {
    Tableau tableau(layout.num_qubits());
    circuit.for_each_gate(
        [&](const RotationGate& gate, LayerTag, std::size_t) {
          tableau.apply_rotation(gate.pauli(layout.num_qubits()),
                                 gate.angle);
        });
    benchmark::DoNotOptimize(tableau);
  }
}
BENCHMARK(BM_TableauKickedIsingStep);

void BM_SparseHeisenbergStep(benchmark::State& state) {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  Rng rng = make_rng(3);
  const QubitSubset subset = sample_connected_subset(layout, 12, 62, rng);
  const Circuit circuit =
      build_kicked_ising(layout, subset, 1, -1.1, 0.4);
  const PauliString obs = circuit.observable();
  for (auto _ : state) {
    benchmark::DoNotOptimize(heisenberg_evolve(circuit, obs, 1e-8));
  }
}
BENCHMARK(BM_SparseHeisenbergStep);

void BM_SampleConnectedSubset(benchmark::State& state) {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  Rng rng = make_rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_connected_subset(layout, 32, 62, rng));
  }
}
BENCHMARK(BM_SampleConnectedSubset);

}  // namespace

BENCHMARK_MAIN();
