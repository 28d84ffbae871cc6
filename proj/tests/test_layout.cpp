#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "pbench/circuit.hpp"
#include "pbench/errors.hpp"
#include "pbench/layout.hpp"
#include "pbench/rng.hpp"
#include "support/oracles.hpp"

using namespace pbench;

TEST_CASE("builtin heavy-hex layout: 127 qubits, 144 edges in 3 matchings") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  CHECK(layout.num_qubits() == 127);
  CHECK(layout.num_edges() == 144);

  for (std::uint8_t color = 1; color <= 3; ++color) {
    const auto edges = layout.edges_with_color(color);
    CHECK(edges.size() == 48);
    std::set<std::uint32_t> touched;
    for (const Edge& e : edges) {
      CHECK(!touched.count(e.a));
      CHECK(!touched.count(e.b));
      touched.insert(e.a);
      touched.insert(e.b);
    }
  }

  for (std::uint32_t q = 0; q < layout.num_qubits(); ++q) {
    CHECK(layout.degree(q) <= 3);
  }

  // The central qubit of the bundled numbering.
  CHECK(layout.neighbors(62) == std::vector<std::uint32_t>{61, 63, 72});
}

TEST_CASE("layout text parsing") {
  const DeviceLayout tiny = DeviceLayout::load_text("qubits 2\n0 1 1\n");
  CHECK(tiny.num_qubits() == 2);
  CHECK(tiny.num_edges() == 1);
  CHECK(tiny.edges()[0].color == 1);

  // Comments and normalized endpoint order.
  const DeviceLayout swapped =
      DeviceLayout::load_text("# comment\nqubits 3\n1 0 1\n2 1 2\n");
  CHECK(swapped.edges()[0].a == 0);
  CHECK(swapped.edges()[0].b == 1);

  // Greedy coloring when the whole file omits colors.
  const DeviceLayout greedy = DeviceLayout::load_text("qubits 3\n0 1\n1 2\n");
  CHECK(greedy.num_edges() == 2);
  std::set<std::uint8_t> colors;
  for (const Edge& e : greedy.edges()) colors.insert(e.color);
  CHECK(colors.size() == 2);  // shared qubit forces distinct colors
}

TEST_CASE("layout validation rejects malformed graphs") {
  // Two color-1 edges sharing qubit 1: not a matching.
  CHECK_THROWS_AS(DeviceLayout::load_text("qubits 3\n0 1 1\n1 2 1\n"),
                  ValidationError);
  // Self loop.
  CHECK_THROWS_AS(DeviceLayout::load_text("qubits 2\n0 0 1\n"),
                  ValidationError);
  // Parallel edges.
  CHECK_THROWS_AS(DeviceLayout::load_text("qubits 2\n0 1 1\n0 1 2\n"),
                  ValidationError);
  // Disconnected.
  CHECK_THROWS_AS(DeviceLayout::load_text("qubits 4\n0 1 1\n2 3 1\n"),
                  ValidationError);
  // Degree 4 (star with four arms).
  CHECK_THROWS_AS(
      DeviceLayout::load_text("qubits 5\n0 1 1\n0 2 2\n0 3 3\n0 4 1\n"),
      ValidationError);
  // Qubit index out of range.
  CHECK_THROWS_AS(DeviceLayout::load_text("qubits 2\n0 2 1\n"),
                  ValidationError);
  // Bad color.
  CHECK_THROWS_AS(DeviceLayout::load_text("qubits 2\n0 1 4\n"),
                  ValidationError);
  // Unknown builtin.
  CHECK_THROWS_AS(DeviceLayout::load("no-such-layout"), ValidationError);
}

TEST_CASE("edges_within restricts to induced subgraph") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  const std::vector<std::uint32_t> members{61, 62, 63, 72};
  std::size_t total = 0;
  for (std::uint8_t color = 1; color <= 3; ++color) {
    for (const Edge& e : layout.edges_within(members, color)) {
      CHECK(std::binary_search(members.begin(), members.end(), e.a));
      CHECK(std::binary_search(members.begin(), members.end(), e.b));
      ++total;
    }
  }
  CHECK(total == 3);  // 61-62 (color 1), 62-63 (color 2), 62-72 (color 3)
}

TEST_CASE("sample_connected_subset: size, anchor, connectivity, determinism") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");

  Rng rng1 = make_rng(7);
  const QubitSubset s1 = sample_connected_subset(layout, 8, 62, rng1);
  CHECK(s1.size() == 8);
  CHECK(s1.anchor == 62);
  CHECK(s1.contains(62));
  CHECK(std::is_sorted(s1.members.begin(), s1.members.end()));

  // Connectivity by BFS over the induced subgraph.
  std::set<std::uint32_t> seen{s1.anchor};
  std::vector<std::uint32_t> frontier{s1.anchor};
  while (!frontier.empty()) {
    const std::uint32_t q = frontier.back();
    frontier.pop_back();
    for (std::uint32_t nb : layout.neighbors(q)) {
      if (s1.contains(nb) && !seen.count(nb)) {
        seen.insert(nb);
        frontier.push_back(nb);
      }
    }
  }
  CHECK(seen.size() == s1.size());

  // Determinism per seed.
  Rng rng2 = make_rng(7);
  const QubitSubset s2 = sample_connected_subset(layout, 8, 62, rng2);
  CHECK(s1.members == s2.members);

  // Trivial sizes.
  Rng rng3 = make_rng(1);
  CHECK(sample_connected_subset(layout, 1, 62, rng3).members ==
        std::vector<std::uint32_t>{62});
  Rng rng4 = make_rng(1);
  CHECK(sample_connected_subset(layout, 127, 0, rng4).size() == 127);

  Rng rng5 = make_rng(1);
  CHECK_THROWS_AS(sample_connected_subset(layout, 0, 0, rng5), DomainError);
  CHECK_THROWS_AS(sample_connected_subset(layout, 128, 0, rng5), DomainError);
}

TEST_CASE("sample_connected_subset reaches every neighbor of a star center") {
  // Star: center 0 with three arms (heavy-hex max degree).
  const DeviceLayout star =
      DeviceLayout::load_text("qubits 4\n0 1 1\n0 2 2\n0 3 3\n");
  std::map<std::uint32_t, int> hits;
  Rng rng = make_rng(99);
  for (int draw = 0; draw < 10000; ++draw) {
    const QubitSubset s = sample_connected_subset(star, 2, 0, rng);
    for (std::uint32_t q : s.members) {
      if (q != 0) ++hits[q];
    }
  }
  CHECK(hits.size() == 3);
  for (const auto& [q, count] : hits) {
    CHECK(count > 0);
  }
}

TEST_CASE("lightcone volume: chain example and saturation") {
  // 3-qubit chain; layer one applies (0,1), layer two applies (1,2) (they
  // share qubit 1, so they cannot sit in one layer). Reverse sweep from Z0
  // sees (1,2) first (no overlap), then (0,1): exactly one gate counted.
  // From Z2 the sweep counts (1,2), activates qubit 1, then counts (0,1).
  const DeviceLayout chain = oracles::path_layout(3);
  std::vector<Layer> layers;
  Layer first{LayerTag::TwoQubitColor1, {}};
  first.gates.push_back(RotationGate::two(0, 1, Letter::Z, Letter::Z, 0.5));
  layers.push_back(first);
  Layer second{LayerTag::TwoQubitColor2, {}};
  second.gates.push_back(RotationGate::two(1, 2, Letter::Z, Letter::Z, 0.5));
  layers.push_back(second);
  const Circuit circuit(3, oracles::all_qubits(chain), layers,
                        PauliString::parse("ZII"));
  CHECK(lightcone_volume(circuit, PauliString::parse("ZII")) == 1);
  CHECK(lightcone_volume(circuit, PauliString::parse("IIZ")) == 2);
  CHECK(lightcone_volume(circuit, PauliString::parse("IZI")) == 2);
  CHECK(lightcone_volume(circuit, PauliString(3)) == 0);

  // Empty circuit.
  const Circuit empty(3, oracles::all_qubits(chain), {},
                      PauliString::parse("ZII"));
  CHECK(lightcone_volume(empty, PauliString::parse("ZII")) == 0);
}

TEST_CASE("lightcone volume grows monotonically with L and saturates") {
  const DeviceLayout layout = DeviceLayout::load("heavy-hex-127");
  const QubitSubset all = oracles::all_qubits(layout, 62);
  const PauliString obs = PauliString::single(127, 62, Letter::Z);
  std::uint64_t prev = 0;
  for (std::uint32_t l : {1u, 2u, 5u, 10u, 20u}) {
    const Circuit ki = build_kicked_ising(layout, all, l, -1.5707963267948966,
                                          0.7853981633974483);
    const std::uint64_t v = lightcone_volume(ki, obs);
    CHECK(v >= prev);
    CHECK(v <= ki.num_two_qubit_gates());
    prev = v;
  }
}
