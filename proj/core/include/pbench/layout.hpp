#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pbench/errors.hpp"
#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"

namespace pbench {

class Circuit;

// Undirected device edge with its layer color. Endpoints are normalized to
// a < b at construction.
struct Edge {
  std::uint32_t a;
  std::uint32_t b;
  std::uint8_t color;  // 1, 2 or 3

  bool operator==(const Edge& o) const {
    return a == o.a && b == o.b && color == o.color;
  }
};

// Device connectivity graph with a 3-colored edge partition. Invariants
// (checked on every load, builtin data included):
//   * every color class is a matching,
//   * the graph is connected and simple (no loops, no parallel edges),
//   * max vertex degree is 3.
// Edges are kept sorted by (color, a, b); that order defines the gate order
// inside each two-qubit layer everywhere downstream.
class DeviceLayout {
 public:
  // Text format: optional '#' comment lines, a "qubits <N>" header, then one
  // edge per line as "<q1> <q2> <color>" or "<q1> <q2>". If any edge omits
  // the color, the whole file must omit it and colors are assigned greedily
  // (first color in {1,2,3} unused at both endpoints, in file order); graphs
  // needing a fourth color are rejected.
  static DeviceLayout load_text(std::string_view text);
  static DeviceLayout load_file(const std::string& path);
  // Builtin names plus file paths. The only builtin is "heavy-hex-127".
  static DeviceLayout load(const std::string& source);

  std::uint32_t num_qubits() const { return num_qubits_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<std::uint32_t>& neighbors(std::uint32_t q) const;
  std::uint32_t degree(std::uint32_t q) const;

  std::vector<Edge> edges_with_color(std::uint8_t color) const;
  // Edges of one color with both endpoints inside `members` (sorted ids).
  std::vector<Edge> edges_within(const std::vector<std::uint32_t>& members,
                                 std::uint8_t color) const;

 private:
  DeviceLayout() = default;
  void validate() const;
  void build_adjacency();

  std::uint32_t num_qubits_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
};

// Text of the bundled 127-qubit heavy-hex graph (embedded at build time from
// data/heavy_hex_127.layout).
std::string_view heavy_hex_127_text();

// A connected set of device qubits with a distinguished anchor (always a
// member). members is sorted ascending.
struct QubitSubset {
  std::vector<std::uint32_t> members;
  std::uint32_t anchor = 0;

  std::size_t size() const { return members.size(); }
  bool contains(std::uint32_t q) const;
  // Position of q in members; throws DomainError if absent.
  std::uint32_t local_index(std::uint32_t q) const;
};

// Grows a connected subset of n qubits around `anchor` by repeatedly adding
// a uniformly random vertex from the current frontier (vertices adjacent to
// the set but outside it). Simple and deterministic per seed; frontier-
// uniform growth is an approximation, not a uniform sample over all
// connected subsets.
QubitSubset sample_connected_subset(const DeviceLayout& layout,
                                    std::uint32_t n, std::uint32_t anchor,
                                    Rng& rng);

// Number of two-qubit gates inside the causal cone of obs: reverse sweep
// over the circuit keeping an active qubit set A (initially support(obs));
// a two-qubit gate touching A is counted and both its qubits join A.
// Single-qubit gates never affect the count or the set.
std::uint64_t lightcone_volume(const Circuit& circuit, const PauliString& obs);

}  // namespace pbench
