#include "pbench/layout.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pbench/circuit.hpp"

namespace pbench {

namespace {

struct RawEdge {
  std::uint32_t a, b;
  int color;  // -1 when the file omits colors
};

std::uint32_t parse_u32(std::string_view tok, const char* what) {
  std::uint32_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ValidationError(std::string("layout: bad ") + what + " token \"" +
                          std::string(tok) + "\"");
  }
  return v;
}

}  // namespace

DeviceLayout DeviceLayout::load_text(std::string_view text) {
  std::vector<RawEdge> raw;
  bool have_header = false;
  std::uint32_t num_qubits = 0;
  std::size_t line_no = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (toks.empty()) continue;

    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "qubits") {
        throw ValidationError("layout: line " + std::to_string(line_no) +
                              ": expected \"qubits <N>\" header");
      }
      num_qubits = parse_u32(toks[1], "qubit count");
      if (num_qubits == 0) {
        throw ValidationError("layout: qubit count must be positive");
      }
      have_header = true;
      continue;
    }
    if (toks.size() != 2 && toks.size() != 3) {
      throw ValidationError("layout: line " + std::to_string(line_no) +
                            ": expected \"<q1> <q2> [color]\"");
    }
    RawEdge e{parse_u32(toks[0], "qubit"), parse_u32(toks[1], "qubit"), -1};
    if (toks.size() == 3) {
      e.color = static_cast<int>(parse_u32(toks[2], "color"));
    }
    raw.push_back(e);
  }
  if (!have_header) {
    throw ValidationError("layout: missing \"qubits <N>\" header");
  }

  const bool colored = !raw.empty() && raw.front().color != -1;
  for (const RawEdge& e : raw) {
    if ((e.color != -1) != colored) {
      throw ValidationError(
          "layout: mixed colored and uncolored edge lines");
    }
  }

  DeviceLayout layout;
  layout.num_qubits_ = num_qubits;
  if (colored) {
    for (const RawEdge& e : raw) {
      if (e.color < 1 || e.color > 3) {
        throw ValidationError("layout: edge color must be 1, 2 or 3 (got " +
                              std::to_string(e.color) + ")");
      }
      layout.edges_.push_back(Edge{std::min(e.a, e.b), std::max(e.a, e.b),
                                   static_cast<std::uint8_t>(e.color)});
    }
  } else {
    // Greedy fallback for uncolored graphs: first free color at both
    // endpoints, edges in file order.
    std::vector<std::array<bool, 4>> used(num_qubits, {false, false, false,
                                                       false});
    for (const RawEdge& e : raw) {
      if (e.a >= num_qubits || e.b >= num_qubits) {
        throw ValidationError("layout: edge endpoint out of range");
      }
      int color = 0;
      for (int c = 1; c <= 3; ++c) {
        if (!used[e.a][c] && !used[e.b][c]) {
          color = c;
          break;
        }
      }
      if (color == 0) {
        throw ValidationError(
            "layout: greedy coloring needs more than 3 colors");
      }
      used[e.a][color] = used[e.b][color] = true;
      layout.edges_.push_back(Edge{std::min(e.a, e.b), std::max(e.a, e.b),
                                   static_cast<std::uint8_t>(color)});
    }
  }

  std::sort(layout.edges_.begin(), layout.edges_.end(),
            [](const Edge& l, const Edge& r) {
              return std::tie(l.color, l.a, l.b) < std::tie(r.color, r.a, r.b);
            });
  layout.validate();
  layout.build_adjacency();
  return layout;
}

DeviceLayout DeviceLayout::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("layout: cannot open file \"" + path + "\"");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_text(ss.str());
}

DeviceLayout DeviceLayout::load(const std::string& source) {
  if (source == "heavy-hex-127") return load_text(heavy_hex_127_text());
  return load_file(source);
}

void DeviceLayout::validate() const {
  std::vector<std::uint32_t> degree(num_qubits_, 0);
  std::vector<std::vector<bool>> color_used(
      num_qubits_, std::vector<bool>(4, false));
  std::vector<Edge> sorted_pairs;
  sorted_pairs.reserve(edges_.size());

  for (const Edge& e : edges_) {
    if (e.a >= num_qubits_ || e.b >= num_qubits_) {
      throw ValidationError("layout: edge endpoint out of range");
    }
    if (e.a == e.b) {
      throw ValidationError("layout: self-loop at qubit " +
                            std::to_string(e.a));
    }
    if (color_used[e.a][e.color] || color_used[e.b][e.color]) {
      throw ValidationError(
          "layout: color " + std::to_string(e.color) +
          " is not a matching (repeated endpoint at edge " +
          std::to_string(e.a) + "-" + std::to_string(e.b) + ")");
    }
    color_used[e.a][e.color] = color_used[e.b][e.color] = true;
    ++degree[e.a];
    ++degree[e.b];
    sorted_pairs.push_back(e);
  }

  std::sort(sorted_pairs.begin(), sorted_pairs.end(),
            [](const Edge& l, const Edge& r) {
              return std::tie(l.a, l.b) < std::tie(r.a, r.b);
            });
  for (std::size_t i = 1; i < sorted_pairs.size(); ++i) {
    if (sorted_pairs[i].a == sorted_pairs[i - 1].a &&
        sorted_pairs[i].b == sorted_pairs[i - 1].b) {
      throw ValidationError("layout: parallel edge " +
                            std::to_string(sorted_pairs[i].a) + "-" +
                            std::to_string(sorted_pairs[i].b));
    }
  }

  for (std::uint32_t q = 0; q < num_qubits_; ++q) {
    if (degree[q] > 3) {
      throw ValidationError("layout: vertex degree exceeds 3 at qubit " +
                            std::to_string(q));
    }
  }

  // Connectivity over all declared qubits.
  if (num_qubits_ > 0) {
    std::vector<std::vector<std::uint32_t>> adj(num_qubits_);
    for (const Edge& e : edges_) {
      adj[e.a].push_back(e.b);
      adj[e.b].push_back(e.a);
    }
    std::vector<bool> seen(num_qubits_, false);
    std::vector<std::uint32_t> stack{0};
    seen[0] = true;
    std::uint32_t count = 1;
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      for (std::uint32_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
    if (count != num_qubits_) {
      throw ValidationError("layout: graph is not connected (" +
                            std::to_string(count) + " of " +
                            std::to_string(num_qubits_) +
                            " qubits reachable)");
    }
  }
}

void DeviceLayout::build_adjacency() {
  adjacency_.assign(num_qubits_, {});
  for (const Edge& e : edges_) {
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

const std::vector<std::uint32_t>& DeviceLayout::neighbors(
    std::uint32_t q) const {
  if (q >= num_qubits_) {
    throw DomainError("DeviceLayout::neighbors: qubit out of range");
  }
  return adjacency_[q];
}

std::uint32_t DeviceLayout::degree(std::uint32_t q) const {
  return static_cast<std::uint32_t>(neighbors(q).size());
}

std::vector<Edge> DeviceLayout::edges_with_color(std::uint8_t color) const {
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    if (e.color == color) out.push_back(e);
  }
  return out;
}

std::vector<Edge> DeviceLayout::edges_within(
    const std::vector<std::uint32_t>& members, std::uint8_t color) const {
  std::vector<Edge> out;
  for (const Edge& e : edges_) {
    if (e.color != color) continue;
    if (std::binary_search(members.begin(), members.end(), e.a) &&
        std::binary_search(members.begin(), members.end(), e.b)) {
      out.push_back(e);
    }
  }
  return out;
}

bool QubitSubset::contains(std::uint32_t q) const {
  return std::binary_search(members.begin(), members.end(), q);
}

std::uint32_t QubitSubset::local_index(std::uint32_t q) const {
  auto it = std::lower_bound(members.begin(), members.end(), q);
  if (it == members.end() || *it != q) {
    throw DomainError("QubitSubset: qubit " + std::to_string(q) +
                      " is not a member");
  }
  return static_cast<std::uint32_t>(it - members.begin());
}

QubitSubset sample_connected_subset(const DeviceLayout& layout,
                                    std::uint32_t n, std::uint32_t anchor,
                                    Rng& rng) {
  if (anchor >= layout.num_qubits()) {
    throw DomainError("sample_connected_subset: anchor out of range");
  }
  if (n < 1 || n > layout.num_qubits()) {
    throw DomainError("sample_connected_subset: subset size out of range");
  }
  std::vector<bool> in_set(layout.num_qubits(), false);
  std::vector<bool> in_frontier(layout.num_qubits(), false);
  std::vector<std::uint32_t> members{anchor};
  std::vector<std::uint32_t> frontier;  // kept sorted for determinism
  in_set[anchor] = true;

  auto extend_frontier = [&](std::uint32_t q) {
    for (std::uint32_t w : layout.neighbors(q)) {
      if (!in_set[w] && !in_frontier[w]) {
        frontier.insert(
            std::lower_bound(frontier.begin(), frontier.end(), w), w);
        in_frontier[w] = true;
      }
    }
  };
  extend_frontier(anchor);

  while (members.size() < n) {
    if (frontier.empty()) {
      throw DomainError(
          "sample_connected_subset: frontier exhausted before reaching n");
    }
    const std::size_t pick = uniform_index(rng, frontier.size());
    const std::uint32_t q = frontier[pick];
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(pick));
    in_frontier[q] = false;
    in_set[q] = true;
    members.push_back(q);
    extend_frontier(q);
  }
  std::sort(members.begin(), members.end());
  return QubitSubset{std::move(members), anchor};
}

std::uint64_t lightcone_volume(const Circuit& circuit,
                               const PauliString& obs) {
  if (obs.num_qubits() != circuit.num_device_qubits()) {
    throw DimensionError(
        "lightcone_volume: observable size differs from device size");
  }
  std::vector<bool> active(circuit.num_device_qubits(), false);
  for (std::uint32_t q : obs.support()) active[q] = true;

  std::uint64_t count = 0;
  const auto& layers = circuit.layers();
  for (auto lit = layers.rbegin(); lit != layers.rend(); ++lit) {
    for (auto git = lit->gates.rbegin(); git != lit->gates.rend(); ++git) {
      if (git->width != 2) continue;
      const bool touches = active[git->qubits[0]] || active[git->qubits[1]];
      if (touches) {
        ++count;
        active[git->qubits[0]] = true;
        active[git->qubits[1]] = true;
      }
    }
  }
  return count;
}

}  // namespace pbench
