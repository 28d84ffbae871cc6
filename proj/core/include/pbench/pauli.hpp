#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbench/errors.hpp"

namespace pbench {

enum class Letter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char letter_char(Letter l);
Letter letter_from_char(char c);

// An n-qubit Pauli operator i^phase_exp * (L_0 ⊗ L_1 ⊗ ... ⊗ L_{n-1}) in
// symplectic binary form. Site letters map to (x,z) bits as
// I=(0,0), X=(1,0), Y=(1,1), Z=(0,1); qubit q lives at bit q of word q/64.
// The text form puts qubit 0 leftmost: "+XIZZY" is X on qubit 0.
//
// Storage is one contiguous block: words [0, W) are x bits, [W, 2W) are
// z bits. Bits at positions >= num_qubits in the last word are always zero;
// commutation and weight are plain masked popcounts by that contract.
class PauliString {
 public:
  PauliString() : num_qubits_(0), phase_exp_(0) {}
  explicit PauliString(std::uint32_t num_qubits)
      : num_qubits_(num_qubits), phase_exp_(0),
        bits_(2 * words_per_side(num_qubits), 0) {}

  // Parses "[sign-token]letters" where the optional token is one of
  // +, -, i, +i, -i and letters are over {I,X,Y,Z}.
  static PauliString parse(std::string_view text);

  // Identity with a single letter planted at `qubit`.
  static PauliString single(std::uint32_t num_qubits, std::uint32_t qubit,
                            Letter l);

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::uint32_t phase_exp() const { return phase_exp_; }
  void set_phase_exp(std::uint32_t k) { phase_exp_ = k & 3u; }

  Letter letter(std::uint32_t q) const {
    const bool x = (x_word(q >> 6) >> (q & 63)) & 1u;
    const bool z = (z_word(q >> 6) >> (q & 63)) & 1u;
    if (x) return z ? Letter::Y : Letter::X;
    return z ? Letter::Z : Letter::I;
  }
  void set_letter(std::uint32_t q, Letter l);

  std::uint32_t weight() const;
  std::vector<std::uint32_t> support() const;
  bool is_identity() const;

  // Hermitian iff the global phase is real (+1 or -1); the letters
  // themselves are Hermitian matrices.
  bool is_hermitian() const { return (phase_exp_ & 1u) == 0; }
  // +1 or -1 for a Hermitian string.
  int sign() const;
  // Same letters with phase_exp forced to 0 (canonical PauliSum key form).
  PauliString canonical_letters() const;

  std::string str() const;

  bool operator==(const PauliString& o) const {
    return num_qubits_ == o.num_qubits_ && phase_exp_ == o.phase_exp_ &&
           bits_ == o.bits_;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }
  // Ignores the global phase; used wherever strings act as set members.
  bool same_letters(const PauliString& o) const {
    return num_qubits_ == o.num_qubits_ && bits_ == o.bits_;
  }

  std::size_t word_count() const { return bits_.size() / 2; }
  std::uint64_t x_word(std::size_t i) const { return bits_[i]; }
  std::uint64_t z_word(std::size_t i) const { return bits_[word_count() + i]; }

  // Relabels qubits onto the index space of `members` (sorted global ids).
  // Every supported qubit must appear in members.
  PauliString compress(const std::vector<std::uint32_t>& members) const;
  // Inverse of compress: place letter i at members[i] in an n-qubit string.
  PauliString embed(const std::vector<std::uint32_t>& members,
                    std::uint32_t num_qubits) const;

  std::size_t hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ num_qubits_;
    for (std::uint64_t w : bits_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    h ^= phase_exp_;
    return static_cast<std::size_t>(h * 0xbf58476d1ce4e5b9ULL);
  }

  friend PauliString multiply(const PauliString& a, const PauliString& b);
  friend bool commutes(const PauliString& a, const PauliString& b);

 private:
  static std::size_t words_per_side(std::uint32_t n) {
    return (static_cast<std::size_t>(n) + 63) / 64;
  }
  std::uint64_t& x_word_ref(std::size_t i) { return bits_[i]; }
  std::uint64_t& z_word_ref(std::size_t i) { return bits_[word_count() + i]; }

  std::uint32_t num_qubits_;
  std::uint32_t phase_exp_;
  std::vector<std::uint64_t> bits_;
};

struct PauliStringHash {
  std::size_t operator()(const PauliString& p) const { return p.hash(); }
};

// Full product a·b with exact i^k phase tracking. Throws DimensionError on
// qubit-count mismatch.
PauliString multiply(const PauliString& a, const PauliString& b);

// True iff [a, b] = 0: the number of sites with anticommuting letters is
// even (popcount parity of the symplectic overlap).
bool commutes(const PauliString& a, const PauliString& b);

inline bool anticommutes(const PauliString& a, const PauliString& b) {
  return !commutes(a, b);
}

// Real-coefficient sum of Hermitian Pauli strings. Keys are canonical:
// phase_exp = 0, with each term's ±1 sign folded into its coefficient.
// Exactly-zero coefficients are never stored.
class PauliSum {
 public:
  using Map = std::unordered_map<PauliString, double, PauliStringHash>;

  PauliSum() : num_qubits_(0) {}
  explicit PauliSum(std::uint32_t num_qubits) : num_qubits_(num_qubits) {}

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  // Accumulates coeff * p. p must be Hermitian; its sign folds into the
  // coefficient and a resulting exact zero erases the term.
  void add_term(const PauliString& p, double coeff);

  // Coefficient of the canonical key with p's letters (0 if absent).
  double coefficient(const PauliString& p) const;

  double squared_norm() const;

  Map::const_iterator begin() const { return terms_.begin(); }
  Map::const_iterator end() const { return terms_.end(); }

  // Drop every term with |coeff| < threshold. Returns number dropped.
  std::size_t truncate(double threshold);

 private:
  std::uint32_t num_qubits_;
  Map terms_;
};

// Heisenberg image of obs under the rotation e^{+iθp/2}:
//   e^{iθp/2} O e^{-iθp/2} = O                       if [p, O] = 0
//                          = cos(θ) O + i sin(θ) pO  otherwise,
// applied term by term. p must be Hermitian with positive sign (a plain
// letter string). cos/sin values within 4e-16 of {0, ±1} are snapped exact
// so Clifford angles produce single-branch images with true zero dropped.
PauliSum conjugate_by_rotation(const PauliSum& obs, const PauliString& p,
                               double theta);

}  // namespace pbench
