#include "pbench/pauli.hpp"

#include <cmath>

namespace pbench {

namespace {

void check_same_size(const PauliString& a, const PauliString& b,
                     const char* op) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError(std::string(op) + ": operand qubit counts differ (" +
                         std::to_string(a.num_qubits()) + " vs " +
                         std::to_string(b.num_qubits()) + ")");
  }
}

// Snap values that are Clifford trig results up to one ulp of pi/2 inputs.
double snap_trig(double v) {
  constexpr double kEps = 4e-16;
  if (std::abs(v) < kEps) return 0.0;
  if (std::abs(v - 1.0) < kEps) return 1.0;
  if (std::abs(v + 1.0) < kEps) return -1.0;
  return v;
}

}  // namespace

char letter_char(Letter l) {
  switch (l) {
    case Letter::I: return 'I';
    case Letter::X: return 'X';
    case Letter::Y: return 'Y';
    case Letter::Z: return 'Z';
  }
  throw DomainError("letter_char: invalid letter");
}

Letter letter_from_char(char c) {
  switch (c) {
    case 'I': return Letter::I;
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'Z': return Letter::Z;
    default:
      throw ValidationError(std::string("letter_from_char: invalid letter '") +
                            c + "'");
  }
}

PauliString PauliString::parse(std::string_view text) {
  std::size_t pos = 0;
  std::uint32_t phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase = (phase + 1) & 3u;
    ++pos;
  }
  if (pos == text.size()) {
    throw ValidationError("PauliString::parse: no letters in \"" +
                          std::string(text) + "\"");
  }
  PauliString p(static_cast<std::uint32_t>(text.size() - pos));
  for (std::uint32_t q = 0; pos < text.size(); ++pos, ++q) {
    p.set_letter(q, letter_from_char(text[pos]));
  }
  p.phase_exp_ = phase;
  return p;
}

PauliString PauliString::single(std::uint32_t num_qubits, std::uint32_t qubit,
                                Letter l) {
  if (qubit >= num_qubits) {
    throw DomainError("PauliString::single: qubit index out of range");
  }
  PauliString p(num_qubits);
  p.set_letter(qubit, l);
  return p;
}

void PauliString::set_letter(std::uint32_t q, Letter l) {
  if (q >= num_qubits_) {
    throw DomainError("PauliString::set_letter: qubit index out of range");
  }
  const std::uint64_t mask = 1ULL << (q & 63);
  const std::size_t w = q >> 6;
  const bool x = l == Letter::X || l == Letter::Y;
  const bool z = l == Letter::Z || l == Letter::Y;
  x_word_ref(w) = (x_word(w) & ~mask) | (x ? mask : 0);
  z_word_ref(w) = (z_word(w) & ~mask) | (z ? mask : 0);
}

std::uint32_t PauliString::weight() const {
  std::uint32_t w = 0;
  for (std::size_t i = 0; i < word_count(); ++i) {
    w += std::popcount(x_word(i) | z_word(i));
  }
  return w;
}

std::vector<std::uint32_t> PauliString::support() const {
  std::vector<std::uint32_t> qs;
  for (std::size_t i = 0; i < word_count(); ++i) {
    std::uint64_t m = x_word(i) | z_word(i);
    while (m) {
      qs.push_back(static_cast<std::uint32_t>(i * 64 +
                                              std::countr_zero(m)));
      m &= m - 1;
    }
  }
  return qs;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < word_count(); ++i) {
    if (x_word(i) | z_word(i)) return false;
  }
  return true;
}

int PauliString::sign() const {
  if (!is_hermitian()) {
    throw DomainError("PauliString::sign: string is not Hermitian");
  }
  return phase_exp_ == 0 ? 1 : -1;
}

PauliString PauliString::canonical_letters() const {
  PauliString p = *this;
  p.phase_exp_ = 0;
  return p;
}

std::string PauliString::str() const {
  static const char* kToken[4] = {"+", "+i", "-", "-i"};
  std::string s = kToken[phase_exp_];
  s.reserve(s.size() + num_qubits_);
  for (std::uint32_t q = 0; q < num_qubits_; ++q) {
    s += letter_char(letter(q));
  }
  return s;
}

PauliString PauliString::compress(
    const std::vector<std::uint32_t>& members) const {
  PauliString out(static_cast<std::uint32_t>(members.size()));
  out.phase_exp_ = phase_exp_;
  std::uint64_t seen = 0;  // weight of the part we copied
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Letter l = letter(members[i]);
    if (l != Letter::I) {
      out.set_letter(static_cast<std::uint32_t>(i), l);
      ++seen;
    }
  }
  if (seen != weight()) {
    throw DomainError(
        "PauliString::compress: support extends outside the member set");
  }
  return out;
}

PauliString PauliString::embed(const std::vector<std::uint32_t>& members,
                               std::uint32_t num_qubits) const {
  if (members.size() != num_qubits_) {
    throw DimensionError("PauliString::embed: member count mismatch");
  }
  PauliString out(num_qubits);
  out.phase_exp_ = phase_exp_;
  for (std::uint32_t i = 0; i < num_qubits_; ++i) {
    const Letter l = letter(i);
    if (l != Letter::I) out.set_letter(members[i], l);
  }
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  check_same_size(a, b, "multiply");
  PauliString c(a.num_qubits());
  // Per-site phases: the product picks up +i on X·Y, Y·Z, Z·X and -i on the
  // reversed orders; everything else is phase-free.
  std::uint32_t plus = 0, minus = 0;
  for (std::size_t i = 0; i < a.word_count(); ++i) {
    const std::uint64_t xa = a.x_word(i), za = a.z_word(i);
    const std::uint64_t xb = b.x_word(i), zb = b.z_word(i);
    const std::uint64_t ya = xa & za, xs = xa & ~za, zs = ~xa & za;
    const std::uint64_t yb = xb & zb, xt = xb & ~zb, zt = ~xb & zb;
    plus += std::popcount((xs & yb) | (ya & zt) | (zs & xt));
    minus += std::popcount((ya & xt) | (zs & yb) | (xs & zt));
    c.bits_[i] = xa ^ xb;
    c.bits_[c.word_count() + i] = za ^ zb;
  }
  c.phase_exp_ = (a.phase_exp_ + b.phase_exp_ + plus + 3 * minus) & 3u;
  return c;
}

bool commutes(const PauliString& a, const PauliString& b) {
  check_same_size(a, b, "commutes");
  std::uint32_t parity = 0;
  for (std::size_t i = 0; i < a.word_count(); ++i) {
    parity ^= std::popcount((a.x_word(i) & b.z_word(i)) ^
                            (a.z_word(i) & b.x_word(i))) &
              1u;
  }
  return parity == 0;
}

void PauliSum::add_term(const PauliString& p, double coeff) {
  if (num_qubits_ == 0 && p.num_qubits() != 0) num_qubits_ = p.num_qubits();
  if (p.num_qubits() != num_qubits_) {
    throw DimensionError("PauliSum::add_term: qubit count mismatch");
  }
  const double signed_coeff = coeff * p.sign();  // throws if non-Hermitian
  if (signed_coeff == 0.0) return;
  auto [it, inserted] =
      terms_.try_emplace(p.canonical_letters(), signed_coeff);
  if (!inserted) {
    it->second += signed_coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p.canonical_letters());
  return it == terms_.end() ? 0.0 : it->second;
}

double PauliSum::squared_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += c * c;
  return s;
}

std::size_t PauliSum::truncate(double threshold) {
  std::size_t dropped = 0;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < threshold) {
      it = terms_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

PauliSum conjugate_by_rotation(const PauliSum& obs, const PauliString& p,
                               double theta) {
  if (!p.is_hermitian() || p.phase_exp() != 0) {
    throw DomainError(
        "conjugate_by_rotation: rotation axis must be a plain letter string");
  }
  if (obs.num_qubits() != 0 && p.num_qubits() != obs.num_qubits()) {
    throw DimensionError("conjugate_by_rotation: qubit count mismatch");
  }
  const double c = snap_trig(std::cos(theta));
  const double s = snap_trig(std::sin(theta));
  PauliSum out(obs.num_qubits());
  for (const auto& [key, coeff] : obs) {
    if (commutes(p, key)) {
      out.add_term(key, coeff);
      continue;
    }
    if (c != 0.0) out.add_term(key, coeff * c);
    if (s != 0.0) {
      // i sin(θ) pK: p and K are Hermitian and anticommute, so pK carries an
      // odd power of i and i·pK is Hermitian again with sign i^(m+1).
      PauliString pk = multiply(p, key);
      const double branch =
          coeff * s * (((pk.phase_exp() + 1) & 2) ? -1.0 : 1.0);
      out.add_term(pk.canonical_letters(), branch);
    }
  }
  return out;
}

}  // namespace pbench
