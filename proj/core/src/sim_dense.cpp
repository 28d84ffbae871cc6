#include "pbench/sim_dense.hpp"

#include <bit>
#include <cmath>
#include <cstddef>

#include "pbench/errors.hpp"
#include "pbench/rng.hpp"

namespace pbench {

namespace {

using Amp = std::complex<double>;

// A Pauli restricted to the local register: P = i^y_count * X(xmask) * Z(zmask),
// so P|b> = i^y_count * (-1)^popcount(b & zmask) * |b ^ xmask>.
struct LocalPauli {
  std::uint64_t xmask = 0;
  std::uint64_t zmask = 0;
  int y_count = 0;
};

Amp i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double z_sign(std::uint64_t b, std::uint64_t zmask) {
  return (std::popcount(b & zmask) & 1) ? -1.0 : 1.0;
}

void add_letter(LocalPauli& p, Letter l, std::uint32_t local) {
  const std::uint64_t bit = std::uint64_t{1} << local;
  switch (l) {
    case Letter::I: break;
    case Letter::X: p.xmask |= bit; break;
    case Letter::Y: p.xmask |= bit; p.zmask |= bit; ++p.y_count; break;
    case Letter::Z: p.zmask |= bit; break;
  }
}

LocalPauli localize_gate(const RotationGate& gate, const QubitSubset& subset) {
  LocalPauli p;
  for (int i = 0; i < gate.width; ++i) {
    add_letter(p, gate.letters[i], subset.local_index(gate.qubits[i]));
  }
  return p;
}

LocalPauli localize_observable(const PauliString& obs,
                               const QubitSubset& subset) {
  LocalPauli p;
  for (std::uint32_t q : obs.support()) {
    add_letter(p, obs.letter(q), subset.local_index(q));
  }
  return p;
}

// exp(i * angle/2 * P) in place.
void apply_rotation(std::vector<Amp>& amp, const LocalPauli& p, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  const Amp f = Amp(0.0, s) * i_power(p.y_count);
  const std::size_t dim = amp.size();
  if (p.xmask == 0) {
    for (std::size_t b = 0; b < dim; ++b) {
      amp[b] *= c + f * z_sign(b, p.zmask);
    }
    return;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t b2 = b ^ p.xmask;
    if (b >= b2) continue;
    const Amp a0 = amp[b];
    const Amp a1 = amp[b2];
    amp[b] = c * a0 + f * z_sign(b2, p.zmask) * a1;
    amp[b2] = c * a1 + f * z_sign(b, p.zmask) * a0;
  }
}

// P in place (error insertion); the i^y_count global phase is kept so the
// state stays exactly P|psi>.
void apply_pauli(std::vector<Amp>& amp, const LocalPauli& p) {
  const Amp iy = i_power(p.y_count);
  const std::size_t dim = amp.size();
  if (p.xmask == 0) {
    for (std::size_t b = 0; b < dim; ++b) {
      amp[b] *= iy * z_sign(b, p.zmask);
    }
    return;
  }
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t b2 = b ^ p.xmask;
    if (b >= b2) continue;
    const Amp a0 = amp[b];
    amp[b] = iy * z_sign(b2, p.zmask) * amp[b2];
    amp[b2] = iy * z_sign(b, p.zmask) * a0;
  }
}

double pauli_expectation(const std::vector<Amp>& amp, const LocalPauli& p,
                         double sign) {
  const Amp iy = i_power(p.y_count);
  const std::size_t dim = amp.size();
  Amp acc(0.0, 0.0);
  for (std::size_t b = 0; b < dim; ++b) {
    acc += std::conj(amp[b]) * iy * z_sign(b ^ p.xmask, p.zmask) *
           amp[b ^ p.xmask];
  }
  return sign * acc.real();
}

std::vector<Amp> zero_state(std::size_t num_qubits) {
  std::vector<Amp> amp(std::size_t{1} << num_qubits, Amp(0.0, 0.0));
  amp[0] = Amp(1.0, 0.0);
  return amp;
}

void check_capacity(const Circuit& circuit, std::uint32_t max_qubits) {
  const std::size_t n = circuit.qubits().members.size();
  if (n > max_qubits) {
    throw CapacityError("dense engine limited to " +
                        std::to_string(max_qubits) + " qubits, subset has " +
                        std::to_string(n));
  }
}

}  // namespace

std::vector<Amp> dense_final_state(const Circuit& circuit,
                                   std::uint32_t max_qubits) {
  check_capacity(circuit, max_qubits);
  const QubitSubset& subset = circuit.qubits();
  std::vector<Amp> amp = zero_state(subset.members.size());
  circuit.for_each_gate([&](const RotationGate& gate, LayerTag, std::size_t) {
    apply_rotation(amp, localize_gate(gate, subset), gate.angle);
  });
  return amp;
}

double dense_expectation(const Circuit& circuit, std::uint32_t max_qubits) {
  const std::vector<Amp> amp = dense_final_state(circuit, max_qubits);
  const PauliString& obs = circuit.observable();
  return pauli_expectation(amp, localize_observable(obs, circuit.qubits()),
                           static_cast<double>(obs.sign()));
}

NoisyEstimate dense_noisy_expectation(const Circuit& circuit,
                                      const NoiseModel& noise,
                                      std::uint64_t trajectories,
                                      std::uint64_t seed,
                                      std::uint32_t max_qubits) {
  check_capacity(circuit, max_qubits);
  noise.validate();
  if (trajectories == 0) {
    throw DomainError("trajectory count must be positive");
  }
  const QubitSubset& subset = circuit.qubits();
  const PauliString& obs = circuit.observable();
  const LocalPauli local_obs = localize_observable(obs, subset);
  const double obs_sign = static_cast<double>(obs.sign());

  // Gate stream is fixed across trajectories; localize once.
  struct Slot {
    LocalPauli pauli;
    double angle;
    int width;
    std::array<std::uint32_t, 2> local{};  // gate qubits in register indexing
  };
  std::vector<Slot> slots;
  circuit.for_each_gate([&](const RotationGate& gate, LayerTag, std::size_t) {
    Slot slot;
    slot.pauli = localize_gate(gate, subset);
    slot.angle = gate.angle;
    slot.width = gate.width;
    for (int i = 0; i < slot.width; ++i) {
      slot.local[i] = subset.local_index(gate.qubits[i]);
    }
    slots.push_back(slot);
  });

  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<Amp> amp;
  for (std::uint64_t t = 0; t < trajectories; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    amp = zero_state(subset.members.size());
    for (const Slot& slot : slots) {
      apply_rotation(amp, slot.pauli, slot.angle);
      const SampledError err = (slot.width == 2)
                                   ? sample_two_qubit_error(noise, rng)
                                   : sample_single_qubit_error(noise, rng);
      if (err.hit) {
        LocalPauli e;
        for (int i = 0; i < slot.width; ++i) {
          add_letter(e, err.letters[i], slot.local[i]);
        }
        apply_pauli(amp, e);
      }
    }
    const double v = pauli_expectation(amp, local_obs, obs_sign);
    sum += v;
    sum_sq += v * v;
  }
  NoisyEstimate out;
  out.trajectories = trajectories;
  const double n = static_cast<double>(trajectories);
  out.mean = sum / n;
  if (trajectories > 1) {
    double var = (sum_sq - n * out.mean * out.mean) / (n - 1.0);
    if (var < 0.0) var = 0.0;
    out.std_error = std::sqrt(var / n);
  }
  return out;
}

Eigen::Matrix4cd dense_pair_rdm(const Circuit& circuit, std::uint32_t q1,
                                std::uint32_t q2, std::uint32_t max_qubits) {
  if (q1 == q2) {
    throw DomainError("reduced density matrix needs two distinct qubits");
  }
  const std::vector<Amp> amp = dense_final_state(circuit, max_qubits);
  const QubitSubset& subset = circuit.qubits();
  const std::uint32_t l1 = subset.local_index(q1);
  const std::uint32_t l2 = subset.local_index(q2);
  const std::uint64_t m1 = std::uint64_t{1} << l1;
  const std::uint64_t m2 = std::uint64_t{1} << l2;
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  for (std::size_t b = 0; b < amp.size(); ++b) {
    const int j = static_cast<int>(((b >> l1) & 1) | (((b >> l2) & 1) << 1));
    const std::size_t base = b & ~(m1 | m2);
    for (int k = 0; k < 4; ++k) {
      const std::size_t b2 = base | ((k & 1) ? m1 : 0) | ((k & 2) ? m2 : 0);
      rho(j, k) += amp[b] * std::conj(amp[b2]);
    }
  }
  return rho;
}

double entanglement_entropy(const Eigen::MatrixXcd& rho) {
  constexpr double kTol = 1e-8;
  if (rho.rows() != rho.cols()) {
    throw DomainError("entanglement_entropy: matrix is not square");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kTol) {
    throw DomainError("entanglement_entropy: matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > kTol ||
      std::abs(rho.trace().imag()) > kTol) {
    throw DomainError("entanglement_entropy: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  if (solver.info() != Eigen::Success) {
    throw DomainError("eigenvalue decomposition failed");
  }
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()[i];
    if (lambda < -kTol) {
      throw DomainError("entanglement_entropy: matrix is not PSD");
    }
    if (lambda < 1e-12) continue;
    entropy -= lambda * std::log2(lambda);
  }
  return entropy;
}

}  // namespace pbench
