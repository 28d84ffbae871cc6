#include "pbench/noise.hpp"

#include "pbench/errors.hpp"

namespace pbench {

void NoiseModel::validate() const {
  if (!(two_qubit_eps >= 0.0 && two_qubit_eps <= 1.0) ||
      !(single_qubit_eps >= 0.0 && single_qubit_eps <= 1.0)) {
    throw DomainError("noise probabilities must lie in [0, 1]");
  }
}

std::array<Letter, 2> two_qubit_error_letters(std::uint64_t index) {
  if (index >= 15) {
    throw DomainError("two-qubit error index out of range");
  }
  const std::uint64_t k = index + 1;  // skip II
  return {static_cast<Letter>(k / 4), static_cast<Letter>(k % 4)};
}

SampledError sample_two_qubit_error(const NoiseModel& noise, Rng& rng) {
  SampledError err;
  const double u = uniform_real(rng);
  if (u < noise.two_qubit_eps) {
    err.hit = true;
    err.letters = two_qubit_error_letters(uniform_index(rng, 15));
  }
  return err;
}

SampledError sample_single_qubit_error(const NoiseModel& noise, Rng& rng) {
  SampledError err;
  if (noise.single_qubit_eps <= 0.0) {
    return err;
  }
  const double u = uniform_real(rng);
  if (u < noise.single_qubit_eps) {
    err.hit = true;
    err.letters[0] =
        static_cast<Letter>(1 + uniform_index(rng, 3));  // X, Y or Z
  }
  return err;
}

}  // namespace pbench
