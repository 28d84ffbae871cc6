#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pbench/layout.hpp"
#include "pbench/noise.hpp"

namespace pbench {

enum class Family : std::uint8_t { Benchmark, KickedIsing, Hard };

const char* family_name(Family f);          // benchmark / kicked_ising / hard
Family family_from_name(const std::string& name);

// One fidelity experiment: a circuit, its ideal and noisy expectations, and
// the derived effective fidelity against x = v_lc / N. flag is "ok" or
// "degenerate-ideal" (|ideal| below the floor; f_eff meaningless and the
// record is excluded from fits and coverage).
struct FidelityRecord {
  std::string circuit_id;
  Family family = Family::Benchmark;
  std::uint32_t n = 0;
  std::uint32_t l = 0;
  std::uint64_t v_lc = 0;
  double x = 0.0;
  double measured = 0.0;
  double ideal = 0.0;
  double f_eff = 0.0;
  std::string flag = "ok";
  std::uint64_t seed = 0;
  std::uint64_t trajectories = 0;

  bool ok() const { return flag == "ok"; }
};

inline constexpr char kRecordsCsvHeader[] =
    "circuit_id,family,N,L,v_lc,x,measured,ideal,f_eff,flag,seed,trajectories";

// Lines starting with '#' are ignored on read (the CLI writes a config
// comment above the header).
std::string records_to_csv(const std::vector<FidelityRecord>& records);
std::vector<FidelityRecord> records_from_csv(const std::string& text);

inline constexpr double kIdealFloor = 1e-6;

// measured / ideal; throws DegenerateIdealError when |ideal| < floor.
double effective_fidelity(double measured, double ideal,
                          double ideal_floor = kIdealFloor);

// -ln(f_eff) / eps; throws DomainError when f_eff <= 0 (log undefined — noisy
// estimates can go non-positive, callers flag those) or eps <= 0.
double effective_volume(double f_eff, double eps);

inline constexpr std::size_t kFitBins = 100;

// Least-squares quadratic of f_eff against x with residual dispersion
// measured over 100 equal-width x bins.
struct FitResult {
  std::array<double, 3> coefficients{0.0, 0.0, 0.0};  // a0 + a1 x + a2 x^2
  double x_min = 0.0;
  double x_max = 0.0;
  std::array<double, kFitBins> bin_sigma{};
  double band_multiplier = 3.0;

  double evaluate(double x) const {
    return coefficients[0] + coefficients[1] * x + coefficients[2] * x * x;
  }
  std::size_t bin_index(double x) const;  // clamped to [0, kFitBins)
};

// Fits the unflagged records. Bins with fewer than two residuals borrow the
// nearest populated bin's sigma (lower index on ties); if no bin has two,
// every bin takes the global residual sigma. Throws FitError when fewer
// than three distinct x values remain or the design is rank-deficient.
FitResult fit_quadratic(const std::vector<FidelityRecord>& records);

struct PredictionInterval {
  double low = 0.0;
  double high = 0.0;
  bool extrapolated = false;  // x outside the fitted range (boundary bin used)
};

PredictionInterval predict_interval(const FitResult& fit, double x);

std::string fit_to_json(const FitResult& fit, int indent = 2);
FitResult fit_from_json(const std::string& text);

// ---- Fig. 2-style validation: benchmark fit predicts application records.

struct ValidationOptions {
  double eps = 0.01;
  std::vector<std::uint32_t> bench_n = {2, 4, 8, 12};
  std::uint32_t bench_l_max = 10;
  std::uint32_t bench_per_cell = 10;  // circuits per (N, L) cell
  std::uint64_t bench_trajectories = 4000;
  std::uint32_t app_records = 300;
  std::uint32_t app_n_max = 12;  // N uniform over {2..n_max}
  std::uint32_t app_l_max = 10;  // L uniform over {1..l_max}
  double app_theta_j = -1.5707963267948966;
  double app_theta_h_max = 0.7853981633974483;  // theta_h ~ U(0, max)
  std::uint64_t app_trajectories = 2000;
  std::uint64_t seed = 1;
};

struct ValidationResult {
  std::vector<FidelityRecord> benchmark_records;
  std::vector<FidelityRecord> application_records;
  FitResult fit;
  std::size_t inside = 0;     // unflagged application records inside 3 sigma
  std::size_t evaluated = 0;  // unflagged application records
  std::size_t flagged = 0;
  double coverage = 0.0;      // inside / evaluated
};

// Benchmark side runs on the stabilizer engine, application side (kicked
// Ising) on the dense engine; both share the noise model and the documented
// per-record seed derivation, so the run is reproducible from `seed`.
ValidationResult run_fidelity_validation(const DeviceLayout& layout,
                                         const ValidationOptions& options);

// ---- Fig. 3-style entropy comparison.

struct EntropyStudyOptions {
  std::vector<std::uint32_t> n_values = {4, 6, 8, 10, 12};
  std::uint32_t num_steps = 5;
  std::uint32_t instances = 200;
  std::uint32_t hard_brute_layers = 1;
  std::size_t hard_member_cap = std::size_t{1} << 16;
  double hard_theta = 0.7853981633974483;        // pi/4
  double ki_theta_j = -1.5707963267948966;       // -pi/2
  double ki_theta_h = 0.7853981633974483;        // pi/4
  std::uint64_t seed = 0;
};

struct EntropyStudyRow {
  Family family = Family::Hard;
  std::uint32_t n = 0;
  double mean_entropy = 0.0;
  double sigma = 0.0;  // sample standard deviation over instances
};

// For each instance: sample a connected subset, a uniform pair inside it and
// a uniform weight-two Pauli on the pair; generate the hard and kicked-Ising
// circuits on that same subset and record the pair entropy of each final
// state. Rows come out grouped per N, hard family first.
std::vector<EntropyStudyRow> entropy_study(const DeviceLayout& layout,
                                           const EntropyStudyOptions& options);

}  // namespace pbench
