#include "pbench/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"
#include "pbench/bench_gen.hpp"
#include "pbench/circuit.hpp"
#include "pbench/errors.hpp"
#include "pbench/hard_gen.hpp"
#include "pbench/rng.hpp"
#include "pbench/sim_clifford.hpp"
#include "pbench/sim_dense.hpp"

namespace pbench {

namespace {

constexpr char kFlagOk[] = "ok";
constexpr char kFlagDegenerateIdeal[] = "degenerate-ideal";

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double mean_of(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return v.empty() ? 0.0 : sum / static_cast<double>(v.size());
}

// Sample standard deviation (n-1 denominator); 0 for fewer than two values.
double sample_sigma(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Benchmark: return "benchmark";
    case Family::KickedIsing: return "kicked_ising";
    case Family::Hard: return "hard";
  }
  throw DomainError("family_name: invalid family");
}

Family family_from_name(const std::string& name) {
  if (name == "benchmark") return Family::Benchmark;
  if (name == "kicked_ising") return Family::KickedIsing;
  if (name == "hard") return Family::Hard;
  throw ValidationError("unknown record family \"" + name + "\"");
}

std::string records_to_csv(const std::vector<FidelityRecord>& records) {
  std::ostringstream out;
  out << kRecordsCsvHeader << '\n';
  for (const FidelityRecord& r : records) {
    out << r.circuit_id << ',' << family_name(r.family) << ',' << r.n << ','
        << r.l << ',' << r.v_lc << ',' << format_double(r.x) << ','
        << format_double(r.measured) << ',' << format_double(r.ideal) << ','
        << format_double(r.f_eff) << ',' << r.flag << ',' << r.seed << ','
        << r.trajectories << '\n';
  }
  return out.str();
}

std::vector<FidelityRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::vector<FidelityRecord> records;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      if (line != kRecordsCsvHeader) {
        throw ValidationError("records CSV: unexpected header line");
      }
      have_header = true;
      continue;
    }
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 12) {
      throw ValidationError("records CSV: line " + std::to_string(line_no) +
                            " does not have 12 fields");
    }
    try {
      FidelityRecord r;
      r.circuit_id = f[0];
      r.family = family_from_name(f[1]);
      r.n = static_cast<std::uint32_t>(std::stoul(f[2]));
      r.l = static_cast<std::uint32_t>(std::stoul(f[3]));
      r.v_lc = std::stoull(f[4]);
      r.x = std::stod(f[5]);
      r.measured = std::stod(f[6]);
      r.ideal = std::stod(f[7]);
      r.f_eff = std::stod(f[8]);
      r.flag = f[9];
      r.seed = std::stoull(f[10]);
      r.trajectories = std::stoull(f[11]);
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ValidationError("records CSV: line " + std::to_string(line_no) +
                            " has a malformed field");
    }
  }
  if (!have_header) {
    throw ValidationError("records CSV: missing header");
  }
  return records;
}

double effective_fidelity(double measured, double ideal, double ideal_floor) {
  if (std::abs(ideal) < ideal_floor) {
    throw DegenerateIdealError("ideal expectation below the floor " +
                               format_double(ideal_floor));
  }
  return measured / ideal;
}

double effective_volume(double f_eff, double eps) {
  if (eps <= 0.0) {
    throw DomainError("effective volume needs eps > 0");
  }
  if (f_eff <= 0.0) {
    throw DomainError("effective volume undefined for non-positive fidelity");
  }
  return -std::log(f_eff) / eps;
}

std::size_t FitResult::bin_index(double x) const {
  if (!(x_max > x_min)) return 0;
  if (x <= x_min) return 0;
  if (x >= x_max) return kFitBins - 1;
  const double width = (x_max - x_min) / static_cast<double>(kFitBins);
  const std::size_t b = static_cast<std::size_t>((x - x_min) / width);
  return std::min(b, kFitBins - 1);
}

FitResult fit_quadratic(const std::vector<FidelityRecord>& records) {
  std::vector<const FidelityRecord*> used;
  used.reserve(records.size());
  for (const FidelityRecord& r : records) {
    if (r.ok()) used.push_back(&r);
  }
  {
    std::vector<double> xs;
    xs.reserve(used.size());
    for (const FidelityRecord* r : used) xs.push_back(r->x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 3) {
      throw FitError("quadratic fit needs at least 3 distinct x values");
    }
  }

  const Eigen::Index m = static_cast<Eigen::Index>(used.size());
  Eigen::MatrixXd design(m, 3);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = used[static_cast<std::size_t>(i)]->x;
    design(i, 0) = 1.0;
    design(i, 1) = x;
    design(i, 2) = x * x;
    y(i) = used[static_cast<std::size_t>(i)]->f_eff;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) {
    throw FitError("quadratic fit design matrix is rank-deficient");
  }
  const Eigen::Vector3d coeffs = qr.solve(y);

  FitResult fit;
  fit.coefficients = {coeffs(0), coeffs(1), coeffs(2)};
  fit.x_min = used.front()->x;
  fit.x_max = used.front()->x;
  for (const FidelityRecord* r : used) {
    fit.x_min = std::min(fit.x_min, r->x);
    fit.x_max = std::max(fit.x_max, r->x);
  }

  std::array<std::vector<double>, kFitBins> residuals;
  std::vector<double> all_residuals;
  all_residuals.reserve(used.size());
  for (const FidelityRecord* r : used) {
    const double res = r->f_eff - fit.evaluate(r->x);
    residuals[fit.bin_index(r->x)].push_back(res);
    all_residuals.push_back(res);
  }

  std::array<std::optional<double>, kFitBins> sigma;
  bool any = false;
  for (std::size_t b = 0; b < kFitBins; ++b) {
    if (residuals[b].size() >= 2) {
      sigma[b] = sample_sigma(residuals[b]);
      any = true;
    }
  }
  const double global_sigma = sample_sigma(all_residuals);
  for (std::size_t b = 0; b < kFitBins; ++b) {
    if (sigma[b].has_value()) {
      fit.bin_sigma[b] = *sigma[b];
      continue;
    }
    if (!any) {
      fit.bin_sigma[b] = global_sigma;
      continue;
    }
    // Borrow the nearest populated bin, preferring the lower index on ties.
    for (std::size_t d = 1; d < kFitBins; ++d) {
      if (b >= d && sigma[b - d].has_value()) {
        fit.bin_sigma[b] = *sigma[b - d];
        break;
      }
      if (b + d < kFitBins && sigma[b + d].has_value()) {
        fit.bin_sigma[b] = *sigma[b + d];
        break;
      }
    }
  }
  return fit;
}

PredictionInterval predict_interval(const FitResult& fit, double x) {
  PredictionInterval out;
  out.extrapolated = (x < fit.x_min || x > fit.x_max);
  const double center = fit.evaluate(x);
  const double half = fit.band_multiplier * fit.bin_sigma[fit.bin_index(x)];
  out.low = center - half;
  out.high = center + half;
  return out;
}

std::string fit_to_json(const FitResult& fit, int indent) {
  nlohmann::json j;
  j["coefficients"] = fit.coefficients;
  std::vector<double> edges(kFitBins + 1);
  const double width = (fit.x_max - fit.x_min) / static_cast<double>(kFitBins);
  for (std::size_t k = 0; k <= kFitBins; ++k) {
    edges[k] = fit.x_min + static_cast<double>(k) * width;
  }
  edges.back() = fit.x_max;
  j["bin_edges"] = edges;
  j["bin_sigmas"] = fit.bin_sigma;
  j["band_multiplier"] = fit.band_multiplier;
  return j.dump(indent);
}

FitResult fit_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("fit JSON parse failed: ") + e.what());
  }
  try {
    FitResult fit;
    const auto coeffs = j.at("coefficients").get<std::vector<double>>();
    const auto edges = j.at("bin_edges").get<std::vector<double>>();
    const auto sigmas = j.at("bin_sigmas").get<std::vector<double>>();
    if (coeffs.size() != 3 || edges.size() != kFitBins + 1 ||
        sigmas.size() != kFitBins) {
      throw ValidationError("fit JSON: wrong coefficient/edge/sigma counts");
    }
    std::copy(coeffs.begin(), coeffs.end(), fit.coefficients.begin());
    std::copy(sigmas.begin(), sigmas.end(), fit.bin_sigma.begin());
    fit.x_min = edges.front();
    fit.x_max = edges.back();
    fit.band_multiplier = j.at("band_multiplier").get<double>();
    return fit;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("fit JSON malformed: ") + e.what());
  }
}

namespace {

QubitSubset draw_subset(const DeviceLayout& layout, std::uint32_t n,
                        Rng& rng) {
  const std::uint32_t anchor =
      static_cast<std::uint32_t>(uniform_index(rng, layout.num_qubits()));
  return sample_connected_subset(layout, n, anchor, rng);
}

FidelityRecord make_record(std::string id, Family family, std::uint32_t n,
                           std::uint32_t l, const Circuit& circuit,
                           double measured, double ideal, std::uint64_t seed,
                           std::uint64_t trajectories) {
  FidelityRecord r;
  r.circuit_id = std::move(id);
  r.family = family;
  r.n = n;
  r.l = l;
  r.v_lc = lightcone_volume(circuit, circuit.observable());
  r.x = static_cast<double>(r.v_lc) / static_cast<double>(n);
  r.measured = measured;
  r.ideal = ideal;
  r.seed = seed;
  r.trajectories = trajectories;
  try {
    r.f_eff = effective_fidelity(measured, ideal);
    r.flag = kFlagOk;
  } catch (const DegenerateIdealError&) {
    r.f_eff = 0.0;
    r.flag = kFlagDegenerateIdeal;
  }
  return r;
}

}  // namespace

ValidationResult run_fidelity_validation(const DeviceLayout& layout,
                                         const ValidationOptions& options) {
  if (options.eps <= 0.0 || options.eps > 1.0) {
    throw DomainError("validation needs eps in (0, 1]");
  }
  if (options.bench_n.empty() || options.bench_l_max < 1 ||
      options.bench_per_cell < 1 || options.app_records < 1 ||
      options.app_n_max < 2 || options.app_l_max < 1) {
    throw DomainError("validation grid parameters must be positive");
  }
  const NoiseModel noise{options.eps, 0.0};

  ValidationResult result;
  std::uint64_t counter = 0;

  for (const std::uint32_t n : options.bench_n) {
    for (std::uint32_t l = 1; l <= options.bench_l_max; ++l) {
      for (std::uint32_t i = 0; i < options.bench_per_cell; ++i) {
        const std::uint64_t circuit_seed = derive_seed(options.seed, counter++);
        Rng rng = make_rng(circuit_seed);
        const QubitSubset subset = draw_subset(layout, n, rng);
        const PauliString obs = PauliString::single(
            layout.num_qubits(), subset.anchor, Letter::Z);
        const AnsatzSkeleton skeleton =
            build_ansatz(layout, subset, l, 1.5707963267948966);
        const Circuit circuit = generate_benchmark_circuit(skeleton, obs, rng);
        const double ideal = clifford_expectation(circuit);
        const NoisyEstimate noisy = clifford_noisy_expectation(
            circuit, noise, options.bench_trajectories, circuit_seed);
        result.benchmark_records.push_back(make_record(
            "bench-N" + std::to_string(n) + "-L" + std::to_string(l) + "-i" +
                std::to_string(i),
            Family::Benchmark, n, l, circuit, noisy.mean, ideal, circuit_seed,
            options.bench_trajectories));
      }
    }
  }

  for (std::uint32_t r = 0; r < options.app_records; ++r) {
    const std::uint64_t circuit_seed = derive_seed(options.seed, counter++);
    Rng rng = make_rng(circuit_seed);
    const std::uint32_t n =
        2 + static_cast<std::uint32_t>(uniform_index(rng, options.app_n_max - 1));
    const std::uint32_t l =
        1 + static_cast<std::uint32_t>(uniform_index(rng, options.app_l_max));
    const double theta_h = uniform_real(rng) * options.app_theta_h_max;
    const QubitSubset subset = draw_subset(layout, n, rng);
    const Circuit circuit = build_kicked_ising(layout, subset, l,
                                               options.app_theta_j, theta_h);
    const double ideal = dense_expectation(circuit);
    const NoisyEstimate noisy = dense_noisy_expectation(
        circuit, noise, options.app_trajectories, circuit_seed);
    result.application_records.push_back(make_record(
        "ki-" + std::to_string(r), Family::KickedIsing, n, l, circuit,
        noisy.mean, ideal, circuit_seed, options.app_trajectories));
  }

  result.fit = fit_quadratic(result.benchmark_records);
  for (const FidelityRecord& r : result.application_records) {
    if (!r.ok()) {
      ++result.flagged;
      continue;
    }
    ++result.evaluated;
    const PredictionInterval interval = predict_interval(result.fit, r.x);
    if (r.f_eff >= interval.low && r.f_eff <= interval.high) {
      ++result.inside;
    }
  }
  result.coverage =
      result.evaluated == 0
          ? 0.0
          : static_cast<double>(result.inside) /
                static_cast<double>(result.evaluated);
  return result;
}

std::vector<EntropyStudyRow> entropy_study(const DeviceLayout& layout,
                                           const EntropyStudyOptions& options) {
  if (options.instances < 1) {
    throw DomainError("entropy study needs at least one instance");
  }
  for (const std::uint32_t n : options.n_values) {
    if (n < 2) {
      throw DomainError("entropy study needs subsets of at least 2 qubits");
    }
  }

  std::vector<EntropyStudyRow> rows;
  Rng rng = make_rng(options.seed);
  for (const std::uint32_t n : options.n_values) {
    std::vector<double> hard_entropy;
    std::vector<double> ki_entropy;
    hard_entropy.reserve(options.instances);
    ki_entropy.reserve(options.instances);
    for (std::uint32_t inst = 0; inst < options.instances; ++inst) {
      const QubitSubset subset = draw_subset(layout, n, rng);
      // Uniform unordered pair inside the subset.
      const std::uint64_t i = uniform_index(rng, n);
      std::uint64_t j = uniform_index(rng, n - 1);
      if (j >= i) ++j;
      const std::uint32_t q1 = subset.members[std::min(i, j)];
      const std::uint32_t q2 = subset.members[std::max(i, j)];
      const std::uint64_t pick = uniform_index(rng, 9);
      PauliString obs(layout.num_qubits());
      obs.set_letter(q1, static_cast<Letter>(1 + pick / 3));
      obs.set_letter(q2, static_cast<Letter>(1 + pick % 3));

      const AnsatzSkeleton skeleton =
          build_ansatz(layout, subset, options.num_steps, options.hard_theta);
      const Circuit hard =
          generate_hard_circuit(skeleton, obs, options.hard_brute_layers,
                                options.hard_member_cap, rng)
              .circuit;
      const Circuit ki =
          build_kicked_ising(layout, subset, options.num_steps,
                             options.ki_theta_j, options.ki_theta_h)
              .with_observable(obs);
      hard_entropy.push_back(entanglement_entropy(dense_pair_rdm(hard, q1, q2)));
      ki_entropy.push_back(entanglement_entropy(dense_pair_rdm(ki, q1, q2)));
    }
    rows.push_back({Family::Hard, n, mean_of(hard_entropy),
                    sample_sigma(hard_entropy)});
    rows.push_back({Family::KickedIsing, n, mean_of(ki_entropy),
                    sample_sigma(ki_entropy)});
  }
  return rows;
}

}  // namespace pbench
