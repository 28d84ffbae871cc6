// pbench: command-line front end for circuit generation, simulation and
// analysis. Every subcommand is reproducible from its flags (or a JSON
// config file; flags win) and a master seed; file outputs carry the
// effective config either as a sidecar .meta.json or as a leading
// "# config {...}" comment line in CSVs. Nothing here writes wall-clock
// metadata, so artifacts are byte-stable across reruns.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbench/analysis.hpp"
#include "pbench/bench_gen.hpp"
#include "pbench/circuit.hpp"
#include "pbench/circuit_io.hpp"
#include "pbench/errors.hpp"
#include "pbench/hard_gen.hpp"
#include "pbench/layout.hpp"
#include "pbench/noise.hpp"
#include "pbench/pauli.hpp"
#include "pbench/rng.hpp"
#include "pbench/sim_clifford.hpp"
#include "pbench/sim_dense.hpp"
#include "pbench/sim_spd.hpp"

namespace {

using nlohmann::json;
using namespace pbench;

constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// config file overlay: values apply only where the flag was not given.

class ConfigOverlay {
 public:
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      data_ = json::parse(buf.str());
    } catch (const json::exception& e) {
      throw ValidationError("config file " + path + ": " + e.what());
    }
    if (!data_.is_object())
      throw ValidationError("config file " + path + ": top level must be an object");
  }

  // Dotted keys ("noise.two_qubit_eps") descend into nested objects.
  const json* find(const std::string& key) const {
    const json* node = &data_;
    std::size_t start = 0;
    for (;;) {
      const std::size_t dot = key.find('.', start);
      const std::string part = key.substr(start, dot - start);
      if (!node->is_object() || !node->contains(part)) return nullptr;
      node = &node->at(part);
      if (dot == std::string::npos) return node;
      start = dot + 1;
    }
  }

  template <class T>
  void apply(const CLI::Option* opt, const std::string& key, T& var) const {
    if (opt != nullptr && opt->count() > 0) return;
    if (const json* v = find(key)) {
      try {
        var = v->get<T>();
      } catch (const json::exception& e) {
        throw ValidationError("config key " + key + ": " + e.what());
      }
    }
  }

 private:
  json data_ = json::object();
};

// ---------------------------------------------------------------------------
// small IO helpers

std::string read_stream(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") return read_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open input file: " + path);
  return read_stream(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << text;
  if (!out) throw ValidationError("write failed: " + path);
}

std::string output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PAULIBENCH_OUT_DIR")) {
    if (env[0] != '\0') return env;
  }
  return ".";
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

// Writes `text` to `path` (or stdout when empty); file outputs get a
// sidecar <path>.meta.json holding the effective config. File bytes are
// identical to the piped bytes, trailing newline included.
void emit(const std::string& path, const std::string& text, const json& meta) {
  std::string payload = text;
  if (!payload.empty() && payload.back() != '\n') payload += '\n';
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  write_file(path, payload);
  write_file(path + ".meta.json", meta.dump(2) + "\n");
}

std::string config_comment(const json& meta) {
  return "# config " + meta.dump() + "\n";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// shared flag plumbing

// "Z62" (letter + device qubit index) or a full device-length string with
// an optional sign token.
PauliString parse_observable(const std::string& text, std::uint32_t num_qubits) {
  if (text.empty()) throw ValidationError("empty observable");
  const char c = text[0];
  const bool compact = (c == 'I' || c == 'X' || c == 'Y' || c == 'Z') &&
                       text.size() > 1 &&
                       text.find_first_not_of("0123456789", 1) == std::string::npos;
  if (compact) {
    const unsigned long q = std::stoul(text.substr(1));
    if (q >= num_qubits)
      throw ValidationError("observable qubit " + std::to_string(q) +
                            " out of range for " + std::to_string(num_qubits) +
                            " qubits");
    Letter l = Letter::I;
    switch (c) {
      case 'I': l = Letter::I; break;
      case 'X': l = Letter::X; break;
      case 'Y': l = Letter::Y; break;
      case 'Z': l = Letter::Z; break;
    }
    return PauliString::single(num_qubits, static_cast<std::uint32_t>(q), l);
  }
  PauliString p = PauliString::parse(text);
  if (p.num_qubits() != num_qubits)
    throw ValidationError("observable has " + std::to_string(p.num_qubits()) +
                          " letters, layout has " + std::to_string(num_qubits) +
                          " qubits");
  return p;
}

QubitSubset make_subset(const DeviceLayout& layout, std::uint32_t n,
                        std::optional<std::uint32_t> anchor, Rng& rng) {
  if (n < 1 || n > layout.num_qubits())
    throw DomainError("subset size " + std::to_string(n) +
                      " out of range [1, " + std::to_string(layout.num_qubits()) +
                      "]");
  const std::uint32_t a =
      anchor ? *anchor
             : static_cast<std::uint32_t>(uniform_index(rng, layout.num_qubits()));
  if (a >= layout.num_qubits())
    throw DomainError("anchor " + std::to_string(a) + " out of range");
  return sample_connected_subset(layout, n, a, rng);
}

std::string telemetry_csv(const HardGenResult& result) {
  std::string out = "gate_index,layer,set_size,mode\n";
  for (const auto& row : result.telemetry) {
    out += std::to_string(row.gate_index);
    out += ',';
    out += std::to_string(row.step);
    out += ',';
    out += std::to_string(row.set_size);
    out += ',';
    out += row.brute ? "brute" : "random";
    out += '\n';
  }
  return out;
}

std::string growth_csv(const GrowthProfile& profile) {
  std::string out = "gate_index,layer_tag,num_terms,capped\n";
  for (const auto& p : profile.points) {
    out += std::to_string(p.gate_index);
    out += ',';
    out += layer_tag_name(p.tag);
    out += ',';
    out += std::to_string(p.num_terms);
    out += ',';
    out += p.capped ? "1" : "0";
    out += '\n';
  }
  return out;
}

std::string entropy_csv(const std::vector<EntropyStudyRow>& rows) {
  std::string out = "family,N,mean_entropy,sigma\n";
  for (const auto& r : rows) {
    out += family_name(r.family);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += format_double(r.mean_entropy);
    out += ',';
    out += format_double(r.sigma);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// subcommand state

struct GenArgs {
  std::string config;
  std::string layout = "heavy-hex-127";
  std::uint32_t n = 0;
  std::uint32_t l = 0;
  std::uint64_t seed = 0;
  std::optional<std::uint32_t> anchor;
  std::string obs;
  double theta = 0.0;
  std::string out;
  // gen-hard only
  std::uint32_t brute_layers = 1;
  std::uint64_t member_cap = std::uint64_t{1} << 20;
  std::string telemetry_out;
  // gen-ki only
  double theta_j = -kPi / 2;
  double theta_h = kPi / 4;
};

struct SimulateArgs {
  std::string config;
  std::string in;
  std::string engine;
  double threshold = 0.0;
  double eps = 0.0;
  double eps1 = 0.0;
  std::uint64_t trajectories = 4000;
  std::uint64_t noise_seed = 0;
  std::string obs;
};

struct LightconeArgs {
  std::string config;
  std::string in;
  std::string layout = "heavy-hex-127";
  std::string obs;
  bool ki = false;
  std::uint32_t l = 1;
  double theta_j = -kPi / 2;
  double theta_h = kPi / 4;
};

struct FitArgs {
  std::string config;
  std::string records;
  std::string out;
};

struct ValidateArgs {
  std::string config;
  std::string layout = "heavy-hex-127";
  std::string out_dir;
  ValidationOptions options;
};

struct EntropyArgs {
  std::string config;
  std::string layout = "heavy-hex-127";
  std::string out;
  EntropyStudyOptions options;
};

struct GrowthArgs {
  std::string config;
  std::string in;
  std::string obs;
  double threshold = 0.0;
  std::uint64_t term_cap = std::uint64_t{1} << 20;
  std::string out;
};

// ---------------------------------------------------------------------------
// subcommand bodies

int run_gen_bench(const GenArgs& a) {
  const DeviceLayout layout = DeviceLayout::load(a.layout);
  Rng rng = make_rng(a.seed);
  const QubitSubset subset = make_subset(layout, a.n, a.anchor, rng);
  const PauliString obs =
      a.obs.empty()
          ? PauliString::single(layout.num_qubits(), subset.anchor, Letter::Z)
          : parse_observable(a.obs, layout.num_qubits());
  const AnsatzSkeleton skeleton = build_ansatz(layout, subset, a.l, a.theta);
  const Circuit circuit = generate_benchmark_circuit(skeleton, obs, rng);

  json meta = {{"command", "gen-bench"},
               {"layout", a.layout},
               {"N", a.n},
               {"L", a.l},
               {"theta", a.theta},
               {"anchor", subset.anchor},
               {"observable", obs.str()},
               {"v_lc", lightcone_volume(circuit, obs)},
               {"seed", a.seed}};
  emit(a.out, circuit_to_json(circuit), meta);
  return 0;
}

int run_gen_hard(const GenArgs& a) {
  const DeviceLayout layout = DeviceLayout::load(a.layout);
  Rng rng = make_rng(a.seed);
  const QubitSubset subset = make_subset(layout, a.n, a.anchor, rng);
  const PauliString obs =
      a.obs.empty()
          ? PauliString::single(layout.num_qubits(), subset.anchor, Letter::Z)
          : parse_observable(a.obs, layout.num_qubits());
  const AnsatzSkeleton skeleton = build_ansatz(layout, subset, a.l, a.theta);
  const HardGenResult result =
      generate_hard_circuit(skeleton, obs, a.brute_layers, a.member_cap, rng);

  json meta = {{"command", "gen-hard"},
               {"layout", a.layout},
               {"N", a.n},
               {"L", a.l},
               {"theta", a.theta},
               {"brute_layers", a.brute_layers},
               {"member_cap", a.member_cap},
               {"anchor", subset.anchor},
               {"observable", obs.str()},
               {"capped", result.capped},
               {"seed", a.seed}};
  if (result.switch_gate_index)
    meta["switch_gate_index"] = *result.switch_gate_index;

  if (!a.telemetry_out.empty())
    emit(a.telemetry_out, config_comment(meta) + telemetry_csv(result), meta);
  emit(a.out, circuit_to_json(result.circuit), meta);
  return 0;
}

int run_gen_ki(const GenArgs& a) {
  const DeviceLayout layout = DeviceLayout::load(a.layout);
  Rng rng = make_rng(a.seed);
  const QubitSubset subset = make_subset(layout, a.n, a.anchor, rng);
  Circuit circuit =
      build_kicked_ising(layout, subset, a.l, a.theta_j, a.theta_h);
  if (!a.obs.empty())
    circuit = circuit.with_observable(parse_observable(a.obs, layout.num_qubits()));

  json meta = {{"command", "gen-ki"},
               {"layout", a.layout},
               {"N", a.n},
               {"L", a.l},
               {"theta_j", a.theta_j},
               {"theta_h", a.theta_h},
               {"anchor", subset.anchor},
               {"observable", circuit.observable().str()},
               {"seed", a.seed}};
  emit(a.out, circuit_to_json(circuit), meta);
  return 0;
}

int run_simulate(const SimulateArgs& a) {
  Circuit circuit = circuit_from_json(read_input(a.in));
  if (!a.obs.empty())
    circuit = circuit.with_observable(
        parse_observable(a.obs, circuit.num_device_qubits()));

  NoiseModel noise{a.eps, a.eps1};
  noise.validate();

  if (noise.enabled()) {
    if (a.trajectories < 1)
      throw DomainError("trajectories must be >= 1");
    NoisyEstimate est;
    if (a.engine == "stabilizer") {
      est = clifford_noisy_expectation(circuit, noise, a.trajectories,
                                       a.noise_seed);
    } else if (a.engine == "dense") {
      est = dense_noisy_expectation(circuit, noise, a.trajectories,
                                    a.noise_seed);
    } else if (a.engine == "spd") {
      throw DomainError("noise is not supported on the spd engine");
    } else {
      throw ValidationError("unknown engine: " + a.engine);
    }
    std::cout << format_double(est.mean) << ' ' << format_double(est.std_error)
              << '\n';
    return 0;
  }

  double value = 0.0;
  if (a.engine == "stabilizer") {
    value = clifford_expectation(circuit);
  } else if (a.engine == "dense") {
    value = dense_expectation(circuit);
  } else if (a.engine == "spd") {
    value = expectation_spd(circuit, circuit.observable(), a.threshold);
  } else {
    throw ValidationError("unknown engine: " + a.engine);
  }
  std::cout << format_double(value) << '\n';
  return 0;
}

int run_lightcone(const LightconeArgs& a) {
  std::optional<Circuit> circuit;
  std::optional<PauliString> obs;
  if (a.ki) {
    const DeviceLayout layout = DeviceLayout::load(a.layout);
    if (a.obs.empty())
      throw ValidationError("--obs is required with --ki");
    obs = parse_observable(a.obs, layout.num_qubits());
    std::vector<std::uint32_t> all(layout.num_qubits());
    std::iota(all.begin(), all.end(), 0u);
    const std::uint32_t anchor =
        obs->is_identity() ? 0u : obs->support().front();
    circuit = build_kicked_ising(layout, QubitSubset{all, anchor}, a.l,
                                 a.theta_j, a.theta_h);
    circuit = circuit->with_observable(*obs);
  } else {
    circuit = circuit_from_json(read_input(a.in));
    obs = a.obs.empty()
              ? circuit->observable()
              : parse_observable(a.obs, circuit->num_device_qubits());
  }
  std::cout << "v_lc " << lightcone_volume(*circuit, *obs) << '\n'
            << "two_qubit_gates " << circuit->num_two_qubit_gates() << '\n';
  return 0;
}

int run_fit(const FitArgs& a) {
  const std::vector<FidelityRecord> records =
      records_from_csv(read_input(a.records));
  const FitResult fit = fit_quadratic(records);
  json meta = {{"command", "fit"},
               {"records", a.records.empty() ? std::string("-") : a.records},
               {"num_records", records.size()}};
  emit(a.out, fit_to_json(fit), meta);
  return 0;
}

json validation_config_json(const ValidateArgs& a) {
  const ValidationOptions& o = a.options;
  return json{{"command", "validate"},
              {"layout", a.layout},
              {"eps", o.eps},
              {"bench_N", o.bench_n},
              {"bench_L_max", o.bench_l_max},
              {"bench_per_cell", o.bench_per_cell},
              {"bench_trajectories", o.bench_trajectories},
              {"ki_records", o.app_records},
              {"ki_N_max", o.app_n_max},
              {"ki_L_max", o.app_l_max},
              {"ki_theta_j", o.app_theta_j},
              {"ki_theta_h_max", o.app_theta_h_max},
              {"ki_trajectories", o.app_trajectories},
              {"seed", o.seed}};
}

int run_validate(const ValidateArgs& a) {
  const DeviceLayout layout = DeviceLayout::load(a.layout);
  const ValidationResult result = run_fidelity_validation(layout, a.options);
  const json meta = validation_config_json(a);

  const std::string dir = output_dir(a.out_dir);
  emit(join_path(dir, "benchmark_records.csv"),
       config_comment(meta) + records_to_csv(result.benchmark_records), meta);
  emit(join_path(dir, "application_records.csv"),
       config_comment(meta) + records_to_csv(result.application_records), meta);
  emit(join_path(dir, "fit.json"), fit_to_json(result.fit), meta);

  json summary = {{"config", meta},
                  {"benchmark_records", result.benchmark_records.size()},
                  {"application_records", result.application_records.size()},
                  {"inside", result.inside},
                  {"evaluated", result.evaluated},
                  {"flagged", result.flagged},
                  {"coverage", result.coverage}};
  write_file(join_path(dir, "validation.json"), summary.dump(2) + "\n");

  std::cout << "benchmark records: " << result.benchmark_records.size() << '\n'
            << "application records: " << result.application_records.size()
            << " (" << result.flagged << " flagged)\n"
            << "coverage: " << format_double(result.coverage) << " ("
            << result.inside << "/" << result.evaluated
            << " inside 3 sigma)\n";
  return 0;
}

int run_entropy_study(const EntropyArgs& a) {
  const DeviceLayout layout = DeviceLayout::load(a.layout);
  const std::vector<EntropyStudyRow> rows = entropy_study(layout, a.options);

  const EntropyStudyOptions& o = a.options;
  json meta = {{"command", "entropy-study"},
               {"layout", a.layout},
               {"N", o.n_values},
               {"L", o.num_steps},
               {"instances", o.instances},
               {"hard_brute_layers", o.hard_brute_layers},
               {"hard_member_cap", o.hard_member_cap},
               {"hard_theta", o.hard_theta},
               {"ki_theta_j", o.ki_theta_j},
               {"ki_theta_h", o.ki_theta_h},
               {"seed", o.seed}};
  const std::string body = entropy_csv(rows);
  if (a.out.empty() || a.out == "-")
    emit(a.out, body, meta);
  else
    emit(a.out, config_comment(meta) + body, meta);
  return 0;
}

int run_growth_profile(const GrowthArgs& a) {
  Circuit circuit = circuit_from_json(read_input(a.in));
  const PauliString obs =
      a.obs.empty() ? circuit.observable()
                    : parse_observable(a.obs, circuit.num_device_qubits());
  const GrowthProfile profile =
      term_growth_profile(circuit, obs, a.threshold, a.term_cap);

  json meta = {{"command", "growth-profile"},
               {"observable", obs.str()},
               {"threshold", a.threshold},
               {"term_cap", a.term_cap},
               {"capped", profile.capped}};
  const std::string body = growth_csv(profile);
  if (a.out.empty() || a.out == "-")
    emit(a.out, body, meta);
  else
    emit(a.out, config_comment(meta) + body, meta);
  return 0;
}

// ---------------------------------------------------------------------------
// wiring

void add_config_flag(CLI::App* cmd, std::string& var) {
  cmd->add_option("--config", var,
                  "JSON config file; flags given on the command line win");
}

ConfigOverlay load_overlay(const std::string& path) {
  ConfigOverlay overlay;
  if (!path.empty()) overlay.load(path);
  return overlay;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pauli-rotation circuit benchmarking toolkit"};
  app.require_subcommand(1);

  GenArgs bench_args;
  bench_args.theta = kPi / 2;
  GenArgs hard_args;
  hard_args.theta = kPi / 4;
  GenArgs ki_args;
  SimulateArgs sim_args;
  LightconeArgs lc_args;
  FitArgs fit_args;
  ValidateArgs val_args;
  EntropyArgs ent_args;
  GrowthArgs growth_args;

  // gen-bench
  CLI::App* gen_bench =
      app.add_subcommand("gen-bench", "Generate a Clifford benchmark circuit");
  add_config_flag(gen_bench, bench_args.config);
  gen_bench->add_option("--layout", bench_args.layout, "Layout name or file");
  auto* gb_n = gen_bench->add_option("--N", bench_args.n, "Subset size");
  gen_bench->add_option("--L", bench_args.l, "Ansatz steps")->required();
  gen_bench->add_option("--seed", bench_args.seed, "Master seed");
  gen_bench->add_option("--anchor", bench_args.anchor,
                        "Anchor qubit (default: drawn from the seed)");
  gen_bench->add_option("--obs", bench_args.obs,
                        "Observable, e.g. Z62 or a full letter string "
                        "(default: Z on the anchor)");
  gen_bench->add_option("--theta", bench_args.theta,
                        "Rotation angle (must stay pi/2)");
  gen_bench->add_option("-o,--out", bench_args.out, "Output circuit JSON path");
  gb_n->required();

  // gen-hard
  CLI::App* gen_hard = app.add_subcommand(
      "gen-hard", "Generate a classically hard circuit via reverse brute-force");
  add_config_flag(gen_hard, hard_args.config);
  gen_hard->add_option("--layout", hard_args.layout, "Layout name or file");
  gen_hard->add_option("--N", hard_args.n, "Subset size")->required();
  gen_hard->add_option("--L", hard_args.l, "Ansatz steps")->required();
  gen_hard->add_option("--seed", hard_args.seed, "Master seed");
  gen_hard->add_option("--anchor", hard_args.anchor,
                       "Anchor qubit (default: drawn from the seed)");
  gen_hard->add_option("--obs", hard_args.obs,
                       "Observable (default: Z on the anchor)");
  gen_hard->add_option("--theta", hard_args.theta, "Rotation angle");
  gen_hard->add_option("--brute-layers", hard_args.brute_layers,
                       "Trailing steps to brute-force");
  gen_hard->add_option("--member-cap", hard_args.member_cap,
                       "Anticommutation set size cap");
  gen_hard->add_option("--telemetry", hard_args.telemetry_out,
                       "Write per-gate set-size telemetry CSV here");
  gen_hard->add_option("-o,--out", hard_args.out, "Output circuit JSON path");

  // gen-ki
  CLI::App* gen_ki = app.add_subcommand(
      "gen-ki", "Generate a kicked-Ising application circuit");
  add_config_flag(gen_ki, ki_args.config);
  gen_ki->add_option("--layout", ki_args.layout, "Layout name or file");
  gen_ki->add_option("--N", ki_args.n, "Subset size")->required();
  gen_ki->add_option("--L", ki_args.l, "Trotter steps")->required();
  gen_ki->add_option("--seed", ki_args.seed, "Master seed");
  gen_ki->add_option("--anchor", ki_args.anchor,
                     "Anchor qubit (default: drawn from the seed)");
  gen_ki->add_option("--obs", ki_args.obs,
                     "Observable (default: Z on the anchor)");
  gen_ki->add_option("--theta-j", ki_args.theta_j, "ZZ angle (R convention)");
  gen_ki->add_option("--theta-h", ki_args.theta_h, "X angle (R convention)");
  gen_ki->add_option("-o,--out", ki_args.out, "Output circuit JSON path");

  // simulate
  CLI::App* simulate =
      app.add_subcommand("simulate", "Evaluate a circuit's observable");
  add_config_flag(simulate, sim_args.config);
  simulate->add_option("--in", sim_args.in,
                       "Circuit JSON path (default: stdin)");
  simulate->add_option("--engine", sim_args.engine,
                       "stabilizer | dense | spd")
      ->required();
  simulate->add_option("--threshold", sim_args.threshold,
                       "SPD truncation threshold");
  simulate->add_option("--eps", sim_args.eps, "Two-qubit depolarizing rate");
  simulate->add_option("--eps1", sim_args.eps1,
                       "Single-qubit depolarizing rate");
  simulate->add_option("--trajectories", sim_args.trajectories,
                       "Noise trajectories");
  simulate->add_option("--noise-seed", sim_args.noise_seed,
                       "Noise master seed");
  simulate->add_option("--obs", sim_args.obs, "Override the observable");

  // lightcone
  CLI::App* lightcone = app.add_subcommand(
      "lightcone", "Causal-cone gate count of an observable");
  add_config_flag(lightcone, lc_args.config);
  lightcone->add_option("--in", lc_args.in,
                        "Circuit JSON path (default: stdin)");
  lightcone->add_option("--layout", lc_args.layout,
                        "Layout for --ki circuits");
  lightcone->add_option("--obs", lc_args.obs,
                        "Observable, e.g. Z62 (required with --ki)");
  lightcone->add_flag("--ki", lc_args.ki,
                      "Build a full-device kicked-Ising circuit instead of "
                      "reading one");
  lightcone->add_option("--L", lc_args.l, "Trotter steps for --ki");
  lightcone->add_option("--theta-j", lc_args.theta_j, "ZZ angle for --ki");
  lightcone->add_option("--theta-h", lc_args.theta_h, "X angle for --ki");

  // fit
  CLI::App* fit = app.add_subcommand(
      "fit", "Quadratic effective-fidelity fit over a records CSV");
  add_config_flag(fit, fit_args.config);
  fit->add_option("--records", fit_args.records,
                  "Records CSV path (default: stdin)");
  fit->add_option("-o,--out", fit_args.out, "Output fit JSON path");

  // validate
  CLI::App* validate = app.add_subcommand(
      "validate",
      "Benchmark-predicts-application coverage run (fit + 3 sigma bands)");
  add_config_flag(validate, val_args.config);
  validate->add_option("--layout", val_args.layout, "Layout name or file");
  validate->add_option("--eps", val_args.options.eps,
                       "Two-qubit depolarizing rate");
  validate->add_option("--bench-N", val_args.options.bench_n,
                       "Benchmark subset sizes")
      ->delimiter(',');
  validate->add_option("--bench-L-max", val_args.options.bench_l_max,
                       "Benchmark steps sweep 1..max");
  validate->add_option("--per-cell", val_args.options.bench_per_cell,
                       "Benchmark circuits per (N, L) cell");
  validate->add_option("--bench-trajectories",
                       val_args.options.bench_trajectories,
                       "Trajectories per benchmark record");
  validate->add_option("--ki-records", val_args.options.app_records,
                       "Kicked-Ising record count");
  validate->add_option("--ki-N-max", val_args.options.app_n_max,
                       "Kicked-Ising N drawn from {2..max}");
  validate->add_option("--ki-L-max", val_args.options.app_l_max,
                       "Kicked-Ising L drawn from {1..max}");
  validate->add_option("--ki-trajectories", val_args.options.app_trajectories,
                       "Trajectories per kicked-Ising record");
  validate->add_option("--ki-theta-h-max", val_args.options.app_theta_h_max,
                       "theta_h drawn from U(0, max)");
  validate->add_option("--seed", val_args.options.seed, "Master seed");
  validate->add_option("-o,--out-dir", val_args.out_dir,
                       "Output directory (default: $PAULIBENCH_OUT_DIR or .)");

  // entropy-study
  CLI::App* entropy = app.add_subcommand(
      "entropy-study", "Pair-entropy comparison of hard vs kicked-Ising");
  add_config_flag(entropy, ent_args.config);
  entropy->add_option("--layout", ent_args.layout, "Layout name or file");
  entropy->add_option("--N", ent_args.options.n_values, "Subset sizes")
      ->delimiter(',');
  entropy->add_option("--L", ent_args.options.num_steps, "Ansatz steps");
  entropy->add_option("--instances", ent_args.options.instances,
                      "Instances per N");
  entropy->add_option("--brute-layers", ent_args.options.hard_brute_layers,
                      "Brute-forced steps for the hard family");
  entropy->add_option("--member-cap", ent_args.options.hard_member_cap,
                      "Set size cap for the hard family");
  entropy->add_option("--theta", ent_args.options.hard_theta,
                      "Hard-family rotation angle");
  entropy->add_option("--theta-j", ent_args.options.ki_theta_j,
                      "Kicked-Ising ZZ angle");
  entropy->add_option("--theta-h", ent_args.options.ki_theta_h,
                      "Kicked-Ising X angle");
  entropy->add_option("--seed", ent_args.options.seed, "Master seed");
  entropy->add_option("-o,--out", ent_args.out, "Output CSV path");

  // growth-profile
  CLI::App* growth = app.add_subcommand(
      "growth-profile", "Per-gate term growth of the Heisenberg evolution");
  add_config_flag(growth, growth_args.config);
  growth->add_option("--in", growth_args.in,
                     "Circuit JSON path (default: stdin)");
  growth->add_option("--obs", growth_args.obs, "Override the observable");
  growth->add_option("--threshold", growth_args.threshold,
                     "Truncation threshold");
  growth->add_option("--term-cap", growth_args.term_cap,
                     "Stop once the sum exceeds this many terms");
  growth->add_option("-o,--out", growth_args.out, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen_bench->parsed()) {
      const ConfigOverlay cfg = load_overlay(bench_args.config);
      cfg.apply(gen_bench->get_option("--layout"), "layout", bench_args.layout);
      cfg.apply(gen_bench->get_option("--seed"), "seed", bench_args.seed);
      cfg.apply(gen_bench->get_option("--theta"), "theta", bench_args.theta);
      cfg.apply(gen_bench->get_option("--obs"), "observable", bench_args.obs);
      return run_gen_bench(bench_args);
    }
    if (gen_hard->parsed()) {
      const ConfigOverlay cfg = load_overlay(hard_args.config);
      cfg.apply(gen_hard->get_option("--layout"), "layout", hard_args.layout);
      cfg.apply(gen_hard->get_option("--seed"), "seed", hard_args.seed);
      cfg.apply(gen_hard->get_option("--theta"), "theta", hard_args.theta);
      cfg.apply(gen_hard->get_option("--obs"), "observable", hard_args.obs);
      cfg.apply(gen_hard->get_option("--brute-layers"), "brute_layers",
                hard_args.brute_layers);
      cfg.apply(gen_hard->get_option("--member-cap"), "member_cap",
                hard_args.member_cap);
      return run_gen_hard(hard_args);
    }
    if (gen_ki->parsed()) {
      const ConfigOverlay cfg = load_overlay(ki_args.config);
      cfg.apply(gen_ki->get_option("--layout"), "layout", ki_args.layout);
      cfg.apply(gen_ki->get_option("--seed"), "seed", ki_args.seed);
      cfg.apply(gen_ki->get_option("--theta-j"), "theta_j", ki_args.theta_j);
      cfg.apply(gen_ki->get_option("--theta-h"), "theta_h", ki_args.theta_h);
      cfg.apply(gen_ki->get_option("--obs"), "observable", ki_args.obs);
      return run_gen_ki(ki_args);
    }
    if (simulate->parsed()) {
      const ConfigOverlay cfg = load_overlay(sim_args.config);
      cfg.apply(simulate->get_option("--engine"), "engine", sim_args.engine);
      cfg.apply(simulate->get_option("--threshold"), "threshold",
                sim_args.threshold);
      cfg.apply(simulate->get_option("--eps"), "noise.two_qubit_eps",
                sim_args.eps);
      cfg.apply(simulate->get_option("--eps1"), "noise.single_qubit_eps",
                sim_args.eps1);
      cfg.apply(simulate->get_option("--noise-seed"), "noise.seed",
                sim_args.noise_seed);
      cfg.apply(simulate->get_option("--trajectories"), "trajectories",
                sim_args.trajectories);
      return run_simulate(sim_args);
    }
    if (lightcone->parsed()) {
      const ConfigOverlay cfg = load_overlay(lc_args.config);
      cfg.apply(lightcone->get_option("--layout"), "layout", lc_args.layout);
      cfg.apply(lightcone->get_option("--obs"), "observable", lc_args.obs);
      return run_lightcone(lc_args);
    }
    if (fit->parsed()) {
      return run_fit(fit_args);
    }
    if (validate->parsed()) {
      const ConfigOverlay cfg = load_overlay(val_args.config);
      ValidationOptions& o = val_args.options;
      cfg.apply(validate->get_option("--layout"), "layout", val_args.layout);
      cfg.apply(validate->get_option("--eps"), "noise.two_qubit_eps", o.eps);
      cfg.apply(validate->get_option("--eps"), "eps", o.eps);
      cfg.apply(validate->get_option("--bench-N"), "bench_N", o.bench_n);
      cfg.apply(validate->get_option("--bench-L-max"), "bench_L_max",
                o.bench_l_max);
      cfg.apply(validate->get_option("--per-cell"), "bench_per_cell",
                o.bench_per_cell);
      cfg.apply(validate->get_option("--bench-trajectories"),
                "bench_trajectories", o.bench_trajectories);
      cfg.apply(validate->get_option("--ki-records"), "ki_records",
                o.app_records);
      cfg.apply(validate->get_option("--ki-N-max"), "ki_N_max", o.app_n_max);
      cfg.apply(validate->get_option("--ki-L-max"), "ki_L_max", o.app_l_max);
      cfg.apply(validate->get_option("--ki-trajectories"), "ki_trajectories",
                o.app_trajectories);
      cfg.apply(validate->get_option("--ki-theta-h-max"), "ki_theta_h_max",
                o.app_theta_h_max);
      cfg.apply(validate->get_option("--seed"), "seed", o.seed);
      cfg.apply(validate->get_option("--out-dir"), "out_dir", val_args.out_dir);
      return run_validate(val_args);
    }
    if (entropy->parsed()) {
      const ConfigOverlay cfg = load_overlay(ent_args.config);
      EntropyStudyOptions& o = ent_args.options;
      cfg.apply(entropy->get_option("--layout"), "layout", ent_args.layout);
      cfg.apply(entropy->get_option("--N"), "N", o.n_values);
      cfg.apply(entropy->get_option("--L"), "L", o.num_steps);
      cfg.apply(entropy->get_option("--instances"), "instances", o.instances);
      cfg.apply(entropy->get_option("--seed"), "seed", o.seed);
      return run_entropy_study(ent_args);
    }
    if (growth->parsed()) {
      const ConfigOverlay cfg = load_overlay(growth_args.config);
      cfg.apply(growth->get_option("--threshold"), "threshold",
                growth_args.threshold);
      cfg.apply(growth->get_option("--term-cap"), "term_cap",
                growth_args.term_cap);
      cfg.apply(growth->get_option("--obs"), "observable", growth_args.obs);
      return run_growth_profile(growth_args);
    }
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const EngineMismatchError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const FitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
