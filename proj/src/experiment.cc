#include "zstates/experiment.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "zstates/discrimination.h"
#include "zstates/zbasis.h"

namespace zstates {

namespace {

Json noise_to_json(const NoiseModel& m) {
  return {{"p1", m.p1}, {"p2", m.p2}, {"p_readout", m.p_readout}};
}

NoiseModel noise_from_json(const Json& j) {
  NoiseModel m;
  if (j.is_string()) return NoiseModel::parse(j.get<std::string>());
  m.p1 = j.value("p1", 0.0);
  m.p2 = j.value("p2", 0.0);
  m.p_readout = j.value("p_readout", 0.0);
  m.validate();
  return m;
}

Json fidelity_pair(const FidelityResult& sqrt_f, const FidelityResult& squared_f) {
  // NaN serializes as null.
  return {{"sqrt", sqrt_f.value}, {"squared", squared_f.value}, {"unclamped", sqrt_f.unclamped}};
}

std::string zstate_label(int n, std::uint64_t k) {
  return "zstate:" + std::to_string(n) + ":" + std::to_string(k);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (command != "discriminate" && command != "tomo") {
    throw std::invalid_argument("unknown experiment command '" + command + "'");
  }
  if (n < 2) throw std::invalid_argument("--n must be >= 2");
  if (command == "discriminate" && n > 10) throw std::invalid_argument("--n must be <= 10");
  if (command == "tomo" && n > 4) throw std::invalid_argument("tomography supports --n <= 4");
  if (!noise.is_zero() && 2 * n > kMaxDensityQubits) {
    throw std::invalid_argument("noisy runs support --n <= " + std::to_string(kMaxDensityQubits / 2));
  }
  ZStateIndex::checked(n, k);
  if (shots == 0) throw std::invalid_argument("--shots must be >= 1");
  if (target != "state" && target != "ancilla") {
    throw std::invalid_argument("--target must be state or ancilla");
  }
  noise.validate();
}

Json ExperimentConfig::to_json() const {
  return {{"command", command}, {"n", n},          {"k", k},
          {"shots", shots},     {"seed", seed},    {"noise", noise_to_json(noise)},
          {"tomography", tomography}, {"target", target}, {"out", out}, {"csv", csv}};
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig c;
  c.command = j.value("command", std::string{});
  c.n = j.value("n", c.n);
  c.k = j.value("k", c.k);
  c.shots = j.value("shots", c.shots);
  c.seed = j.value("seed", c.seed);
  if (j.contains("noise")) c.noise = noise_from_json(j.at("noise"));
  c.tomography = j.value("tomography", c.tomography);
  c.target = j.value("target", c.target);
  c.out = j.value("out", c.out);
  c.csv = j.value("csv", c.csv);
  return c;
}

Json run_discriminate(const ExperimentConfig& config) {
  config.validate();
  const int n = config.n;
  const auto dc = build_discrimination_circuit(n);
  const QuantumCircuit circuit = prepare_and_discriminate(n, config.k).unitary_part();
  const Statevector input = zstate_vector(n, config.k);
  const auto readout = dc.readout_qubits();

  CountsTable counts;
  double post_fidelity = 0.0;
  if (config.noise.is_zero()) {
    Statevector full = run_circuit(Statevector(2 * n), circuit);
    counts = sample_counts(full, readout, config.shots, config.seed);
    post_fidelity = std::min(1.0, state_overlap(input, discriminate(input, config.seed).post_state));
  } else {
    DensityMatrix rho = evolve_noisy(DensityMatrix(2 * n), circuit, config.noise);
    counts = sample_density_counts(rho, readout, config.shots, config.noise.p_readout, config.seed);
    DensityMatrix data = rho.partial_trace(dc.data_qubits());
    post_fidelity = fidelity_pure(input, data, FidelityConvention::Squared).value;
  }
  const std::string modal = counts.mode();
  const auto decoded = decode_ancilla(modal, n);
  return {{"schema", "zstates.discriminate.v1"},
          {"config", config.to_json()},
          {"counts", counts_to_json(counts)},
          {"ancilla_bits", modal},
          {"decoded_index", decoded.k},
          {"correct", decoded.k == config.k},
          {"post_state_fidelity", post_fidelity}};
}

TomographyRun run_tomography(const ExperimentConfig& config) {
  config.validate();
  const auto target =
      config.target == "state" ? TomographyTarget::State : TomographyTarget::Ancilla;
  auto report = discrimination_tomography(config.n, config.k, target, config.shots, config.noise,
                                          config.seed);
  Json counts = Json::object();
  for (const auto& [setting, table] : report.counts) counts[setting] = counts_to_json(table);
  const std::string label = target == TomographyTarget::State
                                ? zstate_label(config.n, config.k)
                                : "ancilla:" + expected_readout(config.n, config.k);
  Json doc = {{"schema", "zstates.tomography.v1"},
              {"config", config.to_json()},
              {"target", config.target},
              {"target_state", label},
              {"raw", density_to_json(report.raw, true)},
              {"physical", density_to_json(report.physical, true)},
              {"fidelity",
               {{"raw", fidelity_pair(report.raw_sqrt, report.raw_squared)},
                {"physical", fidelity_pair(report.physical_sqrt, report.physical_squared)}}},
              {"counts", std::move(counts)}};
  return {std::move(report), std::move(doc)};
}

ZStateIndex parse_zstate_target(const std::string& text) {
  const std::string prefix = "zstate:";
  auto fail = [&] {
    throw std::invalid_argument("target '" + text + "' must look like zstate:N:K");
  };
  if (text.rfind(prefix, 0) != 0) fail();
  auto rest = text.substr(prefix.size());
  auto colon = rest.find(':');
  if (colon == std::string::npos) fail();
  std::size_t used_n = 0, used_k = 0;
  int n = 0;
  unsigned long long k = 0;
  try {
    n = std::stoi(rest.substr(0, colon), &used_n);
    k = std::stoull(rest.substr(colon + 1), &used_k);
  } catch (const std::exception&) {
    fail();
  }
  if (used_n != colon || used_k != rest.size() - colon - 1) fail();
  return ZStateIndex::checked(n, k);
}

Json fidelity_document(const DensityMatrix& rho, const ZStateIndex& target, bool reversed,
                       FidelityConvention convention, const FidelityResult& result) {
  return {{"schema", "zstates.fidelity.v1"},
          {"target", zstate_label(target.n_qubits, target.k)},
          {"reversed", reversed},
          {"convention", convention == FidelityConvention::Sqrt ? "sqrt" : "squared"},
          {"input_physical", !rho.raw()},
          {"unclamped", result.unclamped},
          {"value", result.value}};
}

Json VerifyReport::to_json() const {
  Json entries_json = Json::array();
  for (const auto& e : entries) {
    entries_json.push_back({{"k", e.k},
                            {"ancilla_bits", e.ancilla_bits},
                            {"outcome_probability", e.outcome_probability},
                            {"decoded", e.decoded},
                            {"post_fidelity", e.post_fidelity},
                            {"repeat_consistent", e.repeat_consistent}});
  }
  return {{"schema", "zstates.verify.v1"},
          {"n", n_qubits},
          {"basis",
           {{"max_off_diagonal", basis.max_off_diagonal},
            {"max_norm_deviation", basis.max_norm_deviation}}},
          {"distinct_syndromes", distinct_syndromes},
          {"checks",
           {{"orthonormal", basis_ok},
            {"deterministic", deterministic},
            {"non_destructive", non_destructive},
            {"decoding", decoding_ok}}},
          {"passed", passed()},
          {"entries", std::move(entries_json)}};
}

VerifyReport run_verify(int n, Seed seed) {
  if (n < 2 || n > 8) throw std::invalid_argument("verify supports N in [2, 8]");
  VerifyReport report;
  report.n_qubits = n;
  report.basis = verify_basis(n);
  report.basis_ok = report.basis.passed(1e-12);
  report.deterministic = report.non_destructive = report.decoding_ok = true;

  std::set<std::string> syndromes;
  std::mt19937_64 rng(seed);
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
    const Statevector input = zstate_vector(n, k);
    auto dist = ancilla_distribution(input);
    std::size_t best = 0;
    for (std::size_t o = 1; o < dist.size(); ++o) {
      if (dist[o] > dist[best]) best = o;
    }
    VerifyEntry e;
    e.k = k;
    e.ancilla_bits = outcome_to_bits(best, n);
    e.outcome_probability = dist[best];
    auto first = discriminate(input, rng);
    auto second = discriminate(first.post_state, rng);
    e.decoded = first.index.k;
    e.post_fidelity = std::min(state_overlap(input, first.post_state),
                               state_overlap(input, second.post_state));
    e.repeat_consistent = first.index == second.index && first.ancilla_bits == e.ancilla_bits;
    syndromes.insert(e.ancilla_bits);

    report.deterministic &= e.outcome_probability >= 1.0 - 1e-10 && e.repeat_consistent;
    report.non_destructive &= e.post_fidelity >= 1.0 - 1e-10;
    report.decoding_ok &= e.decoded == k && decode_ancilla(e.ancilla_bits, n).k == k;
    report.entries.push_back(std::move(e));
  }
  report.distinct_syndromes = syndromes.size();
  report.deterministic &= report.distinct_syndromes == (std::size_t{1} << n);
  return report;
}

}  // namespace zstates
