// Command-line front end: circuit generation, discrimination runs,
// tomography, fidelity of stored matrices and self-verification.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "zstates/discrimination.h"
#include "zstates/experiment.h"
#include "zstates/io.h"
#include "zstates/qasm.h"
#include "zstates/zbasis.h"

namespace {

using namespace zstates;

constexpr int kUsageError = 2;
constexpr int kFailure = 1;

Seed default_seed() {
  if (const char* env = std::getenv(kSeedEnvVar)) {
    try {
      std::size_t used = 0;
      Seed s = std::stoull(env, &used);
      if (used == std::string(env).size()) return s;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string(kSeedEnvVar) + " must be an unsigned integer");
  }
  return 1;
}

void emit(const Json& doc, const std::string& out) {
  if (out.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    write_json(out, doc);
  }
}

struct RunOptions {
  int n = 2;
  std::uint64_t k = 0;
  std::uint64_t shots = 8192;
  Seed seed = 1;
  std::string noise;
  std::string target = "state";
  std::string out;
  std::string csv;
  std::string config;
};

struct Flags {
  CLI::Option* n = nullptr;
  CLI::Option* k = nullptr;
  CLI::Option* shots = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* noise = nullptr;
  CLI::Option* target = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* csv = nullptr;
};

Flags add_run_flags(CLI::App* cmd, RunOptions& o, bool tomo) {
  Flags f;
  f.n = cmd->add_option("--n", o.n, "Number of data qubits N");
  f.k = cmd->add_option("--k", o.k, "Z-state index k in [0, 2^N)");
  f.shots = cmd->add_option("--shots", o.shots, tomo ? "Shots per setting" : "Shots");
  f.seed = cmd->add_option("--seed", o.seed, std::string("RNG seed (default: $") + kSeedEnvVar + " or 1)");
  f.noise = cmd->add_option("--noise", o.noise, "Noise spec depol:<p1>,<p2>;readout:<p>");
  f.out = cmd->add_option("--out", o.out, "Output JSON file (stdout if omitted)");
  cmd->add_option("--config", o.config, "ExperimentConfig JSON; flags override its fields")
      ->check(CLI::ExistingFile);
  if (tomo) {
    f.target = cmd->add_option("--target", o.target, "Reconstruct the data state or the ancillas")
                   ->check(CLI::IsMember({"state", "ancilla"}));
    f.csv = cmd->add_option("--csv", o.csv, "Density-matrix bar-plot data as CSV");
  }
  return f;
}

ExperimentConfig build_config(const std::string& command, const RunOptions& o, const Flags& f) {
  ExperimentConfig c;
  if (!o.config.empty()) c = ExperimentConfig::from_json(read_json(o.config));
  c.command = command;
  if (o.config.empty()) c.seed = default_seed();
  if (f.n->count()) c.n = o.n;
  if (f.k->count()) c.k = o.k;
  if (f.shots->count()) c.shots = o.shots;
  if (f.seed->count()) c.seed = o.seed;
  if (f.noise->count()) c.noise = NoiseModel::parse(o.noise);
  if (f.out->count()) c.out = o.out;
  if (f.target && f.target->count()) c.target = o.target;
  if (f.csv && f.csv->count()) c.csv = o.csv;
  c.tomography = command == "tomo";
  c.validate();
  return c;
}

int run_gen(int n, std::uint64_t k, bool with_discrimination, const std::string& out) {
  ZStateIndex::checked(n, k);
  QuantumCircuit c = with_discrimination ? prepare_and_discriminate(n, k) : zstate_circuit(n, k);
  std::string text = emit_qasm(c);
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text(out, text);
  }
  return 0;
}

int run_discriminate_cmd(const ExperimentConfig& c) {
  Json doc = run_discriminate(c);
  emit(doc, c.out);
  if (!c.out.empty()) {
    std::cout << "decoded index: " << doc["decoded_index"] << "\n"
              << "ancilla bits: " << doc["ancilla_bits"].get<std::string>() << " ("
              << doc["counts"]["counts"][doc["ancilla_bits"].get<std::string>()] << "/"
              << c.shots << ")\n"
              << "post-state fidelity: " << doc["post_state_fidelity"] << "\n";
  }
  return 0;
}

int run_tomo_cmd(const ExperimentConfig& c) {
  auto run = run_tomography(c);
  emit(run.document, c.out);
  if (!c.csv.empty()) {
    write_text(c.csv, std::string(kDensityCsvHeader) + density_csv_rows(run.report.raw, "raw") +
                          density_csv_rows(run.report.physical, "physical"));
  }
  if (!c.out.empty()) {
    const auto& f = run.document["fidelity"];
    std::cout << "target: " << run.document["target_state"].get<std::string>() << "\n"
              << "fidelity (physical): sqrt " << f["physical"]["sqrt"] << ", squared "
              << f["physical"]["squared"] << "\n"
              << "fidelity (raw): sqrt " << f["raw"]["sqrt"] << ", squared " << f["raw"]["squared"]
              << "\n";
  }
  return 0;
}

int run_fidelity_cmd(const std::string& rho_path, const std::string& target, bool reversed,
                     const std::string& convention, const std::string& out) {
  ZStateIndex index = parse_zstate_target(target);
  DensityMatrix rho = load_density_matrix(rho_path);
  Statevector psi = zstate_vector(index.n_qubits, index.k);
  if (reversed) psi = psi.reversed_qubits();
  auto conv = convention == "sqrt" ? FidelityConvention::Sqrt : FidelityConvention::Squared;
  auto result = fidelity_pure(psi, rho, conv);
  Json doc = fidelity_document(rho, index, reversed, conv, result);
  if (!out.empty()) write_json(out, doc);
  std::cout << Json(result.value).dump() << "\n";
  return 0;
}

int run_verify_cmd(int n, const std::string& out) {
  VerifyReport report = run_verify(n, default_seed());
  if (!out.empty()) write_json(out, report.to_json());
  std::cout << "N = " << n << "\n"
            << "orthonormality: max off-diagonal " << report.basis.max_off_diagonal
            << ", max norm deviation " << report.basis.max_norm_deviation
            << (report.basis_ok ? "  ok" : "  FAIL") << "\n";
  for (const auto& e : report.entries) {
    std::cout << "  k=" << e.k << "  ancilla " << e.ancilla_bits << "  p=" << e.outcome_probability
              << "  decoded " << e.decoded << "  post fidelity " << e.post_fidelity << "\n";
  }
  std::cout << "distinct syndromes: " << report.distinct_syndromes << "\n"
            << "determinism: " << (report.deterministic ? "ok" : "FAIL") << "\n"
            << "non-destructiveness: " << (report.non_destructive ? "ok" : "FAIL") << "\n"
            << "decoding: " << (report.decoding_ok ? "ok" : "FAIL") << "\n"
            << (report.passed() ? "PASSED" : "FAILED") << "\n";
  return report.passed() ? 0 : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cluster/Z-state construction, non-destructive discrimination and tomography"};
  app.require_subcommand(1);

  int gen_n = 2;
  std::uint64_t gen_k = 0;
  bool gen_discriminate = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write OpenQASM for a Z-state preparation circuit");
  gen->add_option("--n", gen_n, "Number of data qubits N")->required();
  gen->add_option("--k", gen_k, "Z-state index k")->required();
  gen->add_flag("--discriminate", gen_discriminate, "Append the discrimination circuit");
  gen->add_option("--out", gen_out, "Output .qasm file (stdout if omitted)");

  RunOptions disc_opts;
  auto* disc = app.add_subcommand("discriminate", "Prepare, discriminate and decode a Z-state");
  Flags disc_flags = add_run_flags(disc, disc_opts, false);

  RunOptions tomo_opts;
  auto* tomo = app.add_subcommand("tomo", "Tomography of the data qubits or the ancillas");
  Flags tomo_flags = add_run_flags(tomo, tomo_opts, true);

  std::string rho_path, fid_target, convention = "sqrt", fid_out;
  bool reversed = false;
  auto* fid = app.add_subcommand("fidelity", "Fidelity of a stored density matrix with a Z-state");
  fid->add_option("--rho", rho_path, "Density-matrix JSON")->required()->check(CLI::ExistingFile);
  fid->add_option("--target", fid_target, "zstate:N:K")->required();
  fid->add_flag("--reversed", reversed, "Reverse the qubit order of the target");
  fid->add_option("--convention", convention, "sqrt or squared")
      ->check(CLI::IsMember({"sqrt", "squared"}));
  fid->add_option("--out", fid_out, "Also write a JSON report");

  int verify_n = 2;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Check orthonormality, determinism, non-destructiveness");
  verify->add_option("--n", verify_n, "Number of data qubits N")->required();
  verify->add_option("--out", verify_out, "Also write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*gen) return run_gen(gen_n, gen_k, gen_discriminate, gen_out);
    if (*disc) return run_discriminate_cmd(build_config("discriminate", disc_opts, disc_flags));
    if (*tomo) return run_tomo_cmd(build_config("tomo", tomo_opts, tomo_flags));
    if (*fid) return run_fidelity_cmd(rho_path, fid_target, reversed, convention, fid_out);
    if (*verify) return run_verify_cmd(verify_n, verify_out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsageError;
}
