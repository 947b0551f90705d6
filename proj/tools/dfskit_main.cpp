// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: validate channels, run the block
// decomposition and DFS enumeration, and analyze MPS tensors.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dfskit/builtin_examples.hpp"
#include "dfskit/io.hpp"
#include "dfskit/oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;

double default_tolerance() {
  if (const char* env = std::getenv("DFSKIT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return dfskit::kDefaultTol;
}

dfskit::KrausChannel load_channel(const std::string& path, bool paper_example) {
  if (paper_example) return dfskit::paper_example_channel();
  return dfskit::channel_from_json(dfskit::read_json_file(path));
}

int run_validate(const std::string& path, bool paper_example, double tol) {
  dfskit::KrausChannel channel = load_channel(path, paper_example);
  dfskit::CptpReport report = dfskit::is_cptp(channel, tol);
  dfskit::Json j;
  j["dim"] = channel.dim;
  j["kraus_count"] = channel.kraus.size();
  j["trace_preserving"] = report.trace_preserving;
  j["defect"] = report.defect;
  j["completely_positive"] = true;  // automatic in Kraus form
  std::cout << j.dump(2) << "\n";
  return report.trace_preserving ? kExitOk : kExitSemantic;
}

int run_decompose(const std::string& path, bool paper_example, double tol,
                  std::uint64_t seed, const std::string& mode, bool as_text,
                  bool verify) {
  dfskit::KrausChannel channel = load_channel(path, paper_example);
  dfskit::StructureDecomposition decomposition =
      mode == "noiseless" ? dfskit::noiseless_decomposition(channel, tol, seed)
                          : dfskit::structure_decomposition(channel, tol, seed);
  dfskit::Json report =
      dfskit::decomposition_report(channel, decomposition, tol, seed);

  bool ok = true;
  if (verify) {
    dfskit::BlockFormReport block_form =
        dfskit::verify_block_form(channel, decomposition, tol);
    dfskit::ReconstructionReport recon =
        dfskit::reconstruct_channel(channel, decomposition);
    double worst_minimality = 0.0;
    for (const auto& block : decomposition.blocks) {
      for (Eigen::Index p = 0; p < block.m; ++p) {
        dfskit::SubspaceBasis member{
            block.w.columns.middleCols(p * block.b_dim, block.b_dim)};
        worst_minimality = std::max(
            worst_minimality,
            dfskit::check_minimality(channel, member, tol).discrepancy);
      }
    }
    double worst_definition = 0.0;
    for (const auto& dfs : dfskit::maximal_dfs(decomposition)) {
      auto vr = dfskit::verify_definition(channel, dfs, 100, seed, tol);
      worst_definition = std::max(
          worst_definition,
          std::max(vr.max_factorization_error, vr.max_unitary_error));
    }
    dfskit::Json jv;
    jv["block_form_residual"] = block_form.max_constrained();
    jv["reconstruction_residual"] = recon.max_residual;
    jv["minimality_discrepancy"] = worst_minimality;
    jv["definition_error"] = worst_definition;
    report["verification"] = jv;
    ok = block_form.max_constrained() <= 10 * tol &&
         recon.max_residual <= 10 * tol && worst_minimality <= tol &&
         worst_definition <= 1e3 * tol;
  }

  if (as_text) {
    std::cout << dfskit::decomposition_report_text(report);
    if (verify) {
      std::cout << "verification: " << (ok ? "pass" : "FAIL") << "\n";
    }
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return ok ? kExitOk : kExitSemantic;
}

int run_dfs(const std::string& path, bool paper_example, double tol,
            std::uint64_t seed, bool as_text) {
  dfskit::KrausChannel channel = load_channel(path, paper_example);
  dfskit::StructureDecomposition decomposition =
      dfskit::structure_decomposition(channel, tol, seed);
  auto blocks = dfskit::maximal_dfs(decomposition);
  auto capacities = dfskit::capacity_report(decomposition, tol);

  if (as_text) {
    for (size_t l = 0; l < blocks.size(); ++l) {
      std::cout << "DFS: C^" << blocks[l].subsystem_dim << ", store "
                << capacities[l].dfs_qubits << " qubits (noiseless: "
                << capacities[l].noiseless_qubits << " qubits)\n";
    }
  } else {
    dfskit::Json j = dfskit::Json::array();
    for (size_t l = 0; l < blocks.size(); ++l) {
      dfskit::Json jb;
      jb["block_index"] = blocks[l].block_index;
      jb["subsystem_dim"] = blocks[l].subsystem_dim;
      jb["cosubsystem_dim"] = blocks[l].cosubsystem_dim;
      dfskit::Json ju = dfskit::Json::array();
      for (Eigen::Index p = 0; p < blocks[l].subsystem_dim; ++p) {
        ju.push_back(dfskit::Json::array(
            {blocks[l].unitary(p, p).real(), blocks[l].unitary(p, p).imag()}));
      }
      jb["unitary_diagonal"] = std::move(ju);
      jb["dfs_qubits"] = capacities[l].dfs_qubits;
      jb["noiseless_qubits"] = capacities[l].noiseless_qubits;
      j.push_back(std::move(jb));
    }
    std::cout << j.dump(2) << "\n";
  }
  return kExitOk;
}

int run_mps_repeated(const std::string& path_a, const std::string& path_b,
                     double tol, const std::string& u_out) {
  auto a = dfskit::tensor_from_json(dfskit::read_json_file(path_a));
  auto b = dfskit::tensor_from_json(dfskit::read_json_file(path_b));
  dfskit::RepeatedVerdict v = dfskit::is_repeated(a, b, tol);
  dfskit::Json j;
  j["repeated"] = v.repeated;
  if (v.repeated) {
    j["theta"] = dfskit::round_phase(v.theta);
    std::string label = dfskit::phase_annotation(v.theta, tol);
    if (!label.empty()) j["theta_label"] = label;
    if (!u_out.empty()) {
      dfskit::Json ju;
      ju["intertwiner"] = dfskit::matrix_to_json(v.intertwiner);
      dfskit::write_json_file(u_out, ju);
      j["intertwiner_file"] = u_out;
    } else {
      j["intertwiner"] = dfskit::matrix_to_json(v.intertwiner);
    }
  }
  std::cout << j.dump(2) << "\n";
  return v.repeated ? kExitOk : kExitSemantic;
}

int run_mps_irreducible(const std::string& path, double tol) {
  auto a = dfskit::tensor_from_json(dfskit::read_json_file(path));
  bool irreducible = dfskit::is_irreducible_tensor(a, tol);
  dfskit::Json j;
  j["irreducible"] = irreducible;
  std::cout << j.dump(2) << "\n";
  return irreducible ? kExitOk : kExitSemantic;
}

int run_mps_basis(const std::string& path, double tol) {
  dfskit::Json jl = dfskit::read_json_file(path);
  const dfskit::Json& items = jl.is_array() ? jl : jl.at("tensors");
  std::vector<dfskit::WeightedTensor> tensors;
  for (const auto& jt : items) {
    tensors.push_back(dfskit::weighted_tensor_from_json(jt));
  }
  auto reps = dfskit::basis_dedup(tensors, tol);
  dfskit::Json j;
  j["input_count"] = tensors.size();
  j["representative_count"] = reps.size();
  dfskit::Json jr = dfskit::Json::array();
  for (const auto& rep : reps) jr.push_back(dfskit::weighted_tensor_to_json(rep));
  j["representatives"] = std::move(jr);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int run_mps_expand(const std::string& path, int n) {
  auto a = dfskit::tensor_from_json(dfskit::read_json_file(path));
  dfskit::Vector v = dfskit::expand(a, n);
  dfskit::Json j;
  j["n"] = n;
  dfskit::Json entries = dfskit::Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    entries.push_back(dfskit::Json::array({v(i).real(), v(i).imag()}));
  }
  j["amplitudes"] = std::move(entries);
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block decomposition of quantum channels, decoherence-free "
               "subsystem enumeration, and MPS repeated-tensor analysis"};
  app.require_subcommand(1);

  double tol = default_tolerance();
  std::uint64_t seed = 0;
  std::string channel_path, mode = "full";
  bool paper_example = false, as_text = false, as_json = false, verify = false;

  auto add_channel_opts = [&](CLI::App* cmd) {
    cmd->add_option("channel", channel_path, "channel JSON file");
    cmd->add_flag("--paper-example", paper_example,
                  "use the built-in worked example channel");
    cmd->add_option("--tol", tol, "relative tolerance");
  };

  auto* validate = app.add_subcommand("validate", "check CPTP validity");
  add_channel_opts(validate);

  auto* decompose = app.add_subcommand("decompose", "block decomposition");
  add_channel_opts(decompose);
  decompose->add_option("--seed", seed, "RNG seed for generic elements");
  decompose->add_option("--mode", mode, "full | noiseless")
      ->check(CLI::IsMember({"full", "noiseless"}));
  decompose->add_flag("--json", as_json, "JSON output (default)");
  decompose->add_flag("--text", as_text, "human-readable output");
  decompose->add_flag("--verify", verify, "run oracle and definition checks");

  auto* dfs = app.add_subcommand("dfs", "maximal decoherence-free subsystems");
  add_channel_opts(dfs);
  dfs->add_option("--seed", seed, "RNG seed for generic elements");
  dfs->add_flag("--json", as_json, "JSON output (default)");
  dfs->add_flag("--text", as_text, "human-readable output");

  auto* mps = app.add_subcommand("mps", "MPS tensor analyses");
  mps->require_subcommand(1);
  std::string tensor_a, tensor_b, u_out;
  int n_sites = 1;
  auto* repeated = mps->add_subcommand("repeated", "repeated-tensor test");
  repeated->add_option("a", tensor_a, "first tensor JSON")->required();
  repeated->add_option("b", tensor_b, "second tensor JSON")->required();
  repeated->add_option("--tol", tol, "relative tolerance");
  repeated->add_option("--u-out", u_out, "write the intertwiner to this file");
  auto* irreducible = mps->add_subcommand("irreducible", "irreducibility test");
  irreducible->add_option("a", tensor_a, "tensor JSON")->required();
  irreducible->add_option("--tol", tol, "relative tolerance");
  auto* basis = mps->add_subcommand("basis", "deduplicate a tensor list");
  basis->add_option("list", tensor_a, "tensor list JSON")->required();
  basis->add_option("--tol", tol, "relative tolerance");
  auto* expand = mps->add_subcommand("expand", "dense MPS expansion");
  expand->add_option("a", tensor_a, "tensor JSON")->required();
  expand->add_option("--n", n_sites, "number of sites")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) {
      if (channel_path.empty() && !paper_example) {
        std::cerr << "validate: a channel file or --paper-example is required\n";
        return kExitUsage;
      }
      return run_validate(channel_path, paper_example, tol);
    }
    if (decompose->parsed()) {
      if (channel_path.empty() && !paper_example) {
        std::cerr << "decompose: a channel file or --paper-example is required\n";
        return kExitUsage;
      }
      return run_decompose(channel_path, paper_example, tol, seed, mode,
                           as_text && !as_json, verify);
    }
    if (dfs->parsed()) {
      if (channel_path.empty() && !paper_example) {
        std::cerr << "dfs: a channel file or --paper-example is required\n";
        return kExitUsage;
      }
      return run_dfs(channel_path, paper_example, tol, seed,
                     as_text && !as_json);
    }
    if (mps->parsed()) {
      if (repeated->parsed()) return run_mps_repeated(tensor_a, tensor_b, tol, u_out);
      if (irreducible->parsed()) return run_mps_irreducible(tensor_a, tol);
      if (basis->parsed()) return run_mps_basis(tensor_a, tol);
      if (expand->parsed()) return run_mps_expand(tensor_a, n_sites);
    }
  } catch (const dfskit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // Parse/shape problems are usage errors; everything else is semantic.
    std::string what = e.what();
    bool parse_error = what.find("parse") != std::string::npos ||
                       what.find("malformed") != std::string::npos ||
                       what.find("cannot open") != std::string::npos;
    return parse_error ? kExitUsage : kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantic;
  }
  return kExitUsage;
}
