// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command-line binary, located through the
// DFSKIT_CLI environment variable.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "dfskit/io.hpp"
#include "support/synth.hpp"

using namespace dfskit;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string cli_path() {
  const char* env = std::getenv("DFSKIT_CLI");
  REQUIRE_MESSAGE(env != nullptr, "DFSKIT_CLI must point at the binary");
  return env;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  auto out_path = std::filesystem::temp_directory_path() /
                  ("dfskit_cli_out_" + std::to_string(counter++) + ".txt");
  std::string cmd = env_prefix + "\"" + cli_path() + "\" " + args + " > " +
                    out_path.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  std::filesystem::remove(out_path);
  return r;
}

std::filesystem::path write_temp(const std::string& name, const Json& j) {
  auto path = std::filesystem::temp_directory_path() / name;
  write_json_file(path.string(), j);
  return path;
}

}  // namespace

TEST_CASE("validate: built-in example passes, non-TP channel exits 1") {
  auto ok = run("validate --paper-example");
  CHECK(ok.exit_code == 0);
  Json j = Json::parse(ok.output);
  CHECK(j["trace_preserving"] == true);
  CHECK(j["dim"] == 12);

  auto half = KrausChannel::from_kraus({0.5 * Matrix::Identity(2, 2)});
  auto path = write_temp("dfskit_cli_half.json", channel_to_json(half));
  auto bad = run("validate " + path.string());
  CHECK(bad.exit_code == 1);
  Json jb = Json::parse(bad.output);
  CHECK(jb["trace_preserving"] == false);
  CHECK(jb["defect"].get<double>() == doctest::Approx(0.75));
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("validate").exit_code == 2);  // no channel, no --paper-example
  CHECK(run("validate /nonexistent/channel.json").exit_code == 2);
  CHECK(run("decompose --paper-example --mode bogus").exit_code == 2);

  auto path =
      std::filesystem::temp_directory_path() / "dfskit_cli_malformed.json";
  {
    std::ofstream out(path);
    out << "{ not json at all";
  }
  CHECK(run("validate " + path.string()).exit_code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("DFSKIT_TOL environment default is honored") {
  auto half = KrausChannel::from_kraus({0.5 * Matrix::Identity(2, 2)});
  auto path = write_temp("dfskit_cli_half_tol.json", channel_to_json(half));
  // Defect 0.75 <= 0.9: accepted under a loose environment tolerance.
  auto loose = run("validate " + path.string(), "DFSKIT_TOL=0.9 ");
  CHECK(loose.exit_code == 0);
  // An explicit --tol overrides the environment.
  auto strict = run("validate " + path.string() + " --tol 1e-9",
                    "DFSKIT_TOL=0.9 ");
  CHECK(strict.exit_code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("decompose: built-in example report, both modes, determinism") {
  auto full = run("decompose --paper-example --seed 5");
  REQUIRE(full.exit_code == 0);
  Json j = Json::parse(full.output);
  REQUIRE(j["blocks"].size() == 1);
  CHECK(j["blocks"][0]["m"] == 4);
  CHECK(j["blocks"][0]["b_dim"] == 2);
  CHECK(j["blocks"][0]["phase_labels"][0] == "0");
  CHECK(j["blocks"][0]["phase_labels"][2] == "pi");
  CHECK(j["blocks"][0]["phase_labels"][3] == "pi");
  CHECK(j["decay_dim"] == 4);

  auto again = run("decompose --paper-example --seed 5");
  CHECK(full.output == again.output);  // byte-identical

  auto noiseless = run("decompose --paper-example --mode noiseless");
  REQUIRE(noiseless.exit_code == 0);
  Json jn = Json::parse(noiseless.output);
  REQUIRE(jn["blocks"].size() == 2);
  for (const auto& b : jn["blocks"]) {
    CHECK(b["m"] == 2);
    CHECK(b["b_dim"] == 2);
  }

  auto text = run("decompose --paper-example --text");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("m=4") != std::string::npos);

  auto verified = run("decompose --paper-example --verify");
  CHECK(verified.exit_code == 0);
  Json jv = Json::parse(verified.output);
  CHECK(jv["verification"]["definition_error"].get<double>() < 1e-8);
}

TEST_CASE("decompose accepts a channel file") {
  std::mt19937_64 rng(157);
  auto built = synth::make_structured_channel(
      {synth::BlockSpec{2, 2, {0.0, std::numbers::pi / 3}}}, 2, 2, rng);
  auto path =
      write_temp("dfskit_cli_structured.json", channel_to_json(built.channel));
  auto r = run("decompose " + path.string() + " --verify");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.output);
  REQUIRE(j["blocks"].size() == 1);
  CHECK(j["blocks"][0]["m"] == 2);
  CHECK(j["decay_dim"] == 2);
  std::filesystem::remove(path);
}

TEST_CASE("dfs subcommand reports capacities") {
  auto r = run("dfs --paper-example");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.output);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["subsystem_dim"] == 4);
  CHECK(j[0]["dfs_qubits"].get<double>() == doctest::Approx(2.0));
  CHECK(j[0]["noiseless_qubits"].get<double>() == doctest::Approx(1.0));

  auto text = run("dfs --paper-example --text");
  CHECK(text.exit_code == 0);
  CHECK(text.output.find("C^4") != std::string::npos);
}

TEST_CASE("mps subcommands: repeated, irreducible, expand, basis") {
  std::mt19937_64 rng(163);
  auto b = synth::random_irreducible_tensor(3, 2, rng);
  const double theta = std::numbers::pi / 5;
  Matrix u = synth::random_unitary(3, rng);
  std::vector<Matrix> twin;
  for (const auto& m : b.matrices) {
    twin.push_back(std::exp(Complex(0, theta)) * u * m * u.adjoint());
  }
  auto a = MpsTensor::from_matrices(twin);

  auto path_a = write_temp("dfskit_cli_a.json", tensor_to_json(a));
  auto path_b = write_temp("dfskit_cli_b.json", tensor_to_json(b));

  auto rep = run("mps repeated " + path_a.string() + " " + path_b.string());
  REQUIRE(rep.exit_code == 0);
  Json jr = Json::parse(rep.output);
  CHECK(jr["repeated"] == true);
  CHECK(std::abs(jr["theta"].get<double>() - theta) < 1e-8);
  CHECK(jr["theta_label"] == "pi/5");

  auto irr = run("mps irreducible " + path_b.string());
  CHECK(irr.exit_code == 0);
  CHECK(Json::parse(irr.output)["irreducible"] == true);

  auto exp2 = run("mps expand " + path_b.string() + " --n 2");
  REQUIRE(exp2.exit_code == 0);
  CHECK(Json::parse(exp2.output)["amplitudes"].size() == 4);

  // Non-repeated pair exits 1.
  MpsTensor other = b;
  for (int attempt = 0;; ++attempt) {
    REQUIRE(attempt < 32);
    other = synth::random_irreducible_tensor(3, 2, rng);
    if (synth::cross_spectral_radius(other.matrices, b.matrices) < 1 - 1e-2)
      break;
  }
  auto path_c = write_temp("dfskit_cli_c.json", tensor_to_json(other));
  auto rep2 = run("mps repeated " + path_c.string() + " " + path_b.string());
  CHECK(rep2.exit_code == 1);
  CHECK(Json::parse(rep2.output)["repeated"] == false);

  Json list = Json::array();
  list.push_back(tensor_to_json(b));
  list.push_back(tensor_to_json(a));
  list.push_back(tensor_to_json(other));
  auto path_list = write_temp("dfskit_cli_list.json", list);
  auto basis = run("mps basis " + path_list.string());
  REQUIRE(basis.exit_code == 0);
  Json jb = Json::parse(basis.output);
  CHECK(jb["input_count"] == 3);
  CHECK(jb["representative_count"] == 2);

  for (const auto& p : {path_a, path_b, path_c, path_list}) {
    std::filesystem::remove(p);
  }
}
