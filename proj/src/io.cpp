// SPDX-License-Identifier: Apache-2.0

#include "dfskit/io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

namespace dfskit {

namespace {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error("parse: complex entry must be a [re, im] number pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error("parse: matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[static_cast<size_t>(i)].is_array() ||
        static_cast<Eigen::Index>(j[static_cast<size_t>(i)].size()) != cols) {
      throw Error("parse: ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(i, c) = complex_from_json(j[static_cast<size_t>(i)][static_cast<size_t>(c)]);
    }
  }
  return m;
}

Json channel_to_json(const KrausChannel& channel) {
  Json j;
  j["dim"] = channel.dim;
  Json ops = Json::array();
  for (const auto& e : channel.kraus) ops.push_back(matrix_to_json(e));
  j["kraus"] = std::move(ops);
  return j;
}

KrausChannel channel_from_json(const Json& j) {
  if (!j.contains("dim") || !j.contains("kraus") || !j["kraus"].is_array() ||
      j["kraus"].empty()) {
    throw Error("parse: channel file needs 'dim' and a nonempty 'kraus' list");
  }
  const auto dim = j["dim"].get<Eigen::Index>();
  std::vector<Matrix> ops;
  for (const auto& jm : j["kraus"]) ops.push_back(matrix_from_json(jm));
  KrausChannel channel = KrausChannel::from_kraus(std::move(ops));
  if (channel.dim != dim) throw Error("parse: 'dim' does not match Kraus operator size");
  return channel;
}

Json tensor_to_json(const MpsTensor& tensor) {
  Json j;
  j["phys_dim"] = tensor.phys_dim;
  j["bond_dim"] = tensor.bond_dim;
  Json mats = Json::array();
  for (const auto& m : tensor.matrices) mats.push_back(matrix_to_json(m));
  j["matrices"] = std::move(mats);
  return j;
}

MpsTensor tensor_from_json(const Json& j) {
  if (!j.contains("phys_dim") || !j.contains("bond_dim") ||
      !j.contains("matrices") || !j["matrices"].is_array() ||
      j["matrices"].empty()) {
    throw Error("parse: tensor file needs 'phys_dim', 'bond_dim', 'matrices'");
  }
  std::vector<Matrix> mats;
  for (const auto& jm : j["matrices"]) mats.push_back(matrix_from_json(jm));
  MpsTensor tensor = MpsTensor::from_matrices(std::move(mats));
  if (tensor.phys_dim != j["phys_dim"].get<Eigen::Index>() ||
      tensor.bond_dim != j["bond_dim"].get<Eigen::Index>()) {
    throw Error("parse: declared tensor dimensions do not match the matrices");
  }
  return tensor;
}

Json weighted_tensor_to_json(const WeightedTensor& tensor) {
  Json j = tensor_to_json(tensor.tensor);
  Json weights = Json::array();
  for (Complex w : tensor.weights) weights.push_back(complex_to_json(w));
  j["weights"] = std::move(weights);
  return j;
}

WeightedTensor weighted_tensor_from_json(const Json& j) {
  WeightedTensor wt;
  wt.tensor = tensor_from_json(j);
  if (j.contains("weights")) {
    for (const auto& jw : j["weights"]) wt.weights.push_back(complex_from_json(jw));
  } else if (j.contains("weight")) {
    wt.weights.push_back(complex_from_json(j["weight"]));
  } else {
    wt.weights.push_back(Complex(1, 0));
  }
  if (wt.weights.empty()) throw Error("parse: empty weight list");
  return wt;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

std::string phase_annotation(double theta, double tol) {
  const double pi = std::numbers::pi;
  const double eps = std::max(tol, 1e-9);
  for (int q = 1; q <= 12; ++q) {
    double scaled = theta * q / pi;
    double p = std::round(scaled);
    if (std::abs(scaled - p) * pi / q <= eps) {
      int pi_num = static_cast<int>(p);
      if (pi_num == 0) return "0";
      int g = std::gcd(std::abs(pi_num), q);
      pi_num /= g;
      int den = q / g;
      std::ostringstream os;
      if (pi_num == -1) os << "-";
      else if (pi_num != 1) os << pi_num << "*";
      os << "pi";
      if (den != 1) os << "/" << den;
      return os.str();
    }
  }
  return "";
}

double round_phase(double theta) { return std::round(theta * 1e9) / 1e9; }

Json decomposition_report(const KrausChannel& channel,
                          const StructureDecomposition& decomposition,
                          double tol, std::uint64_t seed) {
  BlockFormReport residuals = verify_block_form(channel, decomposition, tol);
  auto capacities = capacity_report(decomposition, tol);

  Json j;
  Json blocks = Json::array();
  for (size_t l = 0; l < decomposition.blocks.size(); ++l) {
    const auto& b = decomposition.blocks[l];
    Json jb;
    jb["m"] = b.m;
    jb["b_dim"] = b.b_dim;
    Json phases = Json::array();
    Json labels = Json::array();
    for (double t : b.phases) {
      phases.push_back(round_phase(t));
      labels.push_back(phase_annotation(t, tol));
    }
    jb["phases"] = std::move(phases);
    jb["phase_labels"] = std::move(labels);

    // dim fix(U_l) = sum over equal-phase clusters of (cluster size)^2.
    std::vector<double> sorted = b.phases;
    std::sort(sorted.begin(), sorted.end());
    Eigen::Index fix_dim = 0, run = 1;
    for (size_t i = 1; i <= sorted.size(); ++i) {
      if (i < sorted.size() && sorted[i] - sorted[i - 1] <= tol) {
        ++run;
      } else {
        fix_dim += run * run;
        run = 1;
      }
    }
    jb["fix_dim_contribution"] = fix_dim;
    jb["dfs_qubits"] = capacities[l].dfs_qubits;
    jb["noiseless_qubits"] = capacities[l].noiseless_qubits;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  j["decay_dim"] = decomposition.decay.dim();
  j["tolerance"] = tol;
  j["seed"] = seed;
  Json jr;
  jr["inter_block"] = residuals.inter_block_residual;
  jr["lower_left"] = residuals.lower_left_residual;
  jr["in_block"] = residuals.in_block_residual;
  jr["decay_coupling_norm"] = residuals.decay_coupling_norm;
  jr["decay_block_norm"] = residuals.decay_block_norm;
  j["residuals"] = std::move(jr);
  return j;
}

std::string decomposition_report_text(const Json& report) {
  std::ostringstream os;
  os << "blocks: " << report["blocks"].size()
     << ", decay_dim: " << report["decay_dim"].get<int>() << "\n";
  size_t l = 0;
  for (const auto& b : report["blocks"]) {
    os << "  block " << l++ << ": m=" << b["m"].get<int>()
       << " b_dim=" << b["b_dim"].get<int>() << " phases=[";
    for (size_t i = 0; i < b["phases"].size(); ++i) {
      if (i) os << ", ";
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.9f", b["phases"][i].get<double>());
      os << buf;
      std::string label = b["phase_labels"][i].get<std::string>();
      if (!label.empty()) os << " (" << label << ")";
    }
    os << "]\n";
    os << "    dfs_qubits=" << b["dfs_qubits"].get<double>()
       << " noiseless_qubits=" << b["noiseless_qubits"].get<double>()
       << " fix_dim_contribution=" << b["fix_dim_contribution"].get<int>()
       << "\n";
  }
  os << "max constrained residual: "
     << std::max({report["residuals"]["inter_block"].get<double>(),
                  report["residuals"]["lower_left"].get<double>(),
                  report["residuals"]["in_block"].get<double>()})
     << "\n";
  return os.str();
}

}  // namespace dfskit
