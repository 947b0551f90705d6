// SPDX-License-Identifier: Apache-2.0

#include "dfskit/dfs.hpp"

#include <cmath>

namespace dfskit {

Matrix partial_trace_second(const Matrix& x, Eigen::Index da, Eigen::Index db) {
  require(x.rows() == da * db && x.cols() == da * db,
          "partial_trace_second: dimension mismatch");
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index a2 = 0; a2 < da; ++a2) {
      Complex s = 0;
      for (Eigen::Index b = 0; b < db; ++b) s += x(a * db + b, a2 * db + b);
      out(a, a2) = s;
    }
  }
  return out;
}

Matrix partial_trace_first(const Matrix& x, Eigen::Index da, Eigen::Index db) {
  require(x.rows() == da * db && x.cols() == da * db,
          "partial_trace_first: dimension mismatch");
  Matrix out = Matrix::Zero(db, db);
  for (Eigen::Index b = 0; b < db; ++b) {
    for (Eigen::Index b2 = 0; b2 < db; ++b2) {
      Complex s = 0;
      for (Eigen::Index a = 0; a < da; ++a) s += x(a * db + b, a * db + b2);
      out(b, b2) = s;
    }
  }
  return out;
}

Matrix random_density_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      g(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

std::vector<DfsBlock> maximal_dfs(const StructureDecomposition& decomposition) {
  std::vector<DfsBlock> out;
  for (size_t l = 0; l < decomposition.blocks.size(); ++l) {
    const auto& block = decomposition.blocks[l];
    DfsBlock d;
    d.block_index = l;
    d.subsystem_dim = block.m;
    d.cosubsystem_dim = block.b_dim;
    d.unitary = Matrix::Zero(block.m, block.m);
    for (Eigen::Index p = 0; p < block.m; ++p) {
      d.unitary(p, p) = std::exp(Complex(0, block.phases[static_cast<size_t>(p)]));
    }
    d.embed = block.w;
    out.push_back(std::move(d));
  }
  return out;
}

bool is_dfs(const StructureDecomposition& decomposition, size_t block_index,
            const SubspaceBasis& candidate, double tol) {
  require(block_index < decomposition.blocks.size(),
          "is_dfs: block index out of range");
  const auto& block = decomposition.blocks[block_index];
  require(candidate.ambient_dim() == block.m,
          "is_dfs: candidate must live in the block's C^m factor");
  Matrix u = Matrix::Zero(block.m, block.m);
  for (Eigen::Index p = 0; p < block.m; ++p) {
    u(p, p) = std::exp(Complex(0, block.phases[static_cast<size_t>(p)]));
  }
  Matrix proj = candidate.columns * candidate.columns.adjoint();
  return (proj * u - u * proj).norm() <= tol * block.m;
}

DfsVerificationReport verify_definition(const KrausChannel& channel,
                                        const DfsBlock& dfs, int samples,
                                        std::uint64_t seed, double tol) {
  (void)tol;
  require(dfs.embed.ambient_dim() == channel.dim,
          "verify_definition: block inconsistent with channel");
  const Eigen::Index m = dfs.subsystem_dim;
  const Eigen::Index b = dfs.cosubsystem_dim;

  DfsVerificationReport report;
  report.samples = samples;
  report.seed = seed;
  std::mt19937_64 rng(seed);

  for (int s = 0; s < samples; ++s) {
    Matrix rho_a = random_density_matrix(m, rng);
    Matrix rho_b = random_density_matrix(b, rng);
    Matrix embedded =
        dfs.embed.columns * kron(rho_a, rho_b) * dfs.embed.columns.adjoint();
    Matrix evolved = dfskit::apply(channel, embedded);

    Matrix tau = dfs.embed.columns.adjoint() * evolved * dfs.embed.columns;
    double leakage =
        (evolved - dfs.embed.columns * tau * dfs.embed.columns.adjoint()).norm();

    Matrix tau_a = partial_trace_second(tau, m, b);
    Matrix tau_b = partial_trace_first(tau, m, b);
    double fact_err = (tau - kron(tau_a, tau_b)).norm() + leakage;
    double unit_err =
        (tau_a - dfs.unitary * rho_a * dfs.unitary.adjoint()).norm();

    report.max_factorization_error =
        std::max(report.max_factorization_error, fact_err);
    report.max_unitary_error = std::max(report.max_unitary_error, unit_err);
  }
  return report;
}

std::vector<CapacityEntry> capacity_report(
    const StructureDecomposition& decomposition, double tol) {
  std::vector<CapacityEntry> out;
  for (size_t l = 0; l < decomposition.blocks.size(); ++l) {
    const auto& block = decomposition.blocks[l];
    // Largest cluster of equal eigenphases: that subspace sees the
    // channel act as a global phase, i.e. it is noiseless.
    std::vector<double> phases = block.phases;
    std::sort(phases.begin(), phases.end());
    size_t best = 1, run = 1;
    for (size_t i = 1; i < phases.size(); ++i) {
      run = phases[i] - phases[i - 1] <= tol ? run + 1 : 1;
      best = std::max(best, run);
    }
    CapacityEntry e;
    e.block_index = l;
    e.dfs_qubits = std::log2(static_cast<double>(block.m));
    e.noiseless_qubits = std::log2(static_cast<double>(best));
    out.push_back(e);
  }
  return out;
}

}  // namespace dfskit
