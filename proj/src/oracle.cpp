// SPDX-License-Identifier: Apache-2.0

#include "dfskit/oracle.hpp"

#include <cmath>

#include "dfskit/fixedpoint.hpp"

namespace dfskit {

Matrix cesaro_stationary(const KrausChannel& channel, int n_max, double tol) {
  const Eigen::Index d = channel.dim;
  Matrix iterate = Matrix::Identity(d, d) / static_cast<double>(d);
  Matrix running_sum = Matrix::Zero(d, d);
  Matrix previous_average = Matrix::Zero(d, d);
  int n = 0;
  int next_checkpoint = 1;
  while (n < n_max) {
    iterate = dfskit::apply(channel, iterate);
    running_sum += iterate;
    ++n;
    if (n == next_checkpoint) {
      Matrix average = running_sum / static_cast<double>(n);
      if (n > 1 && (average - previous_average).norm() <= tol) {
        average = 0.5 * (average + average.adjoint().eval());
        return average / average.trace().real();
      }
      previous_average = average;
      next_checkpoint *= 2;
    }
  }
  throw Error("cesaro_stationary: no convergence within n_max = " +
              std::to_string(n_max) + " applications");
}

OracleReport check_minimality(const KrausChannel& channel,
                              const SubspaceBasis& candidate, double tol) {
  OracleReport report;
  report.name = "check_minimality";

  // A candidate that is not even invariant cannot be minimal; report the
  // leakage instead of failing the restriction.
  InvarianceResidual inv = invariance_residual(channel, candidate);
  if (inv.residual > tol) {
    report.discrepancy = inv.residual;
    report.details = "candidate subspace is not invariant (relative leakage " +
                     std::to_string(inv.residual) + ")";
    return report;
  }
  KrausChannel restricted = restrict(channel, candidate, tol);

  // Count independent fixed points of the restriction the slow way:
  // solve the stationarity equations on the restricted representation.
  Matrix m = matrix_rep(restricted);
  m.diagonal().array() -= 1.0;
  SubspaceBasis fixed = null_space(m, tol);
  if (fixed.dim() == 0) {
    report.discrepancy = 1.0;
    report.details = "restriction has no stationary state";
    return report;
  }
  RecurrentSplit split = maximal_stationary_state(restricted, tol);
  const Eigen::Index rank_deficit = restricted.dim - split.recurrent.dim();

  report.discrepancy = static_cast<double>(fixed.dim() - 1) +
                       static_cast<double>(rank_deficit);
  report.details = "fixed-space dimension " + std::to_string(fixed.dim()) +
                   ", stationary-state rank deficit " +
                   std::to_string(rank_deficit);
  return report;
}

ReconstructionReport reconstruct_channel(
    const KrausChannel& channel, const StructureDecomposition& decomposition) {
  const Eigen::Index d = channel.dim;
  Eigen::Index rec_dim = 0;
  for (const auto& b : decomposition.blocks) rec_dim += b.m * b.b_dim;
  require(rec_dim + decomposition.decay.dim() == d,
          "reconstruct_channel: dimensions do not match the channel");

  Matrix frame(d, d);
  Eigen::Index col = 0;
  for (const auto& b : decomposition.blocks) {
    frame.middleCols(col, b.w.dim()) = b.w.columns;
    col += b.w.dim();
  }
  frame.middleCols(col, decomposition.decay.dim()) =
      decomposition.decay.columns;

  ReconstructionReport report;
  report.rebuilt.dim = d;
  for (size_t k = 0; k < channel.kraus.size(); ++k) {
    Matrix original_t = frame.adjoint() * channel.kraus[k] * frame;
    Matrix t = Matrix::Zero(d, d);
    Eigen::Index row = 0;
    for (const auto& b : decomposition.blocks) {
      Matrix u_l = Matrix::Zero(b.m, b.m);
      for (Eigen::Index p = 0; p < b.m; ++p) {
        u_l(p, p) = std::exp(Complex(0, b.phases[static_cast<size_t>(p)]));
      }
      t.block(row, row, b.m * b.b_dim, b.m * b.b_dim) =
          kron(u_l, b.base_kraus[k]);
      row += b.m * b.b_dim;
    }
    // T_k and K_k are unconstrained; read them off the original.
    t.block(0, rec_dim, rec_dim, d - rec_dim) =
        original_t.block(0, rec_dim, rec_dim, d - rec_dim);
    t.block(rec_dim, rec_dim, d - rec_dim, d - rec_dim) =
        original_t.block(rec_dim, rec_dim, d - rec_dim, d - rec_dim);

    Matrix rebuilt = frame * t * frame.adjoint();
    report.max_residual =
        std::max(report.max_residual, (rebuilt - channel.kraus[k]).norm());
    report.rebuilt.kraus.push_back(std::move(rebuilt));
  }
  return report;
}

}  // namespace dfskit
