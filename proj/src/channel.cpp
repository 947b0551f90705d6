// SPDX-License-Identifier: Apache-2.0

#include "dfskit/channel.hpp"

#include <algorithm>
#include <string>

namespace dfskit {

namespace {

double max_kraus_norm(const KrausChannel& channel) {
  double m = 0.0;
  for (const auto& e : channel.kraus) m = std::max(m, e.norm());
  return m;
}

}  // namespace

KrausChannel KrausChannel::from_kraus(std::vector<Matrix> ops) {
  require(!ops.empty(), "KrausChannel: empty Kraus list");
  const Eigen::Index d = ops.front().rows();
  for (const auto& e : ops) {
    require(e.rows() == d && e.cols() == d,
            "KrausChannel: Kraus operators must be square and equal-sized");
    require(e.allFinite(), "KrausChannel: non-finite Kraus entries");
  }
  return KrausChannel{d, std::move(ops)};
}

Matrix apply(const KrausChannel& channel, const Matrix& x) {
  require(x.rows() == channel.dim && x.cols() == channel.dim,
          "apply: operator dimension mismatch");
  Matrix out = Matrix::Zero(channel.dim, channel.dim);
  for (const auto& e : channel.kraus) out += e * x * e.adjoint();
  return out;
}

Matrix matrix_rep(const KrausChannel& channel) {
  const Eigen::Index d2 = channel.dim * channel.dim;
  Matrix m = Matrix::Zero(d2, d2);
  for (const auto& e : channel.kraus) m += kron(e, e.conjugate());
  return m;
}

CptpReport is_cptp(const KrausChannel& channel, double tol) {
  Matrix s = Matrix::Zero(channel.dim, channel.dim);
  for (const auto& e : channel.kraus) s += e.adjoint() * e;
  s -= Matrix::Identity(channel.dim, channel.dim);
  CptpReport report;
  // Spectral norm, so the defect is dimension-independent.
  report.defect = s.jacobiSvd().singularValues()(0);
  report.trace_preserving = report.defect <= tol;
  return report;
}

KrausChannel adjoint(const KrausChannel& channel) {
  std::vector<Matrix> ops;
  ops.reserve(channel.kraus.size());
  for (const auto& e : channel.kraus) ops.push_back(e.adjoint());
  return KrausChannel{channel.dim, std::move(ops)};
}

InvarianceResidual invariance_residual(const KrausChannel& channel,
                                       const SubspaceBasis& v) {
  require(v.ambient_dim() == channel.dim,
          "invariance_residual: basis dimension mismatch");
  const Matrix proj_out =
      Matrix::Identity(channel.dim, channel.dim) - v.columns * v.columns.adjoint();
  const double scale = max_kraus_norm(channel);
  InvarianceResidual r;
  for (size_t k = 0; k < channel.kraus.size(); ++k) {
    double res = (proj_out * (channel.kraus[k] * v.columns)).norm();
    if (scale > 0) res /= scale;
    if (res > r.residual) {
      r.residual = res;
      r.worst_kraus = k;
    }
  }
  return r;
}

KrausChannel restrict(const KrausChannel& channel, const SubspaceBasis& v,
                      double tol) {
  InvarianceResidual r = invariance_residual(channel, v);
  if (r.residual > tol) {
    throw Error("restrict: subspace not invariant (worst Kraus index " +
                std::to_string(r.worst_kraus) + ", relative residual " +
                std::to_string(r.residual) + ")");
  }
  std::vector<Matrix> ops;
  ops.reserve(channel.kraus.size());
  for (const auto& e : channel.kraus) {
    ops.push_back(v.columns.adjoint() * e * v.columns);
  }
  return KrausChannel{v.dim(), std::move(ops)};
}

CrossMap cross_map(const KrausChannel& channel, const SubspaceBasis& v_p,
                   const SubspaceBasis& v_q, double tol) {
  KrausChannel restricted_p = restrict(channel, v_p, tol);
  KrausChannel restricted_q = restrict(channel, v_q, tol);
  const Eigen::Index dp = v_p.dim(), dq = v_q.dim();
  Matrix rep = Matrix::Zero(dp * dq, dp * dq);
  for (size_t k = 0; k < channel.kraus.size(); ++k) {
    rep += kron(restricted_p.kraus[k], restricted_q.kraus[k].conjugate());
  }
  return CrossMap{v_p, v_q, std::move(rep)};
}

}  // namespace dfskit
