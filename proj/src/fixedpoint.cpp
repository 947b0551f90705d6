// SPDX-License-Identifier: Apache-2.0

#include "dfskit/fixedpoint.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace dfskit {

namespace {

// Real-coefficient pivoted Gram-Schmidt on Hermitian matrices under the
// trace inner product (real-valued on Hermitian pairs). The rank cut is
// sqrt(tol) * scale: the inputs are derived from a numerical null space,
// so dependent candidates leave round-off residues well above tol * scale
// that must not be normalized into spurious basis directions.
std::vector<Matrix> orthonormalize_hermitian(std::vector<Matrix> in,
                                             double tol) {
  double scale = 0.0;
  for (const auto& h : in) scale = std::max(scale, h.norm());
  std::vector<Matrix> basis;
  if (scale == 0.0) return basis;
  const double cut = std::sqrt(tol) * scale;
  while (!in.empty()) {
    size_t best = 0;
    double best_norm = 0.0;
    for (size_t i = 0; i < in.size(); ++i) {
      const double r = in[i].norm();
      if (r > best_norm) {
        best_norm = r;
        best = i;
      }
    }
    if (best_norm <= cut) break;
    Matrix q = in[best] / best_norm;
    in.erase(in.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& h : in) {
      for (int pass = 0; pass < 2; ++pass) {
        h -= (q.adjoint() * h).trace().real() * q;
      }
    }
    basis.push_back(std::move(q));
  }
  return basis;
}

}  // namespace

FixedPointSpace fixed_point_space(const KrausChannel& channel, double tol) {
  const Eigen::Index d = channel.dim;
  Matrix m = matrix_rep(channel);
  m.diagonal().array() -= 1.0;
  SubspaceBasis nspace = null_space(m, tol);

  FixedPointSpace space;
  space.channel_dim = d;
  for (Eigen::Index i = 0; i < nspace.dim(); ++i) {
    space.basis.push_back(unvec(nspace.columns.col(i), d, d));
  }
  std::vector<Matrix> hermitian;
  for (const auto& x : space.basis) {
    hermitian.push_back(x + x.adjoint());
    hermitian.push_back(Complex(0, 1) * (x - x.adjoint()));
  }
  space.hermitian_basis = orthonormalize_hermitian(hermitian, tol);
  return space;
}

RecurrentSplit maximal_stationary_state(const KrausChannel& channel,
                                        double tol) {
  const Eigen::Index d = channel.dim;
  Matrix m = matrix_rep(channel);
  m.diagonal().array() -= 1.0;

  SubspaceBasis right = null_space(m, tol);
  if (right.dim() == 0) {
    throw Error("maximal_stationary_state: no eigenvalue 1 found; "
                "input is not a CPTP channel");
  }
  SubspaceBasis left = null_space(Matrix(m.adjoint()), tol);
  if (left.dim() != right.dim()) {
    throw InconsistencyError(
        "maximal_stationary_state: left/right fixed-space dimensions differ");
  }
  // Spectral (oblique) projector onto the eigenvalue-1 eigenspace:
  // P = V (W^dag V)^{-1} W^dag, valid because the eigenvalue is
  // semisimple for CPTP channels.
  const Matrix& v = right.columns;
  const Matrix& w = left.columns;
  Matrix gram = w.adjoint() * v;
  Matrix proj = v * gram.partialPivLu().solve(w.adjoint());

  Vector rho_vec = proj * vec(Matrix::Identity(d, d) / static_cast<double>(d));
  Matrix rho = unvec(rho_vec, d, d);
  rho = 0.5 * (rho + rho.adjoint().eval());

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  require(es.info() == Eigen::Success,
          "maximal_stationary_state: eigensolver failed");
  RealVector evals = es.eigenvalues();
  const double emax = evals.maxCoeff();
  if (evals.minCoeff() < -tol * std::max(emax, 1.0)) {
    throw InconsistencyError(
        "maximal_stationary_state: projected state has a significantly "
        "negative eigenvalue; suspected non-CPTP input");
  }

  std::vector<Eigen::Index> support, kernel;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (evals(i) > tol * emax) {
      support.push_back(i);
    } else {
      kernel.push_back(i);
      evals(i) = 0.0;
    }
  }
  rho = es.eigenvectors() * evals.cast<Complex>().asDiagonal() *
        es.eigenvectors().adjoint();
  rho /= rho.trace().real();

  Matrix rec(d, static_cast<Eigen::Index>(support.size()));
  for (size_t i = 0; i < support.size(); ++i) {
    rec.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(support[i]);
  }
  Matrix dec(d, static_cast<Eigen::Index>(kernel.size()));
  for (size_t i = 0; i < kernel.size(); ++i) {
    dec.col(static_cast<Eigen::Index>(i)) = es.eigenvectors().col(kernel[i]);
  }
  return RecurrentSplit{SubspaceBasis{std::move(rec)},
                        SubspaceBasis{std::move(dec)}, std::move(rho)};
}

bool is_irreducible(const KrausChannel& channel, double tol) {
  Matrix m = matrix_rep(channel);
  m.diagonal().array() -= 1.0;
  SubspaceBasis fixed = null_space(m, tol);
  if (fixed.dim() != 1) return false;
  RecurrentSplit split = maximal_stationary_state(channel, tol);
  return split.recurrent.dim() == channel.dim;
}

}  // namespace dfskit
