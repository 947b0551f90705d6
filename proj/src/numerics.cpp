// SPDX-License-Identifier: Apache-2.0

#include "dfskit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dfskit {

namespace {

// Phase in [0, 2*pi) used for canonical eigenvalue ordering.
double phase_02pi(Complex z) {
  double p = std::arg(z);
  if (p < 0) p += 2.0 * std::numbers::pi;
  return p;
}

}  // namespace

double wrap_phase(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta <= -std::numbers::pi) theta += two_pi;
  if (theta > std::numbers::pi) theta -= two_pi;
  return theta;
}

std::vector<EigenPair> eig(const Matrix& a) {
  require(a.rows() == a.cols(), "eig: matrix must be square");
  require(a.allFinite(), "eig: matrix has non-finite entries");
  Eigen::ComplexEigenSolver<Matrix> solver(a, /*computeEigenvectors=*/true);
  require(solver.info() == Eigen::Success, "eig: iteration did not converge");

  const Eigen::Index n = a.rows();
  std::vector<EigenPair> pairs(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    pairs[static_cast<size_t>(i)].value = solver.eigenvalues()(i);
    Vector v = solver.eigenvectors().col(i);
    pairs[static_cast<size_t>(i)].vector = v / v.norm();
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const EigenPair& x, const EigenPair& y) {
                     double ax = std::abs(x.value), ay = std::abs(y.value);
                     if (ax != ay) return ax > ay;
                     return phase_02pi(x.value) < phase_02pi(y.value);
                   });
  return pairs;
}

std::vector<EigenPair> peripheral_eigenpairs(const Matrix& a, double tol) {
  std::vector<EigenPair> all = eig(a);
  std::vector<EigenPair> out;
  for (auto& p : all) {
    if (std::abs(p.value) >= 1.0 - tol) out.push_back(std::move(p));
  }
  return out;
}

SubspaceBasis null_space(const Matrix& a, double tol) {
  require(a.allFinite(), "null_space: matrix has non-finite entries");
  if (a.size() == 0) return SubspaceBasis{Matrix::Identity(a.cols(), a.cols())};
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  // Floor the threshold at tol itself: a matrix that is zero up to
  // round-off (sigma_max ~ machine epsilon) has a full null space, which
  // a purely relative cutoff would misread as full rank.
  const double threshold = tol * std::max(sigma_max, 1.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  const Eigen::Index nullity = a.cols() - rank;
  return SubspaceBasis{svd.matrixV().rightCols(nullity)};
}

Matrix polar_unitary(const Matrix& x, double tol) {
  require(x.rows() == x.cols(), "polar_unitary: matrix must be square");
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  if (sigma.size() == 0 || sigma(sigma.size() - 1) <= tol * sigma_max) {
    throw Error("polar_unitary: matrix is singular at tolerance; "
                "no well-defined unitary factor");
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

SubspaceBasis orthonormalize(const std::vector<Vector>& vectors, double tol) {
  if (vectors.empty()) return SubspaceBasis{Matrix(0, 0)};
  const Eigen::Index n = vectors.front().size();
  double scale = 0.0;
  for (const auto& v : vectors) {
    require(v.size() == n, "orthonormalize: inconsistent vector lengths");
    scale = std::max(scale, v.norm());
  }
  if (scale == 0.0) return SubspaceBasis{Matrix(n, 0)};

  std::vector<Vector> residual = vectors;
  std::vector<Vector> basis;
  // Column pivoting: repeatedly take the largest remaining residual,
  // normalize, and deflate the rest (two projection passes).
  while (true) {
    size_t best = 0;
    double best_norm = 0.0;
    for (size_t i = 0; i < residual.size(); ++i) {
      double r = residual[i].norm();
      if (r > best_norm) {
        best_norm = r;
        best = i;
      }
    }
    if (best_norm <= tol * scale) break;
    Vector q = residual[best] / best_norm;
    basis.push_back(q);
    residual.erase(residual.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& v : residual) {
      v -= q * (q.dot(v));
      v -= q * (q.dot(v));
    }
  }
  Matrix b(n, static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    b.col(static_cast<Eigen::Index>(i)) = basis[i];
  }
  return SubspaceBasis{std::move(b)};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vec(const Matrix& x) {
  Vector v(x.size());
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) v(idx++) = x(i, j);
  }
  return v;
}

Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  require(v.size() == rows * cols, "unvec: size mismatch");
  Matrix x(rows, cols);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) x(i, j) = v(idx++);
  }
  return x;
}

}  // namespace dfskit
