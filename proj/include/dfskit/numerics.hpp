// SPDX-License-Identifier: Apache-2.0
//
// Dense complex-matrix primitives with explicit tolerance handling:
// general (non-Hermitian) eigendecomposition, null spaces, peripheral
// spectrum extraction, polar factors and orthonormalization.

#ifndef DFSKIT_NUMERICS_HPP
#define DFSKIT_NUMERICS_HPP

#include <vector>

#include "dfskit/types.hpp"

namespace dfskit {

struct EigenPair {
  Complex value;
  Vector vector;  // unit norm
};

// All n eigenpairs of a square matrix, ordered by descending |lambda|,
// ties broken by ascending phase in [0, 2*pi). For defective matrices
// the vector set may be rank deficient; each pair still satisfies the
// residual bound individually. Throws on non-square input or solver
// non-convergence.
std::vector<EigenPair> eig(const Matrix& a);

// Sublist of eig(a) with |lambda| >= 1 - tol, same ordering.
std::vector<EigenPair> peripheral_eigenpairs(const Matrix& a,
                                             double tol = kDefaultTol);

// Orthonormal basis of {x : ||A x|| <= tol * ||A||}; rank decided by
// singular values sigma_i > tol * sigma_max.
SubspaceBasis null_space(const Matrix& a, double tol = kDefaultTol);

// Unitary factor U of the polar decomposition X = U P, P positive.
// Requires X invertible up to tolerance (sigma_min > tol * sigma_max);
// otherwise throws, so coherence tests fail rather than fabricate U.
Matrix polar_unitary(const Matrix& x, double tol = kDefaultTol);

// Gram-Schmidt with column pivoting; drops vectors whose residual norm
// after projection is <= tol relative to the largest input norm.
SubspaceBasis orthonormalize(const std::vector<Vector>& vectors,
                             double tol = kDefaultTol);

// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

// Row-major vectorization: vec stacks rows, so vec(A X B) =
// (A kron B^T) vec(X).
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Eigen::Index rows, Eigen::Index cols);

// Normalize a phase to (-pi, pi].
double wrap_phase(double theta);

}  // namespace dfskit

#endif  // DFSKIT_NUMERICS_HPP
