// SPDX-License-Identifier: Apache-2.0
//
// Quantum-channel data model: Kraus representation, application to
// operators, matrix representation, CPTP validation, adjoint,
// restriction to invariant subspaces, and cross-block associated maps.

#ifndef DFSKIT_CHANNEL_HPP
#define DFSKIT_CHANNEL_HPP

#include <vector>

#include "dfskit/numerics.hpp"
#include "dfskit/types.hpp"

namespace dfskit {

struct KrausChannel {
  Eigen::Index dim = 0;
  std::vector<Matrix> kraus;  // nonempty, each dim x dim

  static KrausChannel from_kraus(std::vector<Matrix> ops);
};

struct CptpReport {
  bool trace_preserving = false;
  double defect = 0.0;  // ||sum E_k^dag E_k - I||
};

// Cross-block associated map between two invariant subspaces: the
// matrix representation of X -> sum_k (Vp^dag E_k Vp) X (Vq^dag E_k Vq)^dag
// acting on L(H_q, H_p) under the row-major vec convention.
struct CrossMap {
  SubspaceBasis left_basis;   // H_p
  SubspaceBasis right_basis;  // H_q
  Matrix rep;                 // (d_p d_q) x (d_p d_q)
};

// sum_k E_k X E_k^dag.
Matrix apply(const KrausChannel& channel, const Matrix& x);

// M = sum_k E_k kron conj(E_k); vec(apply(channel, X)) = M vec(X).
Matrix matrix_rep(const KrausChannel& channel);

CptpReport is_cptp(const KrausChannel& channel, double tol = kDefaultTol);

// Dual map, Kraus {E_k^dag}.
KrausChannel adjoint(const KrausChannel& channel);

// Largest invariance residual max_k ||(I - V V^dag) E_k V|| relative
// to max_k ||E_k||, with the index of the worst Kraus operator.
struct InvarianceResidual {
  double residual = 0.0;
  size_t worst_kraus = 0;
};
InvarianceResidual invariance_residual(const KrausChannel& channel,
                                       const SubspaceBasis& v);

// Channel on dim(V) with Kraus {V^dag E_k V}. Requires V invariant;
// throws with the worst offending Kraus index otherwise.
KrausChannel restrict(const KrausChannel& channel, const SubspaceBasis& v,
                      double tol = kDefaultTol);

CrossMap cross_map(const KrausChannel& channel, const SubspaceBasis& v_p,
                   const SubspaceBasis& v_q, double tol = kDefaultTol);

}  // namespace dfskit

#endif  // DFSKIT_CHANNEL_HPP
