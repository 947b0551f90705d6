// SPDX-License-Identifier: Apache-2.0
//
// Fixed-point space of a channel, maximal stationary state,
// recurrent/decay splitting, and irreducibility testing.

#ifndef DFSKIT_FIXEDPOINT_HPP
#define DFSKIT_FIXEDPOINT_HPP

#include <vector>

#include "dfskit/channel.hpp"

namespace dfskit {

struct FixedPointSpace {
  Eigen::Index channel_dim = 0;
  std::vector<Matrix> basis;            // spans fix(E) over C
  std::vector<Matrix> hermitian_basis;  // Hermitian spanning set, trace-orthonormal
};

struct RecurrentSplit {
  SubspaceBasis recurrent;  // support of the maximal stationary state
  SubspaceBasis decay;      // orthogonal complement K
  Matrix stationary;        // rho_inf, positive, unit trace
};

// Basis of {X : E(X) = X} from the null space of matrix_rep - I,
// plus an equivalent Hermitian spanning set (fix(E) is dagger-closed
// for CPTP channels).
FixedPointSpace fixed_point_space(const KrausChannel& channel,
                                  double tol = kDefaultTol);

// Stationary state of maximal support, via the spectral projector of
// matrix_rep at eigenvalue 1 applied to vec(I/D). Throws if no
// eigenvalue 1 is found (non-CPTP data).
RecurrentSplit maximal_stationary_state(const KrausChannel& channel,
                                        double tol = kDefaultTol);

// True iff the eigenvalue-1 eigenspace of matrix_rep is 1-dimensional
// and the stationary state is full rank.
bool is_irreducible(const KrausChannel& channel, double tol = kDefaultTol);

}  // namespace dfskit

#endif  // DFSKIT_FIXEDPOINT_HPP
