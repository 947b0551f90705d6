// SPDX-License-Identifier: Apache-2.0
//
// Independent brute-force cross-checks: Cesaro-averaged stationary
// states, support-minimality checks, and block-form reconstruction
// residuals. Deliberately on separate arithmetic routes from the
// operations they check.

#ifndef DFSKIT_ORACLE_HPP
#define DFSKIT_ORACLE_HPP

#include <string>

#include "dfskit/structure.hpp"

namespace dfskit {

struct OracleReport {
  std::string name;
  double discrepancy = 0.0;
  std::string details;
};

// (1/N) sum_{n=1..N} E^n(I/D), N the smallest power of two <= n_max at
// which successive averages differ by <= tol. Hermitized and
// renormalized. Throws on non-convergence within n_max.
Matrix cesaro_stationary(const KrausChannel& channel, int n_max = 512,
                         double tol = kDefaultTol);

// Restricts the channel to the candidate and reports 0 discrepancy iff
// the restriction is irreducible (the operational form of
// support-minimality).
OracleReport check_minimality(const KrausChannel& channel,
                              const SubspaceBasis& candidate,
                              double tol = kDefaultTol);

struct ReconstructionReport {
  KrausChannel rebuilt;
  double max_residual = 0.0;  // max_k ||E_k^rebuilt - E_k||
};

// Rebuilds each Kraus operator from (phases, base Kraus, W_l) with the
// unconstrained decay blocks read off the original channel, and reports
// the reconstruction residual.
ReconstructionReport reconstruct_channel(
    const KrausChannel& channel, const StructureDecomposition& decomposition);

}  // namespace dfskit

#endif  // DFSKIT_ORACLE_HPP
