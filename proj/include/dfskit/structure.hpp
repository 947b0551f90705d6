// SPDX-License-Identifier: Apache-2.0
//
// Minimal-subspace extraction, stationary/continuous coherence tests,
// coherence equivalence classes, phase alignment, and the full block
// decomposition of a channel into C^m (x) B factors joined by
// continuous coherences, plus the stationary-only (noiseless) variant.

#ifndef DFSKIT_STRUCTURE_HPP
#define DFSKIT_STRUCTURE_HPP

#include <cstdint>
#include <vector>

#include "dfskit/fixedpoint.hpp"

namespace dfskit {

struct MinimalSubspace {
  SubspaceBasis basis;
  size_t index = 0;
};

enum class CoherenceKind { none, stationary, continuous };

struct CoherenceVerdict {
  CoherenceKind kind = CoherenceKind::none;
  // E_{k,p} = e^{i theta} U E_{k,q} U^dag for all k; theta in (-pi, pi],
  // 0 when stationary. U maps H_q coordinates to H_p coordinates.
  double theta = 0.0;
  Matrix intertwiner;
};

struct StructureBlock {
  Eigen::Index m = 0;      // number of joined minimal subspaces
  Eigen::Index b_dim = 0;  // dimension of the common co-subsystem factor
  // Basis-change isometry, ambient_dim x (m * b_dim); column
  // (p * b_dim + j) is the j-th co-subsystem vector of member p.
  SubspaceBasis w;
  std::vector<double> phases;      // size m, ascending, phases[0] == 0
  std::vector<Matrix> base_kraus;  // b_dim x b_dim, CPTP and irreducible
  Matrix rho;                      // unique stationary state of the base channel
};

struct StructureDecomposition {
  std::vector<StructureBlock> blocks;
  SubspaceBasis decay;
};

struct BlockFormReport {
  double inter_block_residual = 0.0;  // couplings between distinct blocks
  double lower_left_residual = 0.0;   // recurrent -> decay couplings
  double in_block_residual = 0.0;     // deviation from diag(e^{i theta}) (x) E_{k,l}
  double decay_coupling_norm = 0.0;   // T_k blocks, unconstrained, reported only
  double decay_block_norm = 0.0;      // K_k blocks, unconstrained, reported only

  double max_constrained() const {
    return std::max({inter_block_residual, lower_left_residual,
                     in_block_residual});
  }
};

// Maximal list of mutually orthogonal minimal subspaces spanning the
// recurrent subspace, via the center of the fixed-point algebra of the
// adjoint channel and seeded generic Hermitian elements. Generic draws
// are validated and retried (bounded); exhaustion throws.
std::vector<MinimalSubspace> minimal_subspaces(const KrausChannel& channel,
                                               double tol = kDefaultTol,
                                               std::uint64_t seed = 0);

// Coherence test between two orthogonal minimal subspaces.
CoherenceVerdict coherence(const KrausChannel& channel,
                           const MinimalSubspace& p, const MinimalSubspace& q,
                           double tol = kDefaultTol);

// Partition of minimal-subspace indices under the continuous-coherence
// relation (stationary-only when stationary_only is set). Transitivity
// of the pairwise verdicts is asserted; a violation throws.
std::vector<std::vector<size_t>> equivalence_classes(
    const KrausChannel& channel, const std::vector<MinimalSubspace>& minimals,
    double tol = kDefaultTol, bool stationary_only = false);

// Phase alignment of one coherence class against its first member:
// per-member eigenphases and intertwiners, plus the phase-adjusted
// restricted Kraus sets (all unitarily equivalent after alignment).
struct AlignedClass {
  std::vector<size_t> members;          // class indices, representative first
  std::vector<double> phases;           // eigenphase per member, phases[0] == 0
  std::vector<Matrix> intertwiners;     // representative coords -> member coords
  std::vector<std::vector<Matrix>> adjusted_kraus;  // e^{-i theta_p} E_{k,p}
};
AlignedClass phase_align(const KrausChannel& channel,
                         const std::vector<MinimalSubspace>& minimals,
                         const std::vector<size_t>& class_members,
                         double tol = kDefaultTol,
                         bool stationary_only = false);

StructureDecomposition structure_decomposition(const KrausChannel& channel,
                                               double tol = kDefaultTol,
                                               std::uint64_t seed = 0);

// Same pipeline with classes formed under stationary coherence only;
// all reported phases are 0 and the result coincides with the
// fixed-point decomposition.
StructureDecomposition noiseless_decomposition(const KrausChannel& channel,
                                               double tol = kDefaultTol,
                                               std::uint64_t seed = 0);

BlockFormReport verify_block_form(const KrausChannel& channel,
                                  const StructureDecomposition& decomposition,
                                  double tol = kDefaultTol);

}  // namespace dfskit

#endif  // DFSKIT_STRUCTURE_HPP
