// SPDX-License-Identifier: Apache-2.0
//
// Enumeration of maximal decoherence-free subsystems from a block
// decomposition, candidate-subsystem testing, randomized verification
// of the defining product-state property, and capacity reporting.

#ifndef DFSKIT_DFS_HPP
#define DFSKIT_DFS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dfskit/structure.hpp"

namespace dfskit {

struct DfsBlock {
  size_t block_index = 0;
  Eigen::Index subsystem_dim = 0;    // m_l
  Eigen::Index cosubsystem_dim = 0;  // dim B_l
  Matrix unitary;                    // diagonal m_l x m_l, first entry 1
  SubspaceBasis embed;               // the W_l isometry
};

struct DfsVerificationReport {
  int samples = 0;
  double max_factorization_error = 0.0;
  double max_unitary_error = 0.0;
  std::uint64_t seed = 0;
};

struct CapacityEntry {
  size_t block_index = 0;
  double dfs_qubits = 0.0;        // log2 m_l
  double noiseless_qubits = 0.0;  // log2 of the largest equal-phase cluster
};

// One maximal decoherence-free subsystem per block: the full C^{m_l}
// with the block's diagonal eigenphase unitary.
std::vector<DfsBlock> maximal_dfs(const StructureDecomposition& decomposition);

// True iff the projector onto the candidate subspace of C^{m_l}
// commutes with the block unitary within tol.
bool is_dfs(const StructureDecomposition& decomposition, size_t block_index,
            const SubspaceBasis& candidate, double tol = kDefaultTol);

// Randomized check of the defining property: seeded random product
// states rho_A (x) rho_B are embedded, evolved once, and tested for
// factorization and for the unitary action on the subsystem factor.
// Leakage outside the block counts toward the factorization error.
DfsVerificationReport verify_definition(const KrausChannel& channel,
                                        const DfsBlock& dfs, int samples,
                                        std::uint64_t seed,
                                        double tol = kDefaultTol);

std::vector<CapacityEntry> capacity_report(
    const StructureDecomposition& decomposition, double tol = kDefaultTol);

// Partial traces over the second / first tensor factor of a
// (da*db) x (da*db) matrix with row-major index i = a*db + b.
Matrix partial_trace_second(const Matrix& x, Eigen::Index da, Eigen::Index db);
Matrix partial_trace_first(const Matrix& x, Eigen::Index da, Eigen::Index db);

// Seeded random density matrix G G^dag / tr(G G^dag), complex Gaussian G.
Matrix random_density_matrix(Eigen::Index dim, std::mt19937_64& rng);

}  // namespace dfskit

#endif  // DFSKIT_DFS_HPP
