// SPDX-License-Identifier: Apache-2.0
//
// Matrix-product-state tensors: irreducibility, repeated-tensor
// detection via the two-tensor transfer map, basis deduplication, and
// dense MPS expansion as an independent oracle.

#ifndef DFSKIT_MPS_HPP
#define DFSKIT_MPS_HPP

#include <cstdint>
#include <vector>

#include "dfskit/channel.hpp"

namespace dfskit {

struct MpsTensor {
  Eigen::Index phys_dim = 0;  // d
  Eigen::Index bond_dim = 0;  // D
  std::vector<Matrix> matrices;  // A_1..A_d, each D x D

  static MpsTensor from_matrices(std::vector<Matrix> mats);
};

struct WeightedTensor {
  MpsTensor tensor;
  std::vector<Complex> weights;  // nonempty; mu's accumulated on this representative
};

struct RepeatedVerdict {
  bool repeated = false;
  double theta = 0.0;  // present iff repeated; A_k = e^{i theta} U B_k U^dag
  Matrix intertwiner;
};

// Default cap on the dense expansion size d^n.
inline constexpr std::uint64_t kExpandCap = 1'000'000;

// sum_k A_k (x) conj(B_k): the representation of X -> sum_k A_k X B_k^dag.
Matrix transfer_map(const MpsTensor& a, const MpsTensor& b);

// Channel X -> sum_k A_k X A_k^dag associated with a tensor.
KrausChannel associated_channel(const MpsTensor& a);

// CPTP and irreducible.
bool is_irreducible_tensor(const MpsTensor& a, double tol = kDefaultTol);

// Spectral detection: repeated iff the two-tensor transfer map has
// a magnitude-one eigenvalue. Both tensors must be irreducible (checked).
RepeatedVerdict is_repeated(const MpsTensor& a, const MpsTensor& b,
                            double tol = kDefaultTol);

// Dense expansion: entry (k_1..k_n) = tr(A_{k_1} ... A_{k_n}),
// row-major multi-index. Throws when d^n exceeds the cap.
Vector expand(const MpsTensor& a, int n, std::uint64_t cap = kExpandCap);

// Greedy deduplication: each tensor is matched against existing
// representatives; on a repeat with phase theta its weights are merged
// as mu * e^{i theta}. Output representatives are pairwise non-repeated.
std::vector<WeightedTensor> basis_dedup(const std::vector<WeightedTensor>& tensors,
                                        double tol = kDefaultTol);

// sum over representatives and weights of mu^n * expand(tensor, n).
Vector mps_sum(const std::vector<WeightedTensor>& tensors, int n,
               std::uint64_t cap = kExpandCap);

}  // namespace dfskit

#endif  // DFSKIT_MPS_HPP
