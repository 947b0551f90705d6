// SPDX-License-Identifier: Apache-2.0

#include "dfskit/mps.hpp"

#include <cmath>
#include <string>

#include "dfskit/fixedpoint.hpp"
#include "dfskit/numerics.hpp"

namespace dfskit {

MpsTensor MpsTensor::from_matrices(std::vector<Matrix> mats) {
  require(!mats.empty(), "MpsTensor: empty matrix list");
  const Eigen::Index d = mats.front().rows();
  for (const auto& m : mats) {
    require(m.rows() == d && m.cols() == d,
            "MpsTensor: matrices must be square and equal-sized");
    require(m.allFinite(), "MpsTensor: non-finite entries");
  }
  return MpsTensor{static_cast<Eigen::Index>(mats.size()), d, std::move(mats)};
}

Matrix transfer_map(const MpsTensor& a, const MpsTensor& b) {
  require(a.phys_dim == b.phys_dim, "transfer_map: physical dimensions differ");
  const Eigen::Index n = a.bond_dim * b.bond_dim;
  Matrix rep = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < a.phys_dim; ++k) {
    rep += kron(a.matrices[static_cast<size_t>(k)],
                b.matrices[static_cast<size_t>(k)].conjugate());
  }
  return rep;
}

KrausChannel associated_channel(const MpsTensor& a) {
  return KrausChannel{a.bond_dim, a.matrices};
}

bool is_irreducible_tensor(const MpsTensor& a, double tol) {
  KrausChannel channel = associated_channel(a);
  if (!is_cptp(channel, tol).trace_preserving) return false;
  return is_irreducible(channel, tol);
}

RepeatedVerdict is_repeated(const MpsTensor& a, const MpsTensor& b,
                            double tol) {
  require(a.phys_dim == b.phys_dim, "is_repeated: physical dimensions differ");
  require(is_irreducible_tensor(a, tol),
          "is_repeated: first tensor is not irreducible");
  require(is_irreducible_tensor(b, tol),
          "is_repeated: second tensor is not irreducible");

  RepeatedVerdict verdict;
  // The unitary relation forces equal bond dimension.
  if (a.bond_dim != b.bond_dim) return verdict;

  Matrix rep = transfer_map(a, b);
  auto peripheral = peripheral_eigenpairs(rep, tol);
  if (peripheral.empty()) return verdict;

  const EigenPair& pair = peripheral.front();
  Matrix x = unvec(pair.vector, a.bond_dim, b.bond_dim);
  Matrix u;
  try {
    u = polar_unitary(x, tol);
  } catch (const Error&) {
    throw InconsistencyError(
        "is_repeated: peripheral eigenvector of the transfer map is not "
        "proportional to a unitary; suspected tolerance breach");
  }
  const double theta = wrap_phase(std::arg(pair.value));
  const Complex phase_factor = std::exp(Complex(0, theta));
  for (Eigen::Index k = 0; k < a.phys_dim; ++k) {
    const Matrix& ak = a.matrices[static_cast<size_t>(k)];
    const Matrix& bk = b.matrices[static_cast<size_t>(k)];
    double res = (ak - phase_factor * u * bk * u.adjoint()).norm();
    if (res > tol * std::max(ak.norm(), 1.0)) {
      throw InconsistencyError(
          "is_repeated: magnitude-one eigenvalue found but the unitary "
          "relation fails at tolerance (residual " + std::to_string(res) +
          ")");
    }
  }
  verdict.repeated = true;
  verdict.theta = theta;
  verdict.intertwiner = std::move(u);
  return verdict;
}

namespace {

void expand_recurse(const MpsTensor& a, int depth, int n, const Matrix& prefix,
                    std::uint64_t offset, std::uint64_t stride, Vector& out) {
  if (depth == n) {
    out(static_cast<Eigen::Index>(offset)) = prefix.trace();
    return;
  }
  const std::uint64_t next_stride = stride / static_cast<std::uint64_t>(a.phys_dim);
  for (Eigen::Index k = 0; k < a.phys_dim; ++k) {
    expand_recurse(a, depth + 1, n, prefix * a.matrices[static_cast<size_t>(k)],
                   offset + static_cast<std::uint64_t>(k) * next_stride,
                   next_stride, out);
  }
}

}  // namespace

Vector expand(const MpsTensor& a, int n, std::uint64_t cap) {
  require(n >= 1, "expand: n must be positive");
  std::uint64_t size = 1;
  for (int i = 0; i < n; ++i) {
    size *= static_cast<std::uint64_t>(a.phys_dim);
    if (size > cap) {
      throw Error("expand: d^n exceeds the configured cap of " +
                  std::to_string(cap));
    }
  }
  Vector out(static_cast<Eigen::Index>(size));
  expand_recurse(a, 0, n, Matrix::Identity(a.bond_dim, a.bond_dim), 0, size,
                 out);
  return out;
}

std::vector<WeightedTensor> basis_dedup(
    const std::vector<WeightedTensor>& tensors, double tol) {
  std::vector<WeightedTensor> reps;
  for (const auto& wt : tensors) {
    require(!wt.weights.empty(), "basis_dedup: tensor without weights");
    bool merged = false;
    for (auto& rep : reps) {
      if (rep.tensor.phys_dim != wt.tensor.phys_dim) continue;
      RepeatedVerdict v = is_repeated(wt.tensor, rep.tensor, tol);
      if (v.repeated) {
        // mu^n V_n(incoming) = (mu e^{i theta})^n V_n(representative):
        // the per-site phase folds into the weight.
        const Complex factor = std::exp(Complex(0, v.theta));
        for (Complex mu : wt.weights) rep.weights.push_back(mu * factor);
        merged = true;
        break;
      }
    }
    if (!merged) reps.push_back(wt);
  }
  return reps;
}

Vector mps_sum(const std::vector<WeightedTensor>& tensors, int n,
               std::uint64_t cap) {
  require(!tensors.empty(), "mps_sum: empty tensor list");
  Vector out;
  for (const auto& wt : tensors) {
    Vector v = expand(wt.tensor, n, cap);
    Complex coeff = 0;
    for (Complex mu : wt.weights) coeff += std::pow(mu, n);
    if (out.size() == 0) {
      out = coeff * v;
    } else {
      require(out.size() == v.size(), "mps_sum: physical dimensions differ");
      out += coeff * v;
    }
  }
  return out;
}

}  // namespace dfskit
