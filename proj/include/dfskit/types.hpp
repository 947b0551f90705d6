// SPDX-License-Identifier: Apache-2.0

#ifndef DFSKIT_TYPES_HPP
#define DFSKIT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dfskit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Default relative tolerance for all rank / magnitude-one / residual
// decisions. Overridable everywhere; threaded explicitly, no globals.
inline constexpr double kDefaultTol = 1e-9;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numerically guaranteed relation fails to hold at the
// working tolerance (e.g. a peripheral eigenvector that should be
// proportional to a unitary is not). Indicates a tolerance breach,
// never a silent negative.
class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& what) : Error(what) {}
};

// An isometry: orthonormal columns identifying a subspace of the
// ambient space. dim() == number of columns.
struct SubspaceBasis {
  Matrix columns;  // ambient_dim x dim, V with V^dagger V = I

  Eigen::Index ambient_dim() const { return columns.rows(); }
  Eigen::Index dim() const { return columns.cols(); }

  // Frobenius deviation of V^dagger V from the identity.
  double isometry_defect() const {
    if (columns.cols() == 0) return 0.0;
    Matrix g = columns.adjoint() * columns;
    g.diagonal().array() -= 1.0;
    return g.norm();
  }
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

}  // namespace dfskit

#endif  // DFSKIT_TYPES_HPP
