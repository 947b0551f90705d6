// SPDX-License-Identifier: Apache-2.0

#include "dfskit/builtin_examples.hpp"

namespace dfskit {

KrausChannel paper_example_channel() {
  constexpr Eigen::Index sectors = 4;   // |x>_A
  constexpr Eigen::Index levels = 3;    // |l>_B
  constexpr Eigen::Index dim = sectors * levels;
  auto idx = [](Eigen::Index x, Eigen::Index l) { return x * levels + l; };

  Matrix e1 = Matrix::Zero(dim, dim);
  Matrix e2 = Matrix::Zero(dim, dim);
  Matrix e3 = Matrix::Zero(dim, dim);
  for (Eigen::Index x = 0; x < sectors; ++x) {
    const double sign = x < 2 ? 1.0 : -1.0;
    e1(idx(x, 0), idx(x, 1)) = sign;  // |x0><x1|
    e2(idx(x, 1), idx(x, 0)) = sign;  // |x1><x0|
    e3(idx(x, 0), idx(x, 2)) = sign;  // |x0><x2|
  }
  return KrausChannel::from_kraus({e1, e2, e3});
}

}  // namespace dfskit
