// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "dfskit/numerics.hpp"
#include "support/synth.hpp"

using namespace dfskit;

namespace {

Matrix diag3(Complex a, Complex b, Complex c) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 0) = a;
  m(1, 1) = b;
  m(2, 2) = c;
  return m;
}

}  // namespace

TEST_CASE("eig: identity and diagonal matrices") {
  auto pairs = eig(Matrix::Identity(3, 3));
  REQUIRE(pairs.size() == 3);
  for (const auto& p : pairs) {
    CHECK(std::abs(p.value - Complex(1, 0)) < 1e-12);
    CHECK(std::abs(p.vector.norm() - 1.0) < 1e-12);
  }

  auto d = eig(diag3(2, -1, Complex(0, 1)));
  // Canonical order: descending modulus, then ascending phase.
  CHECK(std::abs(d[0].value - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(d[1].value - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(d[2].value - Complex(-1, 0)) < 1e-12);
}

TEST_CASE("eig: companion matrix of z^3 - 1 has the cube roots of unity") {
  Matrix c = Matrix::Zero(3, 3);
  c(0, 2) = 1;
  c(1, 0) = 1;
  c(2, 1) = 1;
  auto pairs = eig(c);
  // Closed-form roots, sorted by ascending phase in [0, 2 pi).
  const double w = 2.0 * std::numbers::pi / 3.0;
  REQUIRE(pairs.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(std::abs(pairs[i].value) - 1.0) < 1e-12);
    CHECK(std::abs(pairs[i].value - std::exp(Complex(0, w * double(i)))) < 1e-10);
    CHECK((c * pairs[i].vector - pairs[i].value * pairs[i].vector).norm() < 1e-10);
  }
}

TEST_CASE("eig: trace and determinant consistency on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = synth::random_gaussian(5, 5, rng);
    auto pairs = eig(a);
    Complex sum = 0, prod = 1;
    for (const auto& p : pairs) {
      sum += p.value;
      prod *= p.value;
    }
    CHECK(std::abs(sum - a.trace()) < 10 * 1e-9 * a.norm());
    CHECK(std::abs(prod - a.determinant()) < 1e-7 * std::abs(a.determinant()) + 1e-9);
  }
}

TEST_CASE("eig rejects non-square input") {
  CHECK_THROWS_AS(eig(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("peripheral_eigenpairs filters by modulus") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 0.5;
  auto pairs = peripheral_eigenpairs(d, 1e-6);
  REQUIRE(pairs.size() == 1);
  CHECK(std::abs(pairs[0].value - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(std::abs(pairs[0].vector(0)) - 1.0) < 1e-12);

  Matrix d2 = Matrix::Zero(2, 2);
  d2(0, 0) = std::exp(Complex(0, std::numbers::pi / 3));
  d2(1, 1) = Complex(0, 0.99);
  auto pairs2 = peripheral_eigenpairs(d2, 1e-6);
  REQUIRE(pairs2.size() == 1);
  CHECK(std::abs(pairs2[0].value - d2(0, 0)) < 1e-12);
}

TEST_CASE("peripheral set is a sublist of the full spectrum") {
  std::mt19937_64 rng(11);
  Matrix u = synth::random_unitary(4, rng);
  auto all = eig(u);
  auto peripheral = peripheral_eigenpairs(u, 1e-9);
  CHECK(peripheral.size() == all.size());  // unitary: everything peripheral
  for (const auto& p : peripheral) CHECK(std::abs(p.value) >= 1 - 1e-9);
}

TEST_CASE("null_space: zero, full-rank, and rank-deficient inputs") {
  auto z = null_space(Matrix::Zero(2, 2), 1e-9);
  CHECK(z.dim() == 2);

  std::mt19937_64 rng(3);
  Matrix full = synth::random_unitary(3, rng);
  CHECK(null_space(full, 1e-9).dim() == 0);

  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1;  // rank 1
  auto n = null_space(a, 1e-9);
  CHECK(n.dim() == 2);
  CHECK(n.isometry_defect() < 1e-12);
  CHECK((a * n.columns).norm() < 1e-12);
}

TEST_CASE("polar_unitary: scaling invariance and near-singular rejection") {
  CHECK((polar_unitary(2.0 * Matrix::Identity(3, 3)) - Matrix::Identity(3, 3))
            .norm() < 1e-12);

  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK((polar_unitary(3.0 * h) - h).norm() < 1e-12);

  Matrix near_singular = Matrix::Zero(2, 2);
  near_singular(0, 0) = 1;
  near_singular(1, 1) = 1e-14;
  CHECK_THROWS_AS(polar_unitary(near_singular, 1e-9), Error);
}

TEST_CASE("polar_unitary recovers a scaled random unitary") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix u = synth::random_unitary(4, rng);
    Matrix v = polar_unitary(2.5 * u);
    CHECK((v - u).norm() < 1e-12);
    CHECK((v.adjoint() * v - Matrix::Identity(4, 4)).norm() < 1e-12);
  }
}

TEST_CASE("orthonormalize drops duplicates and keeps spans") {
  Vector e1 = Vector::Zero(3), e2 = Vector::Zero(3);
  e1(0) = 1;
  e2(1) = 1;
  auto b = orthonormalize({e1, e1, e2});
  CHECK(b.dim() == 2);

  auto b2 = orthonormalize({e1 + e2, e1 - e2});
  CHECK(b2.dim() == 2);
  CHECK(b2.isometry_defect() < 1e-12);
  // Same plane: e1 must be representable.
  Vector coeffs = b2.columns.adjoint() * e1;
  CHECK((b2.columns * coeffs - e1).norm() < 1e-12);
}

TEST_CASE("orthonormalize: rank of random overcomplete sets") {
  std::mt19937_64 rng(23);
  std::vector<Vector> vectors;
  Matrix stacked(3, 5);
  for (int i = 0; i < 5; ++i) {
    vectors.push_back(synth::random_gaussian(3, 1, rng).col(0));
    stacked.col(i) = vectors.back();
  }
  // Independent rank check through singular values.
  Eigen::JacobiSVD<Matrix> svd(stacked);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) > 1e-9 * svd.singularValues()(0)) ++rank;
  }
  CHECK(rank == 3);
  CHECK(orthonormalize(vectors).dim() == 3);
}

TEST_CASE("vec/unvec row-major round trip and kron identity") {
  std::mt19937_64 rng(5);
  Matrix a = synth::random_gaussian(3, 2, rng);
  CHECK((unvec(vec(a), 3, 2) - a).norm() == 0.0);

  // vec(A X B) = (A kron B^T) vec(X) under the row-major convention.
  Matrix x = synth::random_gaussian(2, 4, rng);
  Matrix m = synth::random_gaussian(3, 2, rng);
  Matrix b = synth::random_gaussian(4, 5, rng);
  CHECK((vec(m * x * b) - kron(m, b.transpose()) * vec(x)).norm() < 1e-12);
}

TEST_CASE("wrap_phase maps into (-pi, pi]") {
  CHECK(wrap_phase(3 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(0.25) == doctest::Approx(0.25));
}
