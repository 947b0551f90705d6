// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dfskit/mps.hpp"
#include "support/synth.hpp"

using namespace dfskit;

namespace {

constexpr double kPi = std::numbers::pi;

MpsTensor gauge_twin(const MpsTensor& b, double theta, const Matrix& u) {
  std::vector<Matrix> mats;
  Complex w = std::exp(Complex(0, theta));
  for (const auto& m : b.matrices) mats.push_back(w * u * m * u.adjoint());
  return MpsTensor::from_matrices(std::move(mats));
}

}  // namespace

TEST_CASE("from_matrices validates shapes") {
  CHECK_THROWS_AS(MpsTensor::from_matrices({}), Error);
  CHECK_THROWS_AS(
      MpsTensor::from_matrices({Matrix::Identity(2, 2), Matrix::Identity(3, 3)}),
      Error);
  auto t = MpsTensor::from_matrices({Matrix::Identity(2, 2), Matrix::Zero(2, 2)});
  CHECK(t.phys_dim == 2);
  CHECK(t.bond_dim == 2);
}

TEST_CASE("transfer_map matches the kron formula and associated_channel") {
  std::mt19937_64 rng(83);
  auto a = synth::random_irreducible_tensor(3, 2, rng);
  Matrix t = transfer_map(a, a);
  Matrix direct = Matrix::Zero(9, 9);
  for (const auto& m : a.matrices) direct += kron(m, m.conjugate());
  CHECK((t - direct).norm() < 1e-14);
  CHECK((t - matrix_rep(associated_channel(a))).norm() < 1e-14);
}

TEST_CASE("is_irreducible_tensor") {
  std::mt19937_64 rng(89);
  CHECK(is_irreducible_tensor(synth::random_irreducible_tensor(3, 3, rng)));
  // Unitary channel with distinct eigenphases: CPTP but reducible.
  Matrix u = Matrix::Zero(2, 2);
  u(0, 0) = 1;
  u(1, 1) = Complex(0, 1);
  CHECK_FALSE(is_irreducible_tensor(MpsTensor::from_matrices({u})));
  // Not even trace preserving.
  CHECK_FALSE(is_irreducible_tensor(
      MpsTensor::from_matrices({0.5 * Matrix::Identity(2, 2)})));
}

TEST_CASE("is_repeated detects gauge twins with the right phase") {
  std::mt19937_64 rng(97);
  for (double theta : {0.0, kPi / 3, -kPi / 2, kPi}) {
    auto b = synth::random_irreducible_tensor(3, 2, rng);
    Matrix u = synth::random_unitary(3, rng);
    auto a = gauge_twin(b, theta, u);
    auto verdict = is_repeated(a, b);
    REQUIRE(verdict.repeated);
    CHECK(std::abs(std::exp(Complex(0, verdict.theta)) -
                   std::exp(Complex(0, theta))) < 1e-9);
    // Intertwiner correct up to a global phase: check the relation itself.
    Complex w = std::exp(Complex(0, verdict.theta));
    for (size_t k = 0; k < b.matrices.size(); ++k) {
      CHECK((a.matrices[k] - w * verdict.intertwiner * b.matrices[k] *
                                 verdict.intertwiner.adjoint())
                .norm() < 1e-9);
    }
  }
}

TEST_CASE("is_repeated rejects unrelated pairs and unequal bond dimensions") {
  std::mt19937_64 rng(101);
  for (int found = 0; found < 3;) {
    auto a = synth::random_irreducible_tensor(3, 2, rng);
    auto b = synth::random_irreducible_tensor(3, 2, rng);
    if (synth::cross_spectral_radius(a.matrices, b.matrices) >= 1.0 - 1e-2)
      continue;
    CHECK_FALSE(is_repeated(a, b).repeated);
    ++found;
  }
  auto small = synth::random_irreducible_tensor(2, 2, rng);
  auto large = synth::random_irreducible_tensor(3, 2, rng);
  CHECK_FALSE(is_repeated(small, large).repeated);
}

TEST_CASE("is_repeated enforces the irreducibility precondition") {
  std::mt19937_64 rng(103);
  auto good = synth::random_irreducible_tensor(2, 2, rng);
  auto bad = MpsTensor::from_matrices(
      {Matrix::Identity(2, 2), Matrix::Zero(2, 2)});  // not CPTP-irreducible
  CHECK_THROWS_AS(is_repeated(good, bad), Error);
  CHECK_THROWS_AS(is_repeated(bad, good), Error);
}

TEST_CASE("expand computes trace products in row-major order") {
  Matrix a0(2, 2), a1(2, 2);
  a0 << 1, 0, 0, 0;
  a1 << 0, 1, 1, 0;
  auto t = MpsTensor::from_matrices({a0, a1});
  auto v = expand(t, 2);
  REQUIRE(v.size() == 4);
  // Entries: tr(a0 a0)=1, tr(a0 a1)=0, tr(a1 a0)=0, tr(a1 a1)=2.
  CHECK(std::abs(v(0) - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(v(1)) < 1e-14);
  CHECK(std::abs(v(2)) < 1e-14);
  CHECK(std::abs(v(3) - Complex(2, 0)) < 1e-14);

  // Brute-force comparison on a random tensor.
  std::mt19937_64 rng(107);
  auto r = synth::random_irreducible_tensor(2, 3, rng);
  auto e3 = expand(r, 3);
  for (int k1 = 0; k1 < 3; ++k1) {
    for (int k2 = 0; k2 < 3; ++k2) {
      for (int k3 = 0; k3 < 3; ++k3) {
        Complex want =
            (r.matrices[size_t(k1)] * r.matrices[size_t(k2)] * r.matrices[size_t(k3)])
                .trace();
        CHECK(std::abs(e3(k1 * 9 + k2 * 3 + k3) - want) < 1e-12);
      }
    }
  }
}

TEST_CASE("expand enforces the size cap") {
  std::mt19937_64 rng(109);
  auto t = synth::random_irreducible_tensor(2, 10, rng);
  CHECK_THROWS_AS(expand(t, 7), Error);  // 10^7 > 10^6
  CHECK(expand(t, 6).size() == 1000000);
}

TEST_CASE("repeated tensors expand to phase-shifted amplitudes") {
  std::mt19937_64 rng(113);
  auto b = synth::random_irreducible_tensor(3, 2, rng);
  double theta = 2 * kPi / 7;
  auto a = gauge_twin(b, theta, synth::random_unitary(3, rng));
  for (int n = 1; n <= 5; ++n) {
    Vector va = expand(a, n);
    Vector vb = expand(b, n);
    CHECK((va - std::exp(Complex(0, n * theta)) * vb).norm() < 1e-9);
  }
}

TEST_CASE("basis_dedup merges repeats with phased weights") {
  std::mt19937_64 rng(127);
  auto b = synth::random_irreducible_tensor(2, 2, rng);
  double theta = kPi / 5;
  auto a = gauge_twin(b, theta, synth::random_unitary(2, rng));
  auto c = synth::random_irreducible_tensor(3, 2, rng);

  WeightedTensor wb{b, {Complex(1, 0)}};
  WeightedTensor wa{a, {Complex(0.5, 0)}};
  WeightedTensor wc{c, {Complex(2, 0)}};
  auto reps = basis_dedup({wb, wa, wc});
  REQUIRE(reps.size() == 2);
  // The merged representative carries mu * e^{i theta} for the twin.
  const auto& merged = reps[0];
  REQUIRE(merged.weights.size() == 2);
  CHECK(std::abs(merged.weights[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(merged.weights[1] - 0.5 * std::exp(Complex(0, theta))) < 1e-9);

  // Pairwise non-repeated output.
  for (size_t i = 0; i < reps.size(); ++i) {
    for (size_t j = i + 1; j < reps.size(); ++j) {
      if (reps[i].tensor.bond_dim != reps[j].tensor.bond_dim) continue;
      CHECK_FALSE(is_repeated(reps[i].tensor, reps[j].tensor).repeated);
    }
  }
}

TEST_CASE("mps_sum equals the naive weighted sum of expansions") {
  std::mt19937_64 rng(131);
  auto b = synth::random_irreducible_tensor(2, 2, rng);
  auto a = gauge_twin(b, kPi / 6, synth::random_unitary(2, rng));
  auto c = synth::random_irreducible_tensor(3, 2, rng);
  std::vector<WeightedTensor> terms = {{b, {Complex(1, 0)}},
                                       {a, {Complex(0, 0.5)}},
                                       {c, {Complex(-0.25, 0.1)}}};
  auto deduped = basis_dedup(terms);
  for (int n = 1; n <= 4; ++n) {
    Vector naive = Vector::Zero(Eigen::Index(std::pow(2, n)));
    for (const auto& wt : terms) {
      naive += std::pow(wt.weights[0], n) * expand(wt.tensor, n);
    }
    CHECK((mps_sum(deduped, n) - naive).norm() < 1e-9);
  }
}
