// SPDX-License-Identifier: Apache-2.0

#include "dfskit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace dfskit {

namespace {

constexpr int kMaxGenericDraws = 16;

double max_kraus_norm(const KrausChannel& channel) {
  double m = 0.0;
  for (const auto& e : channel.kraus) m = std::max(m, e.norm());
  return m;
}

// Gap-based clustering of ascending eigenvalues: split at gaps larger
// than sqrt(tol) * spread. Returns cluster index ranges [begin, end).
std::vector<std::pair<Eigen::Index, Eigen::Index>> cluster_eigenvalues(
    const RealVector& evals, double tol) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;
  const Eigen::Index n = evals.size();
  if (n == 0) return clusters;
  const double spread = evals(n - 1) - evals(0);
  const double gap = std::sqrt(tol) * std::max(spread, 1.0);
  Eigen::Index begin = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    if (evals(i) - evals(i - 1) > gap) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  clusters.emplace_back(begin, n);
  return clusters;
}

Matrix random_hermitian_combination(const std::vector<Matrix>& basis,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix z = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& h : basis) z += gauss(rng) * h;
  return z;
}

// Orthogonal projection of a Hermitian target onto the real span of a
// trace-orthonormal Hermitian basis.
Matrix project_hermitian_span(const std::vector<Matrix>& basis,
                              const Matrix& target) {
  Matrix z = Matrix::Zero(target.rows(), target.cols());
  for (const auto& h : basis) {
    z += (h.adjoint() * target).trace().real() * h;
  }
  return z;
}

// A fixed ambient diagonal with distinct entries, compressed to the
// recurrent coordinates. Projecting it onto the dual fixed-point algebra
// yields a canonical Hermitian algebra element whose eigenspaces respect
// any block structure already aligned with the input coordinates; random
// draws only serve as a fallback when its spectrum is too degenerate.
Matrix compressed_canonical_diagonal(const SubspaceBasis& rec,
                                     Eigen::Index ambient_dim) {
  RealVector entries(ambient_dim);
  for (Eigen::Index i = 0; i < ambient_dim; ++i) {
    entries(i) = static_cast<double>(i + 1) / static_cast<double>(ambient_dim);
  }
  Matrix d = rec.columns.adjoint() *
             entries.cast<Complex>().asDiagonal() * rec.columns;
  return 0.5 * (d + d.adjoint().eval());
}

// Draw schedule for generic Hermitian algebra elements: the canonical
// diagonal projection first (deterministic, coordinate-respecting), then
// seeded random combinations.
Matrix generic_algebra_element(const std::vector<Matrix>& basis,
                               const Matrix& canonical_seed, int attempt,
                               std::mt19937_64& rng) {
  if (attempt == 0) return project_hermitian_span(basis, canonical_seed);
  return random_hermitian_combination(basis, rng);
}

// Re-express a subspace basis in the eigenbasis of the compressed
// canonical diagonal, with each column's largest-modulus entry made real
// positive. This pins the intra-subspace basis (otherwise an arbitrary
// eigensolver artifact) to the input coordinates whenever the subspace
// is coordinate-aligned, and is a deterministic gauge choice in general.
SubspaceBasis canonicalize_basis(const SubspaceBasis& basis,
                                 Eigen::Index ambient_dim) {
  RealVector entries(ambient_dim);
  for (Eigen::Index i = 0; i < ambient_dim; ++i) {
    entries(i) = static_cast<double>(i + 1) / static_cast<double>(ambient_dim);
  }
  Matrix m = basis.columns.adjoint() *
             entries.cast<Complex>().asDiagonal() * basis.columns;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint().eval()));
  Matrix cols = basis.columns * es.eigenvectors();
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    Eigen::Index imax = 0;
    cols.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex lead = cols(imax, j);
    if (std::abs(lead) > 0) cols.col(j) *= std::abs(lead) / lead;
  }
  return SubspaceBasis{std::move(cols)};
}

// Hermitian elements of the commutant-center of the algebra spanned by
// `basis` inside its own span: X = sum_i c_i F_i with [X, F_j] = 0.
std::vector<Matrix> algebra_center_hermitian(const std::vector<Matrix>& basis,
                                             double tol) {
  const size_t n = basis.size();
  const Eigen::Index d = basis.front().rows();
  Matrix system(static_cast<Eigen::Index>(n) * d * d,
                static_cast<Eigen::Index>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      Matrix comm = basis[i] * basis[j] - basis[j] * basis[i];
      system.block(static_cast<Eigen::Index>(j) * d * d,
                   static_cast<Eigen::Index>(i), d * d, 1) = vec(comm);
    }
  }
  // The basis elements have unit Frobenius norm, so the commutator
  // system's natural scale is 1. An all-zero system (abelian algebra)
  // must yield the full coefficient space; null_space's relative
  // threshold would misread its round-off residue as full rank.
  SubspaceBasis coeffs;
  if (system.norm() <= tol * static_cast<double>(n)) {
    coeffs = SubspaceBasis{Matrix::Identity(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n))};
  } else {
    coeffs = null_space(system, tol);
  }
  std::vector<Matrix> center;
  for (Eigen::Index c = 0; c < coeffs.dim(); ++c) {
    Matrix z = Matrix::Zero(d, d);
    for (size_t i = 0; i < n; ++i) {
      z += coeffs.columns(static_cast<Eigen::Index>(i), c) * basis[i];
    }
    center.push_back(std::move(z));
  }
  // The center is dagger-closed; keep a Hermitian spanning set via
  // pivoted Gram-Schmidt. The rank cut is sqrt(tol) * scale: dependent
  // candidates built from a numerical null space leave round-off
  // residues well above tol * scale that must not be normalized into
  // spurious basis directions.
  std::vector<Matrix> hermitian;
  for (const auto& z : center) {
    hermitian.push_back(z + z.adjoint());
    hermitian.push_back(Complex(0, 1) * (z - z.adjoint()));
  }
  double scale = 0.0;
  for (const auto& h : hermitian) scale = std::max(scale, h.norm());
  std::vector<Matrix> out;
  if (scale == 0.0) return out;
  const double cut = std::sqrt(tol) * scale;
  while (!hermitian.empty()) {
    size_t best = 0;
    double best_norm = 0.0;
    for (size_t i = 0; i < hermitian.size(); ++i) {
      const double r = hermitian[i].norm();
      if (r > best_norm) {
        best_norm = r;
        best = i;
      }
    }
    if (best_norm <= cut) break;
    Matrix q = hermitian[best] / best_norm;
    hermitian.erase(hermitian.begin() + static_cast<std::ptrdiff_t>(best));
    for (auto& h : hermitian) {
      for (int pass = 0; pass < 2; ++pass) {
        h -= (q.adjoint() * h).trace().real() * q;
      }
    }
    out.push_back(std::move(q));
  }
  return out;
}

struct MinimalDecomposition {
  std::vector<MinimalSubspace> minimals;
  RecurrentSplit split;
};

MinimalDecomposition minimal_subspaces_full(const KrausChannel& channel,
                                            double tol, std::uint64_t seed) {
  MinimalDecomposition out;
  out.split = maximal_stationary_state(channel, tol);
  const SubspaceBasis& rec = out.split.recurrent;
  KrausChannel restricted = restrict(channel, rec, tol);

  // Fixed points of the unital dual form a dagger-closed algebra.
  FixedPointSpace algebra = fixed_point_space(adjoint(restricted), tol);
  require(!algebra.basis.empty(),
          "minimal_subspaces: empty dual fixed-point algebra");
  std::vector<Matrix> center = algebra_center_hermitian(algebra.basis, tol);
  require(!center.empty(),
          "minimal_subspaces: the dual fixed-point algebra has an empty "
          "center; suspected tolerance breach");
  const size_t n_blocks = center.size();

  std::mt19937_64 rng(seed);
  const Matrix canonical_seed = compressed_canonical_diagonal(rec, channel.dim);

  // Noiseless blocks from a generic Hermitian central element.
  std::vector<SubspaceBasis> block_bases;  // in recurrent coordinates
  for (int attempt = 0;; ++attempt) {
    if (attempt >= kMaxGenericDraws) {
      throw Error("minimal_subspaces: generic central element retries "
                  "exhausted (eigenvalue clusters never matched the center "
                  "dimension " + std::to_string(n_blocks) + ")");
    }
    Matrix z = generic_algebra_element(center, canonical_seed, attempt, rng);
    Eigen::SelfAdjointEigenSolver<Matrix> es(z);
    auto clusters = cluster_eigenvalues(es.eigenvalues(), tol);
    if (clusters.size() != n_blocks) continue;
    block_bases.clear();
    for (auto [b, e] : clusters) {
      block_bases.push_back(SubspaceBasis{es.eigenvectors().middleCols(b, e - b)});
    }
    break;
  }

  // Split each block into minimal subspaces with a generic Hermitian
  // algebra element compressed to the block.
  for (const auto& block : block_bases) {
    const Eigen::Index s = block.dim();
    std::vector<SubspaceBasis> minis;
    for (int attempt = 0;; ++attempt) {
      if (attempt >= kMaxGenericDraws) {
        throw Error("minimal_subspaces: generic algebra element retries "
                    "exhausted inside a block of dimension " +
                    std::to_string(s));
      }
      Matrix g = generic_algebra_element(algebra.hermitian_basis,
                                         canonical_seed, attempt, rng);
      Matrix compressed = block.columns.adjoint() * g * block.columns;
      compressed = 0.5 * (compressed + compressed.adjoint().eval());
      Eigen::SelfAdjointEigenSolver<Matrix> es(compressed);
      auto clusters = cluster_eigenvalues(es.eigenvalues(), tol);
      // A valid tensor split has equal-sized clusters filling the block.
      const Eigen::Index b_dim = clusters.front().second - clusters.front().first;
      bool valid = static_cast<Eigen::Index>(clusters.size()) * b_dim == s;
      for (auto [b, e] : clusters) valid = valid && (e - b == b_dim);
      if (!valid) continue;
      minis.clear();
      for (auto [b, e] : clusters) {
        SubspaceBasis ambient{Matrix(
            rec.columns * block.columns * es.eigenvectors().middleCols(b, e - b))};
        minis.push_back(canonicalize_basis(ambient, channel.dim));
      }
      break;
    }
    for (auto& m : minis) {
      out.minimals.push_back(MinimalSubspace{std::move(m), out.minimals.size()});
    }
  }
  return out;
}

// Boolean coherence relation and verdicts for all ordered pairs.
struct PairwiseCoherence {
  // verdict[p][q] for p != q; relation[p][q] true when the class
  // relation holds (continuous, or stationary when stationary_only).
  std::vector<std::vector<CoherenceVerdict>> verdict;
  std::vector<std::vector<bool>> relation;
};

PairwiseCoherence pairwise_coherence(const KrausChannel& channel,
                                     const std::vector<MinimalSubspace>& minimals,
                                     double tol, bool stationary_only) {
  const size_t n = minimals.size();
  PairwiseCoherence pc;
  pc.verdict.assign(n, std::vector<CoherenceVerdict>(n));
  pc.relation.assign(n, std::vector<bool>(n, false));
  for (size_t p = 0; p < n; ++p) {
    pc.relation[p][p] = true;
    for (size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      CoherenceVerdict v = coherence(channel, minimals[p], minimals[q], tol);
      bool related = stationary_only ? v.kind == CoherenceKind::stationary
                                     : v.kind != CoherenceKind::none;
      pc.relation[p][q] = related;
      pc.verdict[p][q] = std::move(v);
    }
  }
  // Symmetry and transitivity cross-checks (guaranteed for exact input;
  // a failure indicates a tolerance breach, not a negative result).
  for (size_t p = 0; p < n; ++p) {
    for (size_t q = 0; q < n; ++q) {
      if (pc.relation[p][q] != pc.relation[q][p]) {
        throw InconsistencyError("coherence relation is not symmetric between "
                                 "subspaces " + std::to_string(p) + " and " +
                                 std::to_string(q));
      }
      for (size_t r = 0; r < n; ++r) {
        if (pc.relation[p][q] && pc.relation[q][r] && !pc.relation[p][r]) {
          throw InconsistencyError(
              "coherence relation is not transitive on subspaces " +
              std::to_string(p) + ", " + std::to_string(q) + ", " +
              std::to_string(r));
        }
      }
    }
  }
  return pc;
}

std::vector<std::vector<size_t>> classes_from_relation(
    const std::vector<std::vector<bool>>& relation) {
  const size_t n = relation.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t p = 0; p < n; ++p) {
    for (size_t q = p + 1; q < n; ++q) {
      if (relation[p][q]) parent[std::max(find(p), find(q))] =
          std::min(find(p), find(q));
    }
  }
  std::vector<std::vector<size_t>> classes;
  std::vector<int> class_of(n, -1);
  for (size_t p = 0; p < n; ++p) {
    size_t root = find(p);
    if (class_of[root] < 0) {
      class_of[root] = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<size_t>(class_of[root])].push_back(p);
  }
  return classes;
}

StructureDecomposition decompose(const KrausChannel& channel, double tol,
                                 std::uint64_t seed, bool stationary_only) {
  MinimalDecomposition md = minimal_subspaces_full(channel, tol, seed);
  PairwiseCoherence pc =
      pairwise_coherence(channel, md.minimals, tol, stationary_only);
  auto classes = classes_from_relation(pc.relation);

  StructureDecomposition out;
  out.decay = md.split.decay;
  for (const auto& members : classes) {
    AlignedClass aligned =
        phase_align(channel, md.minimals, members, tol, stationary_only);
    const Eigen::Index m = static_cast<Eigen::Index>(members.size());
    const Eigen::Index b_dim = md.minimals[members.front()].basis.dim();

    // Sort members by eigenphase (ties by original index), then
    // re-gauge so the first phase is exactly 0; the gauge phase is
    // folded into the base Kraus set.
    std::vector<size_t> order(members.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (aligned.phases[a] != aligned.phases[b])
        return aligned.phases[a] < aligned.phases[b];
      return aligned.members[a] < aligned.members[b];
    });
    const double gauge = aligned.phases[order.front()];

    StructureBlock block;
    block.m = m;
    block.b_dim = b_dim;
    Matrix w(channel.dim, m * b_dim);
    for (Eigen::Index p = 0; p < m; ++p) {
      const size_t slot = order[static_cast<size_t>(p)];
      block.phases.push_back(aligned.phases[slot] - gauge);
      w.middleCols(p * b_dim, b_dim) =
          md.minimals[aligned.members[slot]].basis.columns *
          aligned.intertwiners[slot];
    }
    block.phases.front() = 0.0;
    block.w = SubspaceBasis{std::move(w)};

    const Complex gauge_factor = std::exp(Complex(0, gauge));
    KrausChannel rep_restricted =
        restrict(channel, md.minimals[aligned.members.front()].basis, tol);
    for (const auto& e : rep_restricted.kraus) {
      block.base_kraus.push_back(gauge_factor * e);
    }
    KrausChannel base{b_dim, block.base_kraus};
    block.rho = maximal_stationary_state(base, tol).stationary;
    out.blocks.push_back(std::move(block));
  }

  // Canonical block order: (m, b_dim, rounded phase multiset).
  auto rounded_phases = [](const StructureBlock& b) {
    std::vector<long long> r;
    for (double t : b.phases) r.push_back(std::llround(t * 1e6));
    std::sort(r.begin(), r.end());
    return r;
  };
  std::stable_sort(out.blocks.begin(), out.blocks.end(),
                   [&](const StructureBlock& a, const StructureBlock& b) {
                     if (a.m != b.m) return a.m < b.m;
                     if (a.b_dim != b.b_dim) return a.b_dim < b.b_dim;
                     return rounded_phases(a) < rounded_phases(b);
                   });

  BlockFormReport report = verify_block_form(channel, out, tol);
  if (report.max_constrained() > 10.0 * tol) {
    throw InconsistencyError(
        "structure_decomposition: block-form residual gate failed (" +
        std::to_string(report.max_constrained()) + ")");
  }
  return out;
}

}  // namespace

std::vector<MinimalSubspace> minimal_subspaces(const KrausChannel& channel,
                                               double tol, std::uint64_t seed) {
  return minimal_subspaces_full(channel, tol, seed).minimals;
}

CoherenceVerdict coherence(const KrausChannel& channel,
                           const MinimalSubspace& p, const MinimalSubspace& q,
                           double tol) {
  CoherenceVerdict verdict;
  if (p.basis.dim() != q.basis.dim()) return verdict;  // none

  CrossMap cm = cross_map(channel, p.basis, q.basis, tol);
  auto peripheral = peripheral_eigenpairs(cm.rep, tol);
  if (peripheral.empty()) return verdict;  // none

  // When the restricted channel has a nontrivial peripheral group, the
  // cross map carries one peripheral eigenpair per group element and the
  // phase is only defined modulo that group. The canonical choice is the
  // candidate whose intertwiner is closest to a scalar (largest |tr U|):
  // it prefers the twist-free relation when one exists, and is the unique
  // candidate in the generic single-peripheral-eigenvalue case.
  struct Candidate {
    double scalar_overlap = 0.0;
    size_t index = 0;
    Matrix u;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < peripheral.size(); ++i) {
    Matrix x = unvec(peripheral[i].vector, p.basis.dim(), q.basis.dim());
    try {
      Matrix u = polar_unitary(x, tol);
      candidates.push_back({std::abs(u.trace()), i, std::move(u)});
    } catch (const Error&) {
      // Skip non-unitary reshapes (mixtures inside degenerate eigenspaces).
    }
  }
  if (candidates.empty()) {
    throw InconsistencyError(
        "coherence: peripheral eigenvector between minimal subspaces is not "
        "proportional to a unitary; suspected tolerance breach");
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) {
                     return a.scalar_overlap > b.scalar_overlap;
                   });

  KrausChannel rp = restrict(channel, p.basis, tol);
  KrausChannel rq = restrict(channel, q.basis, tol);
  const double scale = std::max(max_kraus_norm(rp), 1e-300);
  double worst_residual = 0.0;
  for (const Candidate& cand : candidates) {
    double theta = wrap_phase(std::arg(peripheral[cand.index].value));
    if (std::abs(theta) <= tol) theta = 0.0;

    // Validate the per-Kraus relation E_{k,p} = e^{i theta} U E_{k,q} U^dag.
    const Complex phase_factor = std::exp(Complex(0, theta));
    double residual = 0.0;
    for (size_t k = 0; k < rp.kraus.size(); ++k) {
      residual = std::max(
          residual,
          (rp.kraus[k] - phase_factor * cand.u * rq.kraus[k] * cand.u.adjoint())
              .norm());
    }
    if (residual > tol * std::max(scale, 1.0)) {
      worst_residual = std::max(worst_residual, residual);
      continue;
    }
    verdict.kind =
        theta == 0.0 ? CoherenceKind::stationary : CoherenceKind::continuous;
    verdict.theta = theta;
    verdict.intertwiner = cand.u;
    return verdict;
  }
  throw InconsistencyError(
      "coherence: peripheral eigenpair found but the Kraus relation "
      "fails at tolerance (residual " + std::to_string(worst_residual) + ")");
}

std::vector<std::vector<size_t>> equivalence_classes(
    const KrausChannel& channel, const std::vector<MinimalSubspace>& minimals,
    double tol, bool stationary_only) {
  PairwiseCoherence pc =
      pairwise_coherence(channel, minimals, tol, stationary_only);
  return classes_from_relation(pc.relation);
}

AlignedClass phase_align(const KrausChannel& channel,
                         const std::vector<MinimalSubspace>& minimals,
                         const std::vector<size_t>& class_members, double tol,
                         bool stationary_only) {
  require(!class_members.empty(), "phase_align: empty class");
  AlignedClass out;
  out.members = class_members;
  const size_t rep = class_members.front();
  for (size_t member : class_members) {
    double theta = 0.0;
    Matrix u = Matrix::Identity(minimals[rep].basis.dim(),
                                minimals[rep].basis.dim());
    if (member != rep) {
      CoherenceVerdict v =
          coherence(channel, minimals[member], minimals[rep], tol);
      if (v.kind == CoherenceKind::none ||
          (stationary_only && v.kind != CoherenceKind::stationary)) {
        throw InconsistencyError(
            "phase_align: class member without the expected coherence");
      }
      theta = stationary_only ? 0.0 : v.theta;
      u = v.intertwiner;
    }
    out.phases.push_back(theta);
    out.intertwiners.push_back(u);
    KrausChannel restricted = restrict(channel, minimals[member].basis, tol);
    std::vector<Matrix> adjusted;
    const Complex undo = std::exp(Complex(0, -theta));
    for (const auto& e : restricted.kraus) adjusted.push_back(undo * e);
    out.adjusted_kraus.push_back(std::move(adjusted));
  }
  return out;
}

StructureDecomposition structure_decomposition(const KrausChannel& channel,
                                               double tol, std::uint64_t seed) {
  return decompose(channel, tol, seed, /*stationary_only=*/false);
}

StructureDecomposition noiseless_decomposition(const KrausChannel& channel,
                                               double tol, std::uint64_t seed) {
  return decompose(channel, tol, seed, /*stationary_only=*/true);
}

BlockFormReport verify_block_form(const KrausChannel& channel,
                                  const StructureDecomposition& decomposition,
                                  double tol) {
  (void)tol;
  const Eigen::Index d = channel.dim;
  Eigen::Index rec_dim = 0;
  for (const auto& b : decomposition.blocks) rec_dim += b.m * b.b_dim;
  require(rec_dim + decomposition.decay.dim() == d,
          "verify_block_form: decomposition dimensions do not exhaust the "
          "ambient space");

  Matrix frame(d, d);
  Eigen::Index col = 0;
  for (const auto& b : decomposition.blocks) {
    frame.middleCols(col, b.w.dim()) = b.w.columns;
    col += b.w.dim();
  }
  frame.middleCols(col, decomposition.decay.dim()) = decomposition.decay.columns;

  const double scale = std::max(max_kraus_norm(channel), 1e-300);
  BlockFormReport report;
  for (size_t k = 0; k < channel.kraus.size(); ++k) {
    Matrix t = frame.adjoint() * channel.kraus[k] * frame;
    // Lower-left: recurrent -> decay must vanish.
    report.lower_left_residual = std::max(
        report.lower_left_residual,
        t.block(rec_dim, 0, d - rec_dim, rec_dim).norm() / scale);
    report.decay_coupling_norm = std::max(
        report.decay_coupling_norm,
        t.block(0, rec_dim, rec_dim, d - rec_dim).norm());
    report.decay_block_norm = std::max(
        report.decay_block_norm,
        t.block(rec_dim, rec_dim, d - rec_dim, d - rec_dim).norm());

    Eigen::Index row = 0;
    for (size_t l = 0; l < decomposition.blocks.size(); ++l) {
      const auto& bl = decomposition.blocks[l];
      const Eigen::Index dl = bl.m * bl.b_dim;
      Eigen::Index col2 = 0;
      for (size_t l2 = 0; l2 < decomposition.blocks.size(); ++l2) {
        const auto& bl2 = decomposition.blocks[l2];
        const Eigen::Index dl2 = bl2.m * bl2.b_dim;
        if (l != l2) {
          report.inter_block_residual =
              std::max(report.inter_block_residual,
                       t.block(row, col2, dl, dl2).norm() / scale);
        }
        col2 += dl2;
      }
      row += dl;
    }
    row = 0;
    for (size_t l = 0; l < decomposition.blocks.size(); ++l) {
      const auto& bl = decomposition.blocks[l];
      const Eigen::Index dl = bl.m * bl.b_dim;
      Matrix u_l = Matrix::Zero(bl.m, bl.m);
      for (Eigen::Index p = 0; p < bl.m; ++p) {
        u_l(p, p) = std::exp(Complex(0, bl.phases[static_cast<size_t>(p)]));
      }
      Matrix expected = kron(u_l, bl.base_kraus[k]);
      report.in_block_residual =
          std::max(report.in_block_residual,
                   (t.block(row, row, dl, dl) - expected).norm() / scale);
      row += dl;
    }
  }
  return report;
}

}  // namespace dfskit
