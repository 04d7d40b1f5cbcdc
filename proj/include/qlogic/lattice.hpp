#pragma once

// Closed subspaces of C^n and their lattice operations: complement, join, meet,
// the comparability/orthogonality relation, commutation and Boolean blocks.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>
#include <complex>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qlogic/errors.hpp"
#include "qlogic/hilbert.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

/// Closed subspace stored as an orthonormal basis (one column per basis vector, none for {0}).
template <typename Real>
class BasicSubspace {
 public:
  using Matrix = CMatrix<Real>;
  using Vector = CVector<Real>;

  /// Validates that the columns are orthonormal within the numeric tolerance.
  BasicSubspace(Index ambient_dim, Matrix basis) : n_(ambient_dim), basis_(std::move(basis)) {
    if (basis_.rows() != n_) throw DimensionMismatch("basis rows must equal the ambient dimension");
    if (basis_.cols() > n_) throw InvariantViolation("subspace rank exceeds the ambient dimension");
    if (basis_.cols() > 0) {
      const Matrix gram = basis_.adjoint() * basis_;
      if ((gram - Matrix::Identity(rank(), rank())).cwiseAbs().maxCoeff() > Real(tol::kNumeric))
        throw InvariantViolation("subspace basis is not orthonormal");
    }
  }
  BasicSubspace(Index ambient_dim, Matrix basis, unchecked_t) : n_(ambient_dim), basis_(std::move(basis)) {}

  static BasicSubspace zero(Index n) { return BasicSubspace(n, Matrix(n, 0), unchecked); }
  static BasicSubspace full(Index n) { return BasicSubspace(n, Matrix::Identity(n, n), unchecked); }

  /// span{v} for a nonzero vector.
  static BasicSubspace line(const Vector& v) {
    const Real norm = v.norm();
    if (!(norm > Real(0))) throw InvalidArgument("span of the zero vector");
    return BasicSubspace(v.size(), Matrix(v / norm), unchecked);
  }

  Index ambient_dim() const { return n_; }
  Index rank() const { return basis_.cols(); }
  bool is_zero() const { return rank() == 0; }
  bool is_full() const { return rank() == n_; }
  const Matrix& basis() const { return basis_; }

  /// Orthogonal projection of a coordinate vector.
  Vector project(const Vector& v) const {
    if (v.size() != n_) throw DimensionMismatch("vector and subspace dimensions differ");
    if (is_zero()) return Vector::Zero(n_);
    return basis_ * (basis_.adjoint() * v);
  }

  /// Orthogonal projection of each column of m.
  Matrix project_columns(const Matrix& m) const {
    if (is_zero()) return Matrix::Zero(n_, m.cols());
    return basis_ * (basis_.adjoint() * m);
  }

  BasicProjector<Real> projector() const {
    if (is_zero()) return BasicProjector<Real>::zero(n_);
    return BasicProjector<Real>(Matrix(basis_ * basis_.adjoint()), unchecked);
  }

 private:
  Index n_;
  Matrix basis_;
};

namespace detail {

template <typename Real>
void require_same_ambient(const BasicSubspace<Real>& a, const BasicSubspace<Real>& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionMismatch("subspaces live in different ambient spaces");
}

template <typename Real>
Real max_abs(const CMatrix<Real>& m) {
  return m.size() == 0 ? Real(0) : m.cwiseAbs().maxCoeff();
}

/// Support mask when every basis column is a standard unit vector (exact 0/1 entries).
template <typename Real>
std::optional<std::vector<bool>> coordinate_mask(const BasicSubspace<Real>& s) {
  std::vector<bool> mask(static_cast<std::size_t>(s.ambient_dim()), false);
  const auto& b = s.basis();
  for (Index j = 0; j < b.cols(); ++j) {
    Index hit = -1;
    for (Index i = 0; i < b.rows(); ++i) {
      const std::complex<Real> x = b(i, j);
      if (x == std::complex<Real>(0)) continue;
      if (x != std::complex<Real>(1) || hit >= 0) return std::nullopt;
      hit = i;
    }
    if (hit < 0 || mask[static_cast<std::size_t>(hit)]) return std::nullopt;
    mask[static_cast<std::size_t>(hit)] = true;
  }
  return mask;
}

template <typename Real>
BasicSubspace<Real> coordinate_subspace(const std::vector<bool>& mask) {
  const auto n = static_cast<Index>(mask.size());
  const auto k = static_cast<Index>(std::count(mask.begin(), mask.end(), true));
  CMatrix<Real> basis = CMatrix<Real>::Zero(n, k);
  Index c = 0;
  for (Index i = 0; i < n; ++i)
    if (mask[static_cast<std::size_t>(i)]) basis(i, c++) = 1;
  return BasicSubspace<Real>(n, std::move(basis), unchecked);
}

/// Applies op bitwise when both subspaces are coordinate subspaces.
template <typename Real, typename Op>
std::optional<BasicSubspace<Real>> coordinate_combine(const BasicSubspace<Real>& a, const BasicSubspace<Real>& b,
                                                     Op op) {
  const auto ma = coordinate_mask(a);
  if (!ma) return std::nullopt;
  const auto mb = coordinate_mask(b);
  if (!mb) return std::nullopt;
  std::vector<bool> out(ma->size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op((*ma)[i], (*mb)[i]);
  return coordinate_subspace<Real>(out);
}

/// Rejects singular values too close to the rank threshold to classify.
template <typename Real, typename Values>
Index decide_rank(const Values& singular_values) {
  const Real lo = Real(tol::kRank) / Real(tol::kRankGuard);
  const Real hi = Real(tol::kRank) * Real(tol::kRankGuard);
  Index rank = 0;
  for (Index i = 0; i < singular_values.size(); ++i) {
    const Real s = singular_values[i];
    if (s > lo && s < hi)
      throw IllConditionedSubspace("singular value " + std::to_string(static_cast<double>(s)) +
                                   " is too close to the rank threshold");
    if (s > Real(tol::kRank)) ++rank;
  }
  return rank;
}

/// Orthonormal basis for the column span of m.
template <typename Real>
CMatrix<Real> orthonormal_range(const CMatrix<Real>& m) {
  if (m.cols() == 0) return CMatrix<Real>(m.rows(), 0);
  Eigen::BDCSVD<CMatrix<Real>> svd(m, Eigen::ComputeThinU);
  const Index r = decide_rank<Real>(svd.singularValues());
  return svd.matrixU().leftCols(r);
}

}  // namespace detail

/// Subspace of the eigenvalue-1 eigenvectors of p.
template <typename Real>
BasicSubspace<Real> subspace_from_projector(const BasicProjector<Real>& p) {
  using Matrix = CMatrix<Real>;
  const Index n = p.dim();
  const Real eps = Real(tol::kEigen);
  if (p.is_diagonal()) {
    std::vector<Index> ones;
    for (Index i = 0; i < n; ++i) {
      const std::complex<Real> d = p.matrix()(i, i);
      if (std::abs(d - std::complex<Real>(1)) <= eps)
        ones.push_back(i);
      else if (std::abs(d) > eps)
        throw InvariantViolation("projector eigenvalue is neither 0 nor 1");
    }
    Matrix basis = Matrix::Zero(n, static_cast<Index>(ones.size()));
    for (std::size_t c = 0; c < ones.size(); ++c) basis(ones[c], static_cast<Index>(c)) = 1;
    return BasicSubspace<Real>(n, std::move(basis), unchecked);
  }

  Eigen::SelfAdjointEigenSolver<Matrix> eig(p.matrix());
  if (eig.info() != Eigen::Success) throw InvariantViolation("eigendecomposition of projector failed");
  const auto& values = eig.eigenvalues();
  Index first_one = n;
  for (Index i = 0; i < n; ++i) {
    const Real lambda = values[i];
    const bool near0 = std::abs(lambda) <= eps;
    const bool near1 = std::abs(lambda - Real(1)) <= eps;
    if (!near0 && !near1) throw InvariantViolation("projector eigenvalue is neither 0 nor 1");
    if (near1 && first_one == n) first_one = i;
  }
  const Index rank = n - first_one;
  if (rank != static_cast<Index>(std::llround(static_cast<double>(p.trace()))))
    throw InvariantViolation("projector rank disagrees with its trace");
  return BasicSubspace<Real>(n, eig.eigenvectors().rightCols(rank), unchecked);
}

/// Orthogonal complement.
template <typename Real>
BasicSubspace<Real> complement(const BasicSubspace<Real>& s) {
  using Matrix = CMatrix<Real>;
  const Index n = s.ambient_dim();
  const Index k = s.rank();
  if (k == 0) return BasicSubspace<Real>::full(n);
  if (k == n) return BasicSubspace<Real>::zero(n);
  if (auto mask = detail::coordinate_mask(s)) {
    mask->flip();
    return detail::coordinate_subspace<Real>(*mask);
  }
  Eigen::HouseholderQR<Matrix> qr(s.basis());
  Matrix tail = Matrix::Identity(n, n).rightCols(n - k);
  Matrix q = qr.householderQ() * tail;
  return BasicSubspace<Real>(n, std::move(q), unchecked);
}

/// Closed span of the union: s1's basis extended by the part of s2 orthogonal to it.
template <typename Real>
BasicSubspace<Real> join(const BasicSubspace<Real>& s1, const BasicSubspace<Real>& s2) {
  using Matrix = CMatrix<Real>;
  detail::require_same_ambient(s1, s2);
  if (s2.is_zero() || s1.is_full()) return s1;
  if (s1.is_zero() || s2.is_full()) return s2;
  if (auto c = detail::coordinate_combine(s1, s2, [](bool x, bool y) { return x || y; })) return *std::move(c);
  const Matrix residual = s2.basis() - s1.project_columns(s2.basis());
  const Matrix extra = detail::orthonormal_range<Real>(residual);
  // Second Gram-Schmidt pass keeps the extension orthogonal to s1 at machine precision.
  Matrix cleaned = extra - s1.project_columns(extra);
  Eigen::HouseholderQR<Matrix> qr(cleaned);
  Matrix q = qr.householderQ() * Matrix::Identity(cleaned.rows(), cleaned.cols());
  Matrix basis(s1.ambient_dim(), s1.rank() + q.cols());
  basis << s1.basis(), q;
  if (basis.cols() > s1.ambient_dim()) throw IllConditionedSubspace("join rank exceeds the ambient dimension");
  return BasicSubspace<Real>(s1.ambient_dim(), std::move(basis), unchecked);
}

/// Intersection, computed as the complement of the join of complements.
template <typename Real>
BasicSubspace<Real> meet(const BasicSubspace<Real>& s1, const BasicSubspace<Real>& s2) {
  detail::require_same_ambient(s1, s2);
  if (s1.is_zero() || s2.is_full()) return s1;
  if (s2.is_zero() || s1.is_full()) return s2;
  if (auto c = detail::coordinate_combine(s1, s2, [](bool x, bool y) { return x && y; })) return *std::move(c);
  return complement(join(complement(s1), complement(s2)));
}

/// [a ⊆ b]: every basis vector of a survives projection onto b.
template <typename Real>
bool is_subspace_of(const BasicSubspace<Real>& a, const BasicSubspace<Real>& b) {
  detail::require_same_ambient(a, b);
  if (a.is_zero()) return true;
  if (a.rank() > b.rank()) return false;
  return detail::max_abs<Real>(a.basis() - b.project_columns(a.basis())) <= Real(tol::kNumeric);
}

/// [a ⊆ b⊥].
template <typename Real>
bool is_orthogonal_to(const BasicSubspace<Real>& a, const BasicSubspace<Real>& b) {
  detail::require_same_ambient(a, b);
  if (a.is_zero() || b.is_zero()) return true;
  return detail::max_abs<Real>(b.project_columns(a.basis())) <= Real(tol::kNumeric);
}

/// Equal ranks plus containment, i.e. equal projectors within tolerance.
template <typename Real>
bool same_subspace(const BasicSubspace<Real>& a, const BasicSubspace<Real>& b) {
  return a.rank() == b.rank() && is_subspace_of(a, b);
}

/// Comparability (z) and orthogonality (w) statements between two subspaces.
struct Relation {
  bool z1;  // q ⊆ p
  bool z2;  // p ⊆ q
  bool w1;  // q ⊆ p⊥
  bool w2;  // p ⊆ q⊥

  bool z() const { return z1 || z2; }
  bool w() const { return w1 || w2; }
};

template <typename Real>
Relation relation(const BasicSubspace<Real>& q, const BasicSubspace<Real>& p) {
  return Relation{is_subspace_of(q, p), is_subspace_of(p, q), is_orthogonal_to(q, p), is_orthogonal_to(p, q)};
}

/// ||PQ - QP||_max <= eps.
template <typename Real>
bool commutes(const BasicProjector<Real>& p, const BasicProjector<Real>& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("projector dimensions differ");
  if (p.is_diagonal() && q.is_diagonal()) return true;
  const CMatrix<Real> pq = p.matrix() * q.matrix();
  return detail::max_abs<Real>(CMatrix<Real>(pq - pq.adjoint())) <= Real(tol::kNumeric);
}

/// Commutation of the two orthogonal projectors, tested as (1 - P) Q P = 0 on P's basis.
template <typename Real>
bool commutes(const BasicSubspace<Real>& p, const BasicSubspace<Real>& q) {
  detail::require_same_ambient(p, q);
  if (p.is_zero() || q.is_zero() || p.is_full() || q.is_full()) return true;
  if (detail::coordinate_mask(p) && detail::coordinate_mask(q)) return true;
  const CMatrix<Real> qp = q.project_columns(p.basis());
  return detail::max_abs<Real>(CMatrix<Real>(qp - p.project_columns(qp))) <= Real(tol::kNumeric);
}

/// Every pair commutes. The empty set is vacuously a block.
template <typename Real>
bool is_boolean_block(std::span<const BasicProjector<Real>> projectors) {
  for (std::size_t i = 0; i < projectors.size(); ++i)
    for (std::size_t j = i + 1; j < projectors.size(); ++j)
      if (!commutes(projectors[i], projectors[j])) return false;
  return true;
}

template <typename Real>
struct BasicDistributivityReport {
  BasicSubspace<Real> lhs;  // ¬q ∨ (p1 ∧ p2)
  BasicSubspace<Real> rhs;  // (¬q ∨ p1) ∧ (¬q ∨ p2)
  bool equal;
};

template <typename Real>
BasicDistributivityReport<Real> distributivity_report(const BasicSubspace<Real>& q, const BasicSubspace<Real>& p1,
                                                      const BasicSubspace<Real>& p2) {
  detail::require_same_ambient(q, p1);
  detail::require_same_ambient(q, p2);
  const BasicSubspace<Real> not_q = complement(q);
  BasicSubspace<Real> lhs = join(not_q, meet(p1, p2));
  BasicSubspace<Real> rhs = meet(join(not_q, p1), join(not_q, p2));
  const bool equal = same_subspace(lhs, rhs);
  return {std::move(lhs), std::move(rhs), equal};
}

enum class Membership { In, InComplement, Neither };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::In: return "IN";
    case Membership::InComplement: return "IN_COMPLEMENT";
    case Membership::Neither: return "NEITHER";
  }
  return "?";
}

/// Residuals are taken relative to ||v||, so the scale of v does not matter.
template <typename Real>
Membership membership(const CVector<Real>& v, const BasicSubspace<Real>& s) {
  if (v.size() != s.ambient_dim()) throw DimensionMismatch("state and subspace dimensions differ");
  const Real norm = v.norm();
  if (!(norm > Real(0))) throw InvalidArgument("membership of the zero vector");
  const CVector<Real> pv = s.project(v);
  if ((pv - v).norm() <= Real(tol::kMembership) * norm) return Membership::In;
  if (pv.norm() <= Real(tol::kMembership) * norm) return Membership::InComplement;
  return Membership::Neither;
}

template <typename Real>
Membership membership(const BasicStateVector<Real>& v, const BasicSubspace<Real>& s) {
  return membership<Real>(v.amplitudes(), s);
}

using Subspace = BasicSubspace<double>;
using DistributivityReport = BasicDistributivityReport<double>;

}  // namespace qlogic
