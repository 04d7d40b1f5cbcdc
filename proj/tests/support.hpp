#pragma once

// Seeded generators shared by the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "qlogic/hilbert.hpp"
#include "qlogic/lattice.hpp"

namespace qlogic::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  Index index(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  std::mt19937_64& engine() { return engine_; }

  VectorXc vector(Index n) {
    VectorXc v(n);
    for (Index i = 0; i < n; ++i) v[i] = Complex(normal(), normal());
    return v;
  }

  MatrixXc matrix(Index rows, Index cols) {
    MatrixXc m(rows, cols);
    for (Index j = 0; j < cols; ++j) m.col(j) = vector(rows);
    return m;
  }

  /// Haar-ish unitary from the QR factor of a complex Gaussian matrix.
  MatrixXc unitary(Index n) {
    Eigen::HouseholderQR<MatrixXc> qr(matrix(n, n));
    return qr.householderQ() * MatrixXc::Identity(n, n);
  }

  /// Random subspace of the given rank.
  Subspace subspace(Index n, Index rank) { return Subspace(n, MatrixXc(unitary(n).leftCols(rank))); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Coordinate subspace spanned by the basis vectors whose mask bit is set.
inline Subspace coordinate_subspace(Index n, unsigned mask) {
  std::vector<Index> cols;
  for (Index i = 0; i < n; ++i)
    if (mask & (1u << i)) cols.push_back(i);
  MatrixXc b = MatrixXc::Zero(n, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) b(cols[j], static_cast<Index>(j)) = 1.0;
  return Subspace(n, b);
}

inline MatrixXc coordinate_projector(Index n, unsigned mask) {
  MatrixXc p = MatrixXc::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    if (mask & (1u << i)) p(i, i) = 1.0;
  return p;
}

inline double max_abs(const MatrixXc& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace qlogic::testing
