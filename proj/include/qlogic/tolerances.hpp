#pragma once

namespace qlogic::tol {

// Element-wise absolute tolerance for matrices and vectors.
inline constexpr double kNumeric = 1e-9;
// |<v|v> - 1| for a normalized state.
inline constexpr double kNorm = 1e-9;
// Eigenvalues of a projector must sit this close to 0 or 1.
inline constexpr double kEigen = 1e-7;
// Singular values above this count toward a subspace rank.
inline constexpr double kRank = 1e-8;
// Singular values inside (kRank / kRankGuard, kRank * kRankGuard) make the rank undecidable.
inline constexpr double kRankGuard = 100.0;
// Subspace membership residual.
inline constexpr double kMembership = 1e-8;
// Default limit on the wrapped amplitude during periodic free evolution.
inline constexpr double kWrap = 1e-6;

}  // namespace qlogic::tol
