#pragma once

// Finite-dimensional numerical kernel: position grids, state vectors, projectors,
// detector tensor products, free evolution and Born probabilities.
//
// Every type here is templated on the real scalar; amplitudes are std::complex<Real>.
// The double instantiations are aliased at the bottom of the file.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "qlogic/errors.hpp"
#include "qlogic/tolerances.hpp"

namespace qlogic {

using Eigen::Index;

template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// ---------------------------------------------------------------------------
// PositionGrid

/// Uniform grid on [x_min, x_max] with n_points >= 2 nodes, both ends included.
template <typename Real>
class BasicPositionGrid {
 public:
  BasicPositionGrid(Real x_min, Real x_max, Index n_points) : x_min_(x_min), x_max_(x_max), n_(n_points) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max)) throw InvalidArgument("grid bounds must be finite");
    if (!(x_min < x_max)) throw InvalidArgument("grid requires x_min < x_max");
    if (n_points < 2) throw InvalidArgument("grid requires at least two points");
    spacing_ = (x_max_ - x_min_) / static_cast<Real>(n_ - 1);
  }

  Real x_min() const { return x_min_; }
  Real x_max() const { return x_max_; }
  Index n_points() const { return n_; }
  Real spacing() const { return spacing_; }
  Real length() const { return x_max_ - x_min_; }

  Real x(Index i) const { return x_min_ + static_cast<Real>(i) * spacing_; }

  RVector<Real> points() const {
    RVector<Real> xs(n_);
    for (Index i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
  }

  bool operator==(const BasicPositionGrid&) const = default;

 private:
  Real x_min_;
  Real x_max_;
  Index n_;
  Real spacing_;
};

template <typename Real>
BasicPositionGrid<Real> make_grid(Real x_min, Real x_max, Index n_points) {
  return BasicPositionGrid<Real>(x_min, x_max, n_points);
}

// ---------------------------------------------------------------------------
// Space descriptor shared by states

/// Either a position grid (quadrature weight = spacing) or an abstract basis of given dimension (weight 1).
template <typename Real>
class BasicSpace {
 public:
  explicit BasicSpace(Index dim) : dim_(dim) {
    if (dim < 1) throw InvalidArgument("space dimension must be positive");
  }
  explicit BasicSpace(BasicPositionGrid<Real> grid) : grid_(std::move(grid)), dim_(grid_->n_points()) {}

  Index dim() const { return dim_; }
  const std::optional<BasicPositionGrid<Real>>& grid() const { return grid_; }
  bool on_grid() const { return grid_.has_value(); }
  Real weight() const { return grid_ ? grid_->spacing() : Real(1); }

  bool operator==(const BasicSpace&) const = default;

 private:
  std::optional<BasicPositionGrid<Real>> grid_;
  Index dim_;
};

// ---------------------------------------------------------------------------
// StateVector

template <typename Real>
class BasicStateVector {
 public:
  using Scalar = std::complex<Real>;
  using Vector = CVector<Real>;

  BasicStateVector(BasicSpace<Real> space, Vector amplitudes) : space_(std::move(space)), amp_(std::move(amplitudes)) {
    if (amp_.size() != space_.dim()) throw DimensionMismatch("amplitude count does not match the space dimension");
  }
  BasicStateVector(BasicPositionGrid<Real> grid, Vector amplitudes)
      : BasicStateVector(BasicSpace<Real>(std::move(grid)), std::move(amplitudes)) {}
  /// Abstract finite basis, unit quadrature weight.
  explicit BasicStateVector(Vector amplitudes) : BasicStateVector(BasicSpace<Real>(amplitudes.size()), amplitudes) {}

  static BasicStateVector basis(Index dim, Index k) {
    if (k < 0 || k >= dim) throw InvalidArgument("basis index out of range");
    Vector e = Vector::Zero(dim);
    e[k] = Scalar(1);
    return BasicStateVector(std::move(e));
  }

  const BasicSpace<Real>& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  Real weight() const { return space_.weight(); }
  const Vector& amplitudes() const { return amp_; }
  Scalar operator[](Index i) const { return amp_[i]; }

  Real squared_norm() const { return amp_.squaredNorm() * weight(); }
  Real norm() const { return std::sqrt(squared_norm()); }
  bool is_zero() const { return amp_.cwiseAbs().maxCoeff() == Real(0); }
  bool is_normalized(Real eps = Real(tol::kNorm)) const { return std::abs(squared_norm() - Real(1)) <= eps; }

  BasicStateVector normalized() const {
    const Real n = norm();
    if (!(n > Real(0))) throw InvalidArgument("cannot normalize the zero vector");
    return BasicStateVector(space_, amp_ / n);
  }

  /// Pointwise |amplitude|^2, a probability density when the state is normalized.
  RVector<Real> intensity() const { return amp_.cwiseAbs2(); }

  BasicStateVector with_amplitudes(Vector amplitudes) const { return BasicStateVector(space_, std::move(amplitudes)); }

 private:
  BasicSpace<Real> space_;
  Vector amp_;
};

template <typename Real>
void require_same_space(const BasicSpace<Real>& a, const BasicSpace<Real>& b) {
  if (!(a == b)) throw DimensionMismatch("states live on different grids or dimensions");
}

template <typename Real>
BasicStateVector<Real> operator+(const BasicStateVector<Real>& u, const BasicStateVector<Real>& v) {
  require_same_space(u.space(), v.space());
  return u.with_amplitudes(u.amplitudes() + v.amplitudes());
}

template <typename Real>
BasicStateVector<Real> operator-(const BasicStateVector<Real>& u, const BasicStateVector<Real>& v) {
  require_same_space(u.space(), v.space());
  return u.with_amplitudes(u.amplitudes() - v.amplitudes());
}

template <typename Real>
BasicStateVector<Real> operator*(std::complex<Real> c, const BasicStateVector<Real>& v) {
  return v.with_amplitudes(c * v.amplitudes());
}

template <typename Real>
BasicStateVector<Real> operator*(Real c, const BasicStateVector<Real>& v) {
  return v.with_amplitudes(c * v.amplitudes());
}

/// Weighted inner product, antilinear in the first slot.
template <typename Real>
std::complex<Real> inner_product(const BasicStateVector<Real>& u, const BasicStateVector<Real>& v) {
  require_same_space(u.space(), v.space());
  return u.amplitudes().dot(v.amplitudes()) * u.weight();
}

// ---------------------------------------------------------------------------
// Slit states

/// Gaussian profile exp(-(x-center)^2 / (4 sigma^2)) cut to [center - half_width, center + half_width], normalized.
template <typename Real>
BasicStateVector<Real> gaussian_slit_state(const BasicPositionGrid<Real>& grid, Real center, Real half_width, Real sigma) {
  if (!(sigma > Real(0)) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
  if (!(half_width > Real(0))) throw InvalidArgument("half_width must be positive");
  const Real lo = center - half_width;
  const Real hi = center + half_width;
  if (lo < grid.x_min() || hi > grid.x_max()) throw InvalidArgument("slit window lies outside the grid");

  CVector<Real> amp = CVector<Real>::Zero(grid.n_points());
  for (Index i = 0; i < grid.n_points(); ++i) {
    const Real x = grid.x(i);
    if (x < lo || x > hi) continue;
    const Real u = x - center;
    amp[i] = std::exp(-u * u / (Real(4) * sigma * sigma));
  }
  BasicStateVector<Real> state(grid, std::move(amp));
  if (state.is_zero()) throw InvalidArgument("slit window is narrower than one grid cell");
  return state.normalized();
}

// ---------------------------------------------------------------------------
// Projector

struct unchecked_t {
  explicit unchecked_t() = default;
};
inline constexpr unchecked_t unchecked{};

/// Hermitian idempotent matrix, validated on construction.
template <typename Real>
class BasicProjector {
 public:
  using Matrix = CMatrix<Real>;

  explicit BasicProjector(Matrix m) : m_(std::move(m)) { validate(); }
  /// Skips validation; for matrices built as projectors by construction.
  BasicProjector(Matrix m, unchecked_t) : m_(std::move(m)) {}

  static BasicProjector zero(Index n) { return BasicProjector(Matrix::Zero(n, n), unchecked); }
  static BasicProjector identity(Index n) { return BasicProjector(Matrix::Identity(n, n), unchecked); }

  /// Diagonal 0/1 projector from a mask.
  static BasicProjector diagonal(const std::vector<bool>& mask) {
    const auto n = static_cast<Index>(mask.size());
    Matrix m = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      if (mask[static_cast<std::size_t>(i)]) m(i, i) = 1;
    return BasicProjector(std::move(m), unchecked);
  }

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  Real trace() const { return m_.trace().real(); }

  /// True when every off-diagonal entry is exactly zero.
  bool is_diagonal() const {
    for (Index j = 0; j < m_.cols(); ++j)
      for (Index i = 0; i < m_.rows(); ++i)
        if (i != j && m_(i, j) != std::complex<Real>(0)) return false;
    return true;
  }

  BasicProjector complement() const {
    return BasicProjector(Matrix(Matrix::Identity(dim(), dim()) - m_), unchecked);
  }

 private:
  void validate() const {
    if (m_.rows() != m_.cols()) throw DimensionMismatch("projector matrix must be square");
    const Real eps = Real(tol::kNumeric);
    if (m_.size() == 0) return;
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > eps) throw InvariantViolation("projector is not Hermitian");
    if (is_diagonal()) {
      for (Index i = 0; i < dim(); ++i) {
        const Real d = std::abs(m_(i, i));
        if (std::min(d, std::abs(m_(i, i) - std::complex<Real>(1))) > eps)
          throw InvariantViolation("projector is not idempotent");
      }
      return;
    }
    if ((m_ * m_ - m_).cwiseAbs().maxCoeff() > eps) throw InvariantViolation("projector is not idempotent");
  }

  Matrix m_;
};

template <typename Real>
struct BasicIntervalProjector {
  BasicProjector<Real> projector;
  /// Set when no grid point falls in the interval; the projector is then 0.
  bool empty;
};

/// Diagonal projector selecting grid points with a <= x <= b.
template <typename Real>
BasicIntervalProjector<Real> interval_projector(const BasicPositionGrid<Real>& grid, Real a, Real b) {
  if (!(a < b)) throw InvalidArgument("interval requires a < b");
  std::vector<bool> mask(static_cast<std::size_t>(grid.n_points()));
  bool any = false;
  for (Index i = 0; i < grid.n_points(); ++i) {
    const Real x = grid.x(i);
    const bool inside = a <= x && x <= b;
    mask[static_cast<std::size_t>(i)] = inside;
    any = any || inside;
  }
  return {BasicProjector<Real>::diagonal(mask), !any};
}

/// |v><v| with the quadrature weight folded in, so that P v = v.
template <typename Real>
BasicProjector<Real> rank_one_projector(const BasicStateVector<Real>& v) {
  if (v.is_zero()) throw InvalidArgument("rank-one projector of the zero vector");
  const BasicStateVector<Real> u = v.normalized();
  CMatrix<Real> m = u.amplitudes() * u.amplitudes().adjoint() * u.weight();
  return BasicProjector<Real>(std::move(m), unchecked);
}

/// Matrix-vector product; the result is not renormalized.
template <typename Real>
BasicStateVector<Real> apply(const BasicProjector<Real>& p, const BasicStateVector<Real>& v) {
  if (p.dim() != v.dim()) throw DimensionMismatch("projector and state dimensions differ");
  return v.with_amplitudes(p.matrix() * v.amplitudes());
}

/// <v|P|v>, clamped to [0, 1].
template <typename Real>
Real born_probability(const BasicProjector<Real>& p, const BasicStateVector<Real>& v) {
  if (p.dim() != v.dim()) throw DimensionMismatch("projector and state dimensions differ");
  const Real value = std::real(inner_product(v, apply(p, v)));
  return std::clamp(value, Real(0), Real(1));
}

// ---------------------------------------------------------------------------
// Detector ancilla

/// Particle (x) detector state; amplitude of (particle i, detector d) sits at i * detector_dim + d.
template <typename Real>
class BasicCompositeState {
 public:
  BasicCompositeState(BasicSpace<Real> particle, Index detector_dim, CVector<Real> amplitudes)
      : particle_(std::move(particle)), detector_dim_(detector_dim), amp_(std::move(amplitudes)) {
    if (detector_dim_ < 2) throw InvalidArgument("detector dimension must be at least 2");
    if (amp_.size() != particle_.dim() * detector_dim_)
      throw DimensionMismatch("composite amplitudes do not match particle x detector dimension");
  }

  const BasicSpace<Real>& particle_space() const { return particle_; }
  Index detector_dim() const { return detector_dim_; }
  Index dim() const { return amp_.size(); }
  const CVector<Real>& amplitudes() const { return amp_; }
  std::complex<Real> amplitude(Index i, Index d) const { return amp_[i * detector_dim_ + d]; }

  Real squared_norm() const { return amp_.squaredNorm() * particle_.weight(); }
  bool is_normalized(Real eps = Real(tol::kNorm)) const { return std::abs(squared_norm() - Real(1)) <= eps; }

  /// Particle position density with the detector traced out.
  RVector<Real> marginal_intensity() const {
    RVector<Real> out = RVector<Real>::Zero(particle_.dim());
    for (Index i = 0; i < particle_.dim(); ++i)
      for (Index d = 0; d < detector_dim_; ++d) out[i] += std::norm(amplitude(i, d));
    return out;
  }

  /// Particle component attached to detector state d (unnormalized).
  BasicStateVector<Real> branch(Index d) const {
    if (d < 0 || d >= detector_dim_) throw InvalidArgument("detector index out of range");
    CVector<Real> out(particle_.dim());
    for (Index i = 0; i < particle_.dim(); ++i) out[i] = amplitude(i, d);
    return BasicStateVector<Real>(particle_, std::move(out));
  }

  /// The same vector viewed as a plain state on the product space (weight preserved).
  BasicStateVector<Real> flatten() const {
    return BasicStateVector<Real>(BasicSpace<Real>(dim()), amp_ * std::sqrt(particle_.weight()));
  }

 private:
  BasicSpace<Real> particle_;
  Index detector_dim_;
  CVector<Real> amp_;
};

template <typename Real>
struct BasicDetectorComponent {
  BasicStateVector<Real> particle;
  Index detector_index;
};

/// Sum over components of particle_n (x) |d_n>. The components must add up to v.
template <typename Real>
BasicCompositeState<Real> attach_detector(const BasicStateVector<Real>& v,
                                          std::span<const BasicDetectorComponent<Real>> components,
                                          Index detector_dim) {
  if (detector_dim < 2) throw InvalidArgument("detector dimension must be at least 2");
  CVector<Real> amp = CVector<Real>::Zero(v.dim() * detector_dim);
  CVector<Real> sum = CVector<Real>::Zero(v.dim());
  for (const auto& c : components) {
    require_same_space(c.particle.space(), v.space());
    if (c.detector_index < 0 || c.detector_index >= detector_dim)
      throw InvalidArgument("detector index out of range");
    for (Index i = 0; i < v.dim(); ++i) amp[i * detector_dim + c.detector_index] += c.particle[i];
    sum += c.particle.amplitudes();
  }
  if (v.dim() > 0 && (sum - v.amplitudes()).cwiseAbs().maxCoeff() > Real(tol::kNumeric))
    throw InvariantViolation("detector components do not sum to the particle state");
  return BasicCompositeState<Real>(v.space(), detector_dim, std::move(amp));
}

/// |d><d| on a detector of the given dimension, tensored after a particle projector.
template <typename Real>
BasicProjector<Real> tensor_with_pointer(const BasicProjector<Real>& particle, Index detector_dim, Index d) {
  if (d < 0 || d >= detector_dim) throw InvalidArgument("detector index out of range");
  const Index n = particle.dim();
  CMatrix<Real> m = CMatrix<Real>::Zero(n * detector_dim, n * detector_dim);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) m(i * detector_dim + d, j * detector_dim + d) = particle.matrix()(i, j);
  return BasicProjector<Real>(std::move(m), unchecked);
}

// ---------------------------------------------------------------------------
// Free evolution (hbar = m = 1), periodic spectral propagation

namespace detail {

template <typename Real>
Real wavenumber(Index j, Index n, Real dx) {
  const Index signed_j = j < (n + 1) / 2 ? j : j - n;
  return Real(2) * Real(M_PI) * static_cast<Real>(signed_j) / (static_cast<Real>(n) * dx);
}

template <typename Real>
std::vector<std::complex<Real>> propagate_periodic(const std::vector<std::complex<Real>>& in, Real dx, Real t) {
  Eigen::FFT<Real> fft;
  std::vector<std::complex<Real>> spectrum;
  fft.fwd(spectrum, in);
  const auto n = static_cast<Index>(in.size());
  for (Index j = 0; j < n; ++j) {
    const Real k = wavenumber<Real>(j, n, dx);
    spectrum[static_cast<std::size_t>(j)] *= std::polar(Real(1), -k * k * t / Real(2));
  }
  std::vector<std::complex<Real>> out;
  fft.inv(out, spectrum);
  return out;
}

}  // namespace detail

/// Propagates a grid state by exp(-i k^2 t / 2) per discrete Fourier mode. Unitary on the periodic grid.
template <typename Real>
BasicStateVector<Real> free_evolve(const BasicStateVector<Real>& v, Real t) {
  if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
  if (!v.space().on_grid()) throw InvalidArgument("free evolution needs a position grid");
  if (t == Real(0)) return v;
  std::vector<std::complex<Real>> in(v.amplitudes().data(), v.amplitudes().data() + v.dim());
  auto out = detail::propagate_periodic<Real>(in, v.space().grid()->spacing(), t);
  return v.with_amplitudes(Eigen::Map<const CVector<Real>>(out.data(), v.dim()));
}

/// Norm of the amplitude that leaves the grid window by time t, measured on a zero-padded domain
/// wide enough that the fastest grid mode cannot come back around. Capped at 64x padding.
template <typename Real>
Real wrap_around_amplitude(const BasicStateVector<Real>& v, Real t) {
  if (!std::isfinite(t)) throw InvalidArgument("evolution time must be finite");
  if (!v.space().on_grid()) throw InvalidArgument("free evolution needs a position grid");
  if (t == Real(0)) return Real(0);
  const auto& grid = *v.space().grid();
  const Index n = grid.n_points();
  const Real dx = grid.spacing();
  const Real reach = Real(M_PI) / dx * std::abs(t);
  const Real width = static_cast<Real>(n) * dx;
  Index factor = 4;
  while (factor < 64 && static_cast<Real>(factor - 1) * width < Real(2) * reach) factor *= 2;

  const Index total = n * factor;
  const Index offset = n * (factor / 2);
  std::vector<std::complex<Real>> padded(static_cast<std::size_t>(total));
  for (Index i = 0; i < n; ++i) padded[static_cast<std::size_t>(offset + i)] = v[i];
  auto out = detail::propagate_periodic<Real>(padded, dx, t);
  Real outside = 0;
  for (Index i = 0; i < total; ++i)
    if (i < offset || i >= offset + n) outside += std::norm(out[static_cast<std::size_t>(i)]);
  return std::sqrt(outside * dx);
}

/// free_evolve that refuses to run when the wrapped amplitude exceeds max_wrap.
template <typename Real>
BasicStateVector<Real> free_evolve_checked(const BasicStateVector<Real>& v, Real t, Real max_wrap = Real(tol::kWrap)) {
  const Real wrapped = wrap_around_amplitude(v, t);
  if (wrapped > max_wrap) throw WrapAroundError(static_cast<double>(wrapped), static_cast<double>(max_wrap));
  return free_evolve(v, t);
}

// ---------------------------------------------------------------------------

using PositionGrid = BasicPositionGrid<double>;
using Space = BasicSpace<double>;
using StateVector = BasicStateVector<double>;
using Projector = BasicProjector<double>;
using IntervalProjector = BasicIntervalProjector<double>;
using CompositeState = BasicCompositeState<double>;
using DetectorComponent = BasicDetectorComponent<double>;
using Complex = std::complex<double>;
using VectorXc = CVector<double>;
using MatrixXc = CMatrix<double>;

}  // namespace qlogic
