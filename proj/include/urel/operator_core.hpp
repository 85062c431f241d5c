#pragma once

// Dense complex matrices, observables, density matrices and the
// Hilbert-Schmidt geometry everything else is built on.

#include <Eigen/Dense>

#include <complex>
#include <string_view>

#include "urel/errors.hpp"

namespace urel {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Relative hermiticity defect below which a matrix is symmetrized.
inline constexpr double kHermitianTol = 1e-12;
/// Absolute tolerance on negative eigenvalues before clamping.
inline constexpr double kPsdTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
/// Relative Frobenius tolerance for sqrt * sqrt == input.
inline constexpr double kSqrtTol = 1e-10;

/// Self-adjoint operator on a finite-dimensional space.
///
/// The constructor rejects non-square or non-finite input, and matrices
/// whose defect max|M - M^dagger| exceeds kHermitianTol * max|M|. Defects
/// below that are removed by replacing M with (M + M^dagger) / 2, so the
/// stored matrix is exactly Hermitian.
class HermitianOperator {
 public:
  explicit HermitianOperator(const ComplexMatrix& m);

  static HermitianOperator identity(Eigen::Index dim);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

  HermitianOperator scaled(double s) const;

 private:
  ComplexMatrix m_;
};

/// Positive semidefinite, unit-trace Hermitian operator with its principal
/// square root and spectrum cached at construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianOperator& rho);
  explicit DensityMatrix(const ComplexMatrix& rho)
      : DensityMatrix(HermitianOperator(rho)) {}

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  /// rho^{1/2}
  const ComplexMatrix& sqrt() const noexcept { return sqrt_; }
  /// Ascending, clamped to [0, inf).
  const RealVector& eigenvalues() const noexcept { return eigenvalues_; }
  Eigen::Index dim() const noexcept { return rho_.rows(); }

  /// tr(rho^2) within `tol` of 1.
  bool is_pure(double tol = 1e-10) const;

 private:
  ComplexMatrix rho_;
  ComplexMatrix sqrt_;
  RealVector eigenvalues_;
};

// Hilbert-Schmidt geometry ---------------------------------------------------

/// <T, S> = tr(T^dagger S)
Complex hs_inner(const ComplexMatrix& t, const ComplexMatrix& s);
/// ||T||_2 = sqrt(tr(T^dagger T))
double hs_norm(const ComplexMatrix& t);

/// Principal square root of a PSD operator by eigendecomposition; eigenvalues
/// in [-kPsdTol * max(1, max|lambda|), 0) are clamped to zero, anything more
/// negative throws NotPsdError.
ComplexMatrix matrix_sqrt(const HermitianOperator& m);

// Algebra ---------------------------------------------------------------------

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b);
HermitianOperator anticommutator(const HermitianOperator& a,
                                 const HermitianOperator& b);

/// <T>_rho = tr(T rho)
Complex expectation(const ComplexMatrix& t, const DensityMatrix& rho);
double expectation(const HermitianOperator& a, const DensityMatrix& rho);

/// ||A||_rho^2 = tr(A^2 rho)
double rho_norm_sq(const HermitianOperator& a, const DensityMatrix& rho);

/// tr(A rho^{1/2} A rho^{1/2}); real and nonnegative for Hermitian A.
double skew_trace(const HermitianOperator& a, const DensityMatrix& rho);

/// tr(B rho^{1/2} A rho^{1/2}); real for Hermitian A, B.
double skew_cross_trace(const HermitianOperator& b, const HermitianOperator& a,
                        const DensityMatrix& rho);

/// A_0 = A - <A>_rho I
HermitianOperator center(const HermitianOperator& a, const DensityMatrix& rho);

/// Var_rho(A) = tr(rho A^2) - tr(rho A)^2
double variance(const HermitianOperator& a, const DensityMatrix& rho);

// Helpers shared across modules ----------------------------------------------------

/// Throws ShapeError naming `op` unless both dimensions agree.
void require_same_dim(Eigen::Index lhs, Eigen::Index rhs, std::string_view op);

/// max(1, |x|, |y|); the scale all relative tolerances are taken against.
double tolerance_scale(double x, double y = 0.0);

}  // namespace urel
