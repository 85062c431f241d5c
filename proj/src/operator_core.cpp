#include "urel/operator_core.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace urel {

namespace {

struct Root {
  ComplexMatrix root;
  RealVector eigenvalues;
};

Root principal_root(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericError("matrix_sqrt", "matrix_sqrt: eigendecomposition failed");
  }
  RealVector lambda = es.eigenvalues();
  const double floor =
      -kPsdTol * std::max(1.0, lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0);
  if (lambda.size() > 0 && lambda.minCoeff() < floor) {
    throw NotPsdError("matrix_sqrt: eigenvalue " + std::to_string(lambda.minCoeff()) +
                      " below tolerance");
  }
  // Eigenvalues inside the solver's rounding band are zero; their square
  // roots would otherwise inject ~1e-8 noise into rank-deficient roots.
  // Diagonal input decomposes exactly and has no such band.
  const double noise = m.isDiagonal(0.0) ? 0.0 :
                       static_cast<double>(lambda.size()) *
                       std::numeric_limits<double>::epsilon() *
                       (lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0);
  lambda = lambda.unaryExpr([noise](double x) { return x <= noise ? 0.0 : x; });

  const ComplexMatrix& v = es.eigenvectors();
  ComplexMatrix root = v * lambda.cwiseSqrt().asDiagonal() * v.adjoint();
  root = (0.5 * (root + root.adjoint())).eval();

  const double scale = std::max(1.0, m.norm());
  if ((root * root - m).norm() > kSqrtTol * scale) {
    throw NumericError("matrix_sqrt", "matrix_sqrt: root does not reproduce input");
  }
  return {std::move(root), std::move(lambda)};
}

}  // namespace

HermitianOperator::HermitianOperator(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ShapeError("HermitianOperator: matrix must be square and nonempty");
  }
  if (!m.allFinite()) {
    throw NotHermitianError("HermitianOperator: non-finite entry");
  }
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  const double magnitude = m.cwiseAbs().maxCoeff();
  if (defect > kHermitianTol * magnitude) {
    throw NotHermitianError("HermitianOperator: hermiticity defect " +
                            std::to_string(defect));
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim) {
  return HermitianOperator(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::scaled(double s) const {
  return HermitianOperator(s * m_);
}

DensityMatrix::DensityMatrix(const HermitianOperator& rho) : rho_(rho.matrix()) {
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr) + " != 1");
  }
  Root r = principal_root(rho_);
  sqrt_ = std::move(r.root);
  eigenvalues_ = std::move(r.eigenvalues);
}

bool DensityMatrix::is_pure(double tol) const {
  return std::abs((rho_ * rho_).trace().real() - 1.0) <= tol;
}

void require_same_dim(Eigen::Index lhs, Eigen::Index rhs, std::string_view op) {
  if (lhs != rhs) {
    throw ShapeError(std::string(op) + ": dimension mismatch (" + std::to_string(lhs) +
                     " vs " + std::to_string(rhs) + ")");
  }
}

double tolerance_scale(double x, double y) {
  return std::max({1.0, std::abs(x), std::abs(y)});
}

Complex hs_inner(const ComplexMatrix& t, const ComplexMatrix& s) {
  if (t.rows() != s.rows() || t.cols() != s.cols()) {
    throw ShapeError("hs_inner: dimension mismatch");
  }
  return (t.adjoint() * s).trace();
}

double hs_norm(const ComplexMatrix& t) {
  return std::sqrt(std::max(0.0, hs_inner(t, t).real()));
}

ComplexMatrix matrix_sqrt(const HermitianOperator& m) {
  return principal_root(m.matrix()).root;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.rows(), b.rows(), "commutator");
  return a * b - b * a;
}

ComplexMatrix commutator(const HermitianOperator& a, const HermitianOperator& b) {
  return commutator(a.matrix(), b.matrix());
}

HermitianOperator anticommutator(const HermitianOperator& a,
                                 const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "anticommutator");
  const ComplexMatrix ab = a.matrix() * b.matrix();
  return HermitianOperator(ab + ab.adjoint());
}

Complex expectation(const ComplexMatrix& t, const DensityMatrix& rho) {
  require_same_dim(t.rows(), rho.dim(), "expectation");
  return (t * rho.matrix()).trace();
}

double expectation(const HermitianOperator& a, const DensityMatrix& rho) {
  return expectation(a.matrix(), rho).real();
}

double rho_norm_sq(const HermitianOperator& a, const DensityMatrix& rho) {
  require_same_dim(a.dim(), rho.dim(), "rho_norm_sq");
  return std::max(0.0, (a.matrix() * a.matrix() * rho.matrix()).trace().real());
}

double skew_cross_trace(const HermitianOperator& b, const HermitianOperator& a,
                        const DensityMatrix& rho) {
  require_same_dim(a.dim(), rho.dim(), "skew_cross_trace");
  require_same_dim(b.dim(), rho.dim(), "skew_cross_trace");
  const ComplexMatrix& s = rho.sqrt();
  return (b.matrix() * s * a.matrix() * s).trace().real();
}

double skew_trace(const HermitianOperator& a, const DensityMatrix& rho) {
  return std::max(0.0, skew_cross_trace(a, a, rho));
}

HermitianOperator center(const HermitianOperator& a, const DensityMatrix& rho) {
  const double mean = expectation(a, rho);
  ComplexMatrix shifted = a.matrix();
  shifted.diagonal().array() -= mean;
  return HermitianOperator(shifted);
}

double variance(const HermitianOperator& a, const DensityMatrix& rho) {
  const double mean = expectation(a, rho);
  return rho_norm_sq(a, rho) - mean * mean;
}

}  // namespace urel
