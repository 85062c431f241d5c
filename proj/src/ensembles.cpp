#include "urel/ensembles.hpp"

#include <Eigen/QR>

#include <cmath>
#include <string>

namespace urel {

namespace {

double uniform_pm1(Rng& rng) {
  constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
  return 2.0 * static_cast<double>(rng() >> 11) * kTwoPowMinus53 - 1.0;
}

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = standard_complex_gaussian(rng);
  }
  return g;
}

void validate(const EnsembleSpec& spec) {
  if (spec.dim < 1) throw ParameterError("EnsembleSpec: dim must be positive");
  if (spec.rank < 1 || spec.rank > spec.dim) {
    throw ParameterError("EnsembleSpec: rank " + std::to_string(spec.rank) +
                         " outside [1, " + std::to_string(spec.dim) + "]");
  }
}

}  // namespace

Complex standard_complex_gaussian(Rng& rng) {
  double u = 0.0, v = 0.0, s = 0.0;
  do {
    u = uniform_pm1(rng);
    v = uniform_pm1(rng);
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s) / std::sqrt(2.0);
  return {u * f, v * f};
}

DensityMatrix sample_density(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  return sample_density(spec, rng);
}

DensityMatrix sample_density(const EnsembleSpec& spec, Rng& rng) {
  validate(spec);
  Eigen::Index rank = spec.rank;
  switch (spec.kind) {
    case EnsembleKind::pure_state: rank = 1; break;
    case EnsembleKind::hilbert_schmidt_state: break;
    case EnsembleKind::gaussian_hermitian:
      throw ParameterError("sample_density: gaussian_hermitian is not a state ensemble");
  }
  const ComplexMatrix g = gaussian_matrix(spec.dim, rank, rng);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix(HermitianOperator(w));
}

HermitianOperator sample_hermitian(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  return sample_hermitian(spec, rng);
}

HermitianOperator sample_hermitian(const EnsembleSpec& spec, Rng& rng) {
  if (spec.kind != EnsembleKind::gaussian_hermitian) {
    throw ParameterError("sample_hermitian: spec kind must be gaussian_hermitian");
  }
  if (spec.dim < 1) throw ParameterError("EnsembleSpec: dim must be positive");
  const ComplexMatrix g = gaussian_matrix(spec.dim, spec.dim, rng);
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

ComplexMatrix sample_unitary(Eigen::Index dim, Rng& rng) {
  if (dim < 1) throw ParameterError("sample_unitary: dim must be positive");
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace urel
