#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/oracles.hpp"
#include "urel/ensembles.hpp"
#include "urel/errors.hpp"

using namespace urel;
using Catch::Matchers::WithinAbs;

TEST_CASE("sample_density shapes and ranks", "[ensembles]") {
  const DensityMatrix pure = sample_density({4, 1, 3, EnsembleKind::hilbert_schmidt_state});
  CHECK((pure.matrix() * pure.matrix() - pure.matrix()).norm() <= 1e-12);
  CHECK(pure.is_pure());
  const DensityMatrix pure2 = sample_density({4, 4, 3, EnsembleKind::pure_state});
  CHECK(pure2.is_pure());

  const DensityMatrix full = sample_density({4, 4, 12, EnsembleKind::hilbert_schmidt_state});
  CHECK_THAT(full.eigenvalues().sum(), WithinAbs(1.0, 1e-12));
  CHECK(full.eigenvalues().minCoeff() >= 0.0);

  CHECK_THROWS_AS(sample_density({3, 0, 1, EnsembleKind::hilbert_schmidt_state}), ParameterError);
  CHECK_THROWS_AS(sample_density({3, 4, 1, EnsembleKind::hilbert_schmidt_state}), ParameterError);
  CHECK_THROWS_AS(sample_density({3, 3, 1, EnsembleKind::gaussian_hermitian}), ParameterError);
}

TEST_CASE("sampled states need no clamping", "[ensembles]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Eigen::Index dim = 2 + seed % 7;
    const ComplexMatrix m =
        sample_density({dim, dim, seed, EnsembleKind::hilbert_schmidt_state}).matrix();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
    CHECK(es.eigenvalues().minCoeff() >= -1e-14);
  }
}

TEST_CASE("determinism", "[ensembles]") {
  const EnsembleSpec spec{5, 3, 42, EnsembleKind::hilbert_schmidt_state};
  CHECK(sample_density(spec).matrix() == sample_density(spec).matrix());
  const EnsembleSpec obs{3, 3, 42, EnsembleKind::gaussian_hermitian};
  CHECK(sample_hermitian(obs).matrix() == sample_hermitian(obs).matrix());
  const EnsembleSpec other{3, 3, 43, EnsembleKind::gaussian_hermitian};
  CHECK(sample_hermitian(obs).matrix() != sample_hermitian(other).matrix());
}

TEST_CASE("golden first row", "[ensembles]") {
  // dim 3, full rank, seed 2024. Frozen on first generation.
  const ComplexMatrix m =
      sample_density({3, 3, 2024, EnsembleKind::hilbert_schmidt_state}).matrix();
  const Complex golden[3] = {
      {0.287862246929601, 0.0},
      {-0.238208602165335, 0.181198191609275},
      {0.0133698147767225, 0.0751881043003136},
  };
  for (int j = 0; j < 3; ++j) {
    CHECK_THAT(m(0, j).real(), WithinAbs(golden[j].real(), 1e-15));
    CHECK_THAT(m(0, j).imag(), WithinAbs(golden[j].imag(), 1e-15));
  }
}

TEST_CASE("sample_hermitian", "[ensembles]") {
  const HermitianOperator h = sample_hermitian({2, 2, 5, EnsembleKind::gaussian_hermitian});
  CHECK((h.matrix() - h.matrix().adjoint()).norm() == 0.0);
  CHECK_THROWS_AS(sample_hermitian({2, 2, 5, EnsembleKind::pure_state}), ParameterError);
}

TEST_CASE("sample_hermitian entries have zero mean", "[ensembles]") {
  const int n = 10000;
  const Eigen::Index dim = 3;
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  Rng rng(777);
  for (int i = 0; i < n; ++i) {
    sum += sample_hermitian({dim, dim, 0, EnsembleKind::gaussian_hermitian}, rng).matrix();
  }
  const ComplexMatrix mean = sum / double(n);
  // Diagonal entries: real, variance 1/2. Off-diagonal parts: variance 1/4.
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double se = std::sqrt((i == j ? 0.5 : 0.25) / n);
      CHECK(std::abs(mean(i, j).real()) <= 5 * se);
      if (i != j) CHECK(std::abs(mean(i, j).imag()) <= 5 * se);
    }
  }
}

TEST_CASE("standard complex gaussian moments", "[ensembles]") {
  Rng rng(1);
  const int n = 20000;
  double re = 0, im = 0, mod2 = 0;
  for (int i = 0; i < n; ++i) {
    const Complex z = standard_complex_gaussian(rng);
    re += z.real();
    im += z.imag();
    mod2 += std::norm(z);
  }
  CHECK(std::abs(re / n) <= 5 * std::sqrt(0.5 / n));
  CHECK(std::abs(im / n) <= 5 * std::sqrt(0.5 / n));
  // E|z|^2 = 1, Var|z|^2 = 1
  CHECK(std::abs(mod2 / n - 1.0) <= 5 * std::sqrt(1.0 / n));
}

TEST_CASE("trial streams", "[ensembles]") {
  Rng a = trial_rng(7, 3);
  Rng b(7 ^ 3);
  CHECK(a() == b());
}
