#pragma once

// Seeded random states and observables.
//
// Generator: std::mt19937_64, whose output sequence is fixed by the C++
// standard. Uniforms on (-1, 1) take the top 53 bits of one draw. Normals use
// the Marsaglia polar method; each accepted (u, v) pair becomes one standard
// complex Gaussian (u f + i v f) / sqrt(2), f = sqrt(-2 ln s / s), so that
// E|z|^2 = 1. Matrices are filled column-major.

#include <cstdint>
#include <random>

#include "urel/operator_core.hpp"

namespace urel {

enum class EnsembleKind { hilbert_schmidt_state, pure_state, gaussian_hermitian };

struct EnsembleSpec {
  Eigen::Index dim = 2;
  Eigen::Index rank = 2;
  std::uint64_t seed = 0;
  EnsembleKind kind = EnsembleKind::hilbert_schmidt_state;
};

using Rng = std::mt19937_64;

/// Stream for trial `index` of an ensemble seeded with `seed`.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(seed ^ index);
}

Complex standard_complex_gaussian(Rng& rng);

/// G G^dagger / tr(G G^dagger) with G dim x rank (rank 1 for pure_state).
DensityMatrix sample_density(const EnsembleSpec& spec);
DensityMatrix sample_density(const EnsembleSpec& spec, Rng& rng);

/// (G + G^dagger) / 2 with G dim x dim.
HermitianOperator sample_hermitian(const EnsembleSpec& spec);
HermitianOperator sample_hermitian(const EnsembleSpec& spec, Rng& rng);

/// Haar unitary via QR of a complex Gaussian matrix with the R-diagonal
/// phases divided out.
ComplexMatrix sample_unitary(Eigen::Index dim, Rng& rng);

}  // namespace urel
