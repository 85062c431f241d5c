#pragma once

// Orthogonal splitting of A rho^{1/2} into its Hermitian and anti-Hermitian
// parts, and the geometry of the two-dimensional subspace those parts span.

#include <optional>

#include "urel/operator_core.hpp"

namespace urel {

/// A rho^{1/2} = plus + minus with
///   plus  = (A rho^{1/2} + rho^{1/2} A) / 2   (Hermitian)
///   minus = (A rho^{1/2} - rho^{1/2} A) / 2   (anti-Hermitian)
/// The parts are HS-orthogonal. hat_* are the unit directions, or the zero
/// matrix when the corresponding part vanishes (see kDegenerateNorm).
struct RhoDecomposition {
  ComplexMatrix plus;
  ComplexMatrix minus;
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  ComplexMatrix hat_plus;
  ComplexMatrix hat_minus;

  /// A rho^{1/2}
  ComplexMatrix combined() const { return plus + minus; }
  double norm() const;
  bool plus_degenerate() const { return norm_plus == 0.0; }
  bool minus_degenerate() const { return norm_minus == 0.0; }
};

/// A part whose HS norm is at most this fraction of ||A rho^{1/2}||_2 is
/// treated as zero: its norm is reported as 0 and its hat vector is the zero
/// matrix. The part matrix itself is kept as computed.
inline constexpr double kDegenerateNorm = 1e-12;

/// Hat vectors whose numeric overlap exceeds this are re-orthogonalized.
inline constexpr double kHatOverlapTol = 1e-10;

RhoDecomposition decompose(const HermitianOperator& a, const DensityMatrix& rho);

/// One inner product computed twice: from the decomposition matrices and from
/// the trace closed form.
struct GramEntry {
  Complex by_definition;
  Complex closed_form;
  double deviation() const { return std::abs(by_definition - closed_form); }
};

/// Mixed-parity entry <B_{rho,+-}, A_{rho,-+}>. Only its squared modulus has
/// a closed form we rely on: |tr([B, A] rho)|^2 / 16.
struct CrossGramEntry {
  Complex by_definition;
  double closed_form_abs2 = 0.0;
  double deviation() const {
    return std::abs(std::norm(by_definition) - closed_form_abs2);
  }
};

struct GramTable {
  GramEntry a_plus_plus;    // <A+, A+>
  GramEntry a_minus_minus;  // <A-, A->
  GramEntry b_plus_plus;    // <B+, B+>
  GramEntry b_minus_minus;  // <B-, B->
  GramEntry b_plus_a_plus;  // <B+, A+>
  GramEntry b_minus_a_minus;  // <B-, A->
  CrossGramEntry b_plus_a_minus;  // <B+, A->
  CrossGramEntry b_minus_a_plus;  // <B-, A+>

  /// Largest |definition - closed form| over all eight entries.
  double max_deviation() const;
};

GramTable gram_table(const HermitianOperator& a, const HermitianOperator& b,
                     const DensityMatrix& rho);

/// A_rho^perp = ||A-|| hat(A+) - ||A+|| hat(A-); zero when A- is degenerate.
ComplexMatrix perp_vector(const RhoDecomposition& dec);

/// Orthogonal projection of X onto S = span{hat(B+), hat(B-)}.
ComplexMatrix project_onto_span(const ComplexMatrix& x,
                                const RhoDecomposition& b_dec);

struct AbcQuantities {
  double a = 0.0;  // ||P_S A_rho||^2
  double b = 0.0;  // ||P_S A_rho^perp||^2
  double c = 0.0;  // |<P_S A_rho, P_S A_rho^perp>|
  /// (a - b) / 2c; empty when c <= kAbcCThreshold * max(1, a, b).
  std::optional<double> d;
};

inline constexpr double kAbcCThreshold = 1e-12;

AbcQuantities abc_quantities(const RhoDecomposition& a_dec,
                             const RhoDecomposition& b_dec);

}  // namespace urel
