#pragma once

// Lower bounds on ||A||_rho^2 ||B||_rho^2: the commutator (Heisenberg) and
// commutator + anticommutator (Schroedinger) forms, and their sharpenings by
// skew-trace and projection correction terms.

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "urel/decomposition.hpp"
#include "urel/operator_core.hpp"

namespace urel {

/// Relative gap below which ||B||_rho^4 - tr(B s B s)^2 counts as zero and the
/// M1/M2 correction terms take their degenerate value 0.
inline constexpr double kDegeneracyGuard = 1e-10;

/// Wigner-Yanase skew information (1/2) tr([s, A][A, s]), s = rho^{1/2}.
double skew_information(const DensityMatrix& rho, const HermitianOperator& a);

/// (1/4)|<[A,B]>|^2 + tr(A s A s) tr(B s B s)
double thm21_lhs(const HermitianOperator& a, const HermitianOperator& b,
                 const DensityMatrix& rho);

/// First correction term. Roles are not symmetric: B supplies the skew trace.
double m1_term(const HermitianOperator& a, const HermitianOperator& b,
               const DensityMatrix& rho);

/// Second correction term, from the real part of <B_rho^perp, A_rho>.
double m2_term(const HermitianOperator& a, const HermitianOperator& b,
               const DensityMatrix& rho);

/// ||B||_rho^2 * m3 where m3 is the best gain available by rotating A_rho
/// inside span{A_rho, A_rho^perp} towards S.
double m3_term(const HermitianOperator& a, const HermitianOperator& b,
               const DensityMatrix& rho);

/// m3 = ((a-b)^2 + 4c^2)^{1/2}/2 - (a-b)/2 in cancellation-free form.
double m3_gain(const AbcQuantities& abc);

struct OptimalCoefficients {
  double alpha = 1.0;
  double gamma = 0.0;
};

/// Maximizer of alpha^2 a + 2 alpha gamma c + gamma^2 b on the quarter circle
/// alpha^2 + gamma^2 = 1, alpha, gamma >= 0. Falls back to (1,0) / (0,1) when d
/// is undefined (c ~ 0).
OptimalCoefficients optimal_coefficients(const AbcQuantities& abc);

/// Value of the quadratic form above at (alpha, gamma).
double projected_length_sq(const AbcQuantities& abc,
                           const OptimalCoefficients& coeffs);

double thm22_lhs(const HermitianOperator& a, const HermitianOperator& b,
                 const DensityMatrix& rho);
double thm41_lhs(const HermitianOperator& a, const HermitianOperator& b,
                 const DensityMatrix& rho);

enum class Bound { heisenberg, schrodinger, thm21, thm22, thm41 };

inline constexpr std::array<Bound, 5> kAllBounds = {
    Bound::heisenberg, Bound::schrodinger, Bound::thm21, Bound::thm22,
    Bound::thm41};

std::string_view bound_name(Bound bound);

struct Margins {
  double heisenberg = 0.0;
  double schrodinger = 0.0;
  double thm21 = 0.0;
  double thm22 = 0.0;
  double thm41 = 0.0;

  double get(Bound bound) const;
};

/// Every term of every bound for one (A, B, rho). Field names are part of the
/// JSON/CSV output format; do not rename.
struct UncertaintyReport {
  double commutator_term = 0.0;      // (1/4)|<[A,B]>|^2
  double anticommutator_term = 0.0;  // (1/4)|<{A,B}>|^2
  double skew_product_term = 0.0;    // tr(AsAs) tr(BsBs)
  double m1_fwd = 0.0, m1_rev = 0.0;
  double m2_fwd = 0.0, m2_rev = 0.0;
  double m3_fwd = 0.0, m3_rev = 0.0;
  double M_thm22 = 0.0;
  double M_tilde_thm41 = 0.0;
  double lhs_heisenberg = 0.0;
  double lhs_schrodinger = 0.0;
  double lhs_thm21 = 0.0;
  double lhs_thm22 = 0.0;
  double lhs_thm41 = 0.0;
  /// ||A||_rho^2 ||B||_rho^2 of the evaluated operators; Var(A) Var(B) when
  /// centered.
  double rhs = 0.0;
  Margins margins;
  double skew_info_A = 0.0;
  double skew_info_B = 0.0;
  bool centered = true;
  /// e.g. "m1_fwd: guard: degenerate"
  std::vector<std::string> notes;

  double lhs(Bound bound) const;
};

/// Evaluates every bound. With `centered`, A and B are first replaced by
/// A - <A> and B - <B>. Throws NumericError on a non-finite term.
UncertaintyReport evaluate_all(const HermitianOperator& a,
                               const HermitianOperator& b,
                               const DensityMatrix& rho, bool centered = true);

struct BoundCheck {
  Bound bound = Bound::heisenberg;
  double margin = 0.0;
  bool pass = false;
  bool equality = false;
};

struct VerificationResult {
  std::array<BoundCheck, 5> checks{};
  bool pass = false;

  const BoundCheck& get(Bound bound) const;
};

/// pass iff margin >= -tol; equality iff |margin| <= tol.
VerificationResult verify(const UncertaintyReport& report, double tol);

}  // namespace urel
