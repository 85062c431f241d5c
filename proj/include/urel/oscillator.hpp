#pragma once

// Harmonic oscillator on the first `dim` Fock levels, with hbar = m = omega = 1
// and momentum P = i d/dx.
//
// Truncation leaves [a, a^dagger] = 1 only on levels 0..dim-2; the top level
// carries a -(dim-1) defect. Identities involving the commutator are
// therefore only meaningful on the interior block.

#include <utility>
#include <vector>

#include "urel/bounds.hpp"
#include "urel/operator_core.hpp"

namespace urel::oscillator {

struct FockSpace {
  explicit FockSpace(Eigen::Index levels);
  Eigen::Index dim;
};

struct LadderOps {
  ComplexMatrix a;      // a|n> = sqrt(n)|n-1>
  ComplexMatrix a_dag;
};

LadderOps ladder_ops(const FockSpace& space);

struct PQ {
  HermitianOperator p;  // (i/sqrt2)(a - a^dagger)
  HermitianOperator q;  // (1/sqrt2)(a + a^dagger)
};

PQ pq_ops(const FockSpace& space);

/// N = a^dagger a = diag(0, 1, ..., dim-1)
HermitianOperator number_op(const FockSpace& space);
/// H = N + 1/2 built from the truncated N.
HermitianOperator hamiltonian(const FockSpace& space);

/// Gibbs state exp(-beta H) / Z with Z renormalized inside the truncation.
DensityMatrix thermal_state(double beta, const FockSpace& space);

/// Untruncated thermal-state values as functions of beta.
struct ClosedForms {
  double beta = 0.0;
  double mean_occupation = 0.0;  // <a^dagger a>
  double q_var = 0.0;            // ||Q||_rho^2
  double p_var = 0.0;
  double q_skew_trace = 0.0;     // tr(Q s Q s)
  double p_skew_trace = 0.0;
  double rhs = 0.0;              // ||P||^2 ||Q||^2
  double lhs_21 = 0.0;
  double lhs_22 = 0.0;
  double m1_pq = 0.0;
  double skew_info_q = 0.0;
};

ClosedForms closed_forms(double beta);

struct ConvergenceRow {
  Eigen::Index dim = 0;
  UncertaintyReport report;
  double mean_occupation = 0.0;
  double q_skew_trace = 0.0;
  double dev_lhs_21 = 0.0;
  double dev_lhs_22 = 0.0;
  double dev_lhs_41 = 0.0;
  double dev_rhs = 0.0;

  double max_deviation() const;
};

/// Evaluates (P, Q, thermal rho) at each truncation and compares with
/// closed_forms(beta). `dims` must be ascending and each >= 4.
std::vector<ConvergenceRow> convergence_sweep(double beta,
                                              const std::vector<Eigen::Index>& dims);

}  // namespace urel::oscillator
