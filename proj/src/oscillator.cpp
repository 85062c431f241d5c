#include "urel/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace urel::oscillator {

namespace {

void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("inverse temperature must be positive and finite, got " +
                         std::to_string(beta));
  }
}

}  // namespace

FockSpace::FockSpace(Eigen::Index levels) : dim(levels) {
  if (levels < 2) throw ParameterError("FockSpace: need at least 2 levels");
}

LadderOps ladder_ops(const FockSpace& space) {
  ComplexMatrix a = ComplexMatrix::Zero(space.dim, space.dim);
  for (Eigen::Index n = 1; n < space.dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  ComplexMatrix a_dag = a.adjoint();
  return {std::move(a), std::move(a_dag)};
}

PQ pq_ops(const FockSpace& space) {
  const LadderOps l = ladder_ops(space);
  const Complex i_over_root2(0.0, 1.0 / std::sqrt(2.0));
  return {HermitianOperator(i_over_root2 * (l.a - l.a_dag)),
          HermitianOperator((l.a + l.a_dag) / std::sqrt(2.0))};
}

HermitianOperator number_op(const FockSpace& space) {
  const LadderOps l = ladder_ops(space);
  return HermitianOperator(l.a_dag * l.a);
}

HermitianOperator hamiltonian(const FockSpace& space) {
  ComplexMatrix h = number_op(space).matrix();
  h.diagonal().array() += 0.5;
  return HermitianOperator(h);
}

DensityMatrix thermal_state(double beta, const FockSpace& space) {
  require_beta(beta);
  const RealVector energies = hamiltonian(space).matrix().diagonal().real();
  // Shift by the ground energy; exp(-beta E) / Z is unchanged and nothing
  // underflows to an all-zero vector at large beta.
  RealVector weights = (-beta * (energies.array() - energies.minCoeff())).exp();
  weights /= weights.sum();
  ComplexMatrix rho = ComplexMatrix::Zero(space.dim, space.dim);
  rho.diagonal() = weights.cast<Complex>();
  return DensityMatrix(rho);
}

ClosedForms closed_forms(double beta) {
  require_beta(beta);
  const double half = 0.5 * beta;
  const double sh = std::sinh(half);
  const double th = std::tanh(half);

  ClosedForms c;
  c.beta = beta;
  c.mean_occupation = 1.0 / std::expm1(beta);
  c.q_var = 0.5 / th;
  c.p_var = c.q_var;
  c.q_skew_trace = 0.5 / sh;
  c.p_skew_trace = c.q_skew_trace;
  c.rhs = 0.25 / (th * th);
  c.m1_pq = 0.25 / (sh * sh);
  c.lhs_21 = 0.25 + c.q_skew_trace * c.p_skew_trace;
  c.lhs_22 = 0.25 + c.m1_pq;
  c.skew_info_q = 0.5 * std::tanh(0.25 * beta);
  return c;
}

double ConvergenceRow::max_deviation() const {
  return std::max({dev_lhs_21, dev_lhs_22, dev_lhs_41, dev_rhs});
}

std::vector<ConvergenceRow> convergence_sweep(double beta,
                                              const std::vector<Eigen::Index>& dims) {
  require_beta(beta);
  if (dims.empty()) throw ParameterError("convergence_sweep: no dimensions");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 4) throw ParameterError("convergence_sweep: dims must be >= 4");
    if (i > 0 && dims[i] <= dims[i - 1]) {
      throw ParameterError("convergence_sweep: dims must be ascending");
    }
  }

  const ClosedForms exact = closed_forms(beta);
  std::vector<ConvergenceRow> rows;
  rows.reserve(dims.size());
  for (Eigen::Index dim : dims) {
    const FockSpace space(dim);
    const PQ ops = pq_ops(space);
    const DensityMatrix rho = thermal_state(beta, space);

    ConvergenceRow row;
    row.dim = dim;
    row.report = evaluate_all(ops.p, ops.q, rho, /*centered=*/true);
    row.mean_occupation = expectation(number_op(space), rho);
    row.q_skew_trace = skew_trace(ops.q, rho);
    row.dev_lhs_21 = std::abs(row.report.lhs_thm21 - exact.lhs_21);
    row.dev_lhs_22 = std::abs(row.report.lhs_thm22 - exact.lhs_22);
    row.dev_lhs_41 = std::abs(row.report.lhs_thm41 - exact.lhs_22);
    row.dev_rhs = std::abs(row.report.rhs - exact.rhs);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace urel::oscillator
