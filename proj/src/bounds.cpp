#include "urel/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace urel {

namespace {

// Traces every correction term with B in the "second" role needs.
struct SecondRole {
  double norm_sq;   // ||B||_rho^2
  double skew;      // tr(B s B s)
  double gap;       // ||B||^4 - skew^2
  bool degenerate;  // the "= 0 otherwise" branch
};

SecondRole second_role(const HermitianOperator& b, const DensityMatrix& rho) {
  SecondRole r{};
  r.norm_sq = rho_norm_sq(b, rho);
  r.skew = skew_trace(b, rho);
  r.gap = r.norm_sq * r.norm_sq - r.skew * r.skew;
  r.degenerate = !(r.gap > kDegeneracyGuard * r.norm_sq * r.norm_sq);
  return r;
}

double comm_abs(const HermitianOperator& a, const HermitianOperator& b,
                const DensityMatrix& rho) {
  return std::abs(expectation(commutator(a, b), rho));
}

// Plain matrix route so overflow surfaces as a non-finite term, not as a
// rejected HermitianOperator.
double anti_expect(const HermitianOperator& a, const HermitianOperator& b,
                   const DensityMatrix& rho) {
  const ComplexMatrix ab = a.matrix() * b.matrix();
  return expectation(ComplexMatrix(ab + ab.adjoint()), rho).real();
}

double m1_from(double comm, const SecondRole& r) {
  if (r.degenerate) return 0.0;
  const double num = comm * r.skew;
  return 0.25 * num * num / r.gap;
}

double m2_from(const HermitianOperator& a, const HermitianOperator& b,
               const DensityMatrix& rho, const SecondRole& r,
               const RhoDecomposition& b_dec) {
  if (r.degenerate || b_dec.minus_degenerate()) return 0.0;
  const double cross = skew_cross_trace(b, a, rho);
  const double anti = anti_expect(b, a, rho);
  const double bracket = r.norm_sq * cross - 0.5 * anti * r.skew;
  const double norms = b_dec.norm_plus * b_dec.norm_minus;
  return 0.25 * bracket * bracket / (norms * norms);
}

void require_finite(double value, const char* term) {
  if (!std::isfinite(value)) {
    throw NumericError(term, std::string("evaluate_all: non-finite ") + term);
  }
}

}  // namespace

double skew_information(const DensityMatrix& rho, const HermitianOperator& a) {
  require_same_dim(a.dim(), rho.dim(), "skew_information");
  const ComplexMatrix sa = commutator(rho.sqrt(), a.matrix());
  // [A, s] = -[s, A]
  return -0.5 * (sa * sa).trace().real();
}

double thm21_lhs(const HermitianOperator& a, const HermitianOperator& b,
                 const DensityMatrix& rho) {
  require_same_dim(a.dim(), b.dim(), "thm21_lhs");
  const double comm = comm_abs(a, b, rho);
  return 0.25 * comm * comm + skew_trace(a, rho) * skew_trace(b, rho);
}

double m1_term(const HermitianOperator& a, const HermitianOperator& b,
               const DensityMatrix& rho) {
  require_same_dim(a.dim(), b.dim(), "m1_term");
  return m1_from(comm_abs(a, b, rho), second_role(b, rho));
}

double m2_term(const HermitianOperator& a, const HermitianOperator& b,
               const DensityMatrix& rho) {
  require_same_dim(a.dim(), b.dim(), "m2_term");
  return m2_from(a, b, rho, second_role(b, rho), decompose(b, rho));
}

double m3_gain(const AbcQuantities& abc) {
  const double delta = abc.a - abc.b;
  const double root = std::hypot(delta, 2.0 * abc.c);
  if (delta > 0.0) return 2.0 * abc.c * abc.c / (root + delta);
  return 0.5 * (root - delta);
}

double m3_term(const HermitianOperator& a, const HermitianOperator& b,
               const DensityMatrix& rho) {
  require_same_dim(a.dim(), b.dim(), "m3_term");
  const AbcQuantities abc = abc_quantities(decompose(a, rho), decompose(b, rho));
  return rho_norm_sq(b, rho) * m3_gain(abc);
}

OptimalCoefficients optimal_coefficients(const AbcQuantities& abc) {
  if (!abc.d) {
    return abc.a >= abc.b ? OptimalCoefficients{1.0, 0.0}
                          : OptimalCoefficients{0.0, 1.0};
  }
  const double d = *abc.d;
  const double r = std::hypot(d, 1.0);
  // d + sqrt(d^2 + 1), rewritten for d < 0 to avoid cancellation
  const double ratio = d >= 0.0 ? d + r : 1.0 / (r - d);
  const double gamma = 1.0 / std::hypot(1.0, ratio);
  return {ratio * gamma, gamma};
}

double projected_length_sq(const AbcQuantities& abc,
                           const OptimalCoefficients& k) {
  return k.alpha * k.alpha * abc.a + 2.0 * k.alpha * k.gamma * abc.c +
         k.gamma * k.gamma * abc.b;
}

double thm22_lhs(const HermitianOperator& a, const HermitianOperator& b,
                 const DensityMatrix& rho) {
  require_same_dim(a.dim(), b.dim(), "thm22_lhs");
  const double comm = comm_abs(a, b, rho);
  const double anti = anti_expect(a, b, rho);
  const double m = std::max(m1_from(comm, second_role(b, rho)),
                            m1_from(comm, second_role(a, rho)));
  return 0.25 * comm * comm + 0.25 * anti * anti + m;
}

double thm41_lhs(const HermitianOperator& a, const HermitianOperator& b,
                 const DensityMatrix& rho) {
  require_same_dim(a.dim(), b.dim(), "thm41_lhs");
  const double comm = comm_abs(a, b, rho);
  const double anti = anti_expect(a, b, rho);
  const double fwd = m1_term(a, b, rho) + m2_term(a, b, rho) + m3_term(a, b, rho);
  const double rev = m1_term(b, a, rho) + m2_term(b, a, rho) + m3_term(b, a, rho);
  return 0.25 * comm * comm + 0.25 * anti * anti + std::max(fwd, rev);
}

std::string_view bound_name(Bound bound) {
  switch (bound) {
    case Bound::heisenberg: return "heisenberg";
    case Bound::schrodinger: return "schrodinger";
    case Bound::thm21: return "thm21";
    case Bound::thm22: return "thm22";
    case Bound::thm41: return "thm41";
  }
  return "unknown";
}

double Margins::get(Bound bound) const {
  switch (bound) {
    case Bound::heisenberg: return heisenberg;
    case Bound::schrodinger: return schrodinger;
    case Bound::thm21: return thm21;
    case Bound::thm22: return thm22;
    case Bound::thm41: return thm41;
  }
  return 0.0;
}

double UncertaintyReport::lhs(Bound bound) const {
  switch (bound) {
    case Bound::heisenberg: return lhs_heisenberg;
    case Bound::schrodinger: return lhs_schrodinger;
    case Bound::thm21: return lhs_thm21;
    case Bound::thm22: return lhs_thm22;
    case Bound::thm41: return lhs_thm41;
  }
  return 0.0;
}

UncertaintyReport evaluate_all(const HermitianOperator& a_in,
                               const HermitianOperator& b_in,
                               const DensityMatrix& rho, bool centered) {
  require_same_dim(a_in.dim(), b_in.dim(), "evaluate_all");
  require_same_dim(a_in.dim(), rho.dim(), "evaluate_all");
  const HermitianOperator a = centered ? center(a_in, rho) : a_in;
  const HermitianOperator b = centered ? center(b_in, rho) : b_in;

  UncertaintyReport rep;
  rep.centered = centered;

  const double comm = comm_abs(a, b, rho);
  const double anti = anti_expect(a, b, rho);
  rep.commutator_term = 0.25 * comm * comm;
  rep.anticommutator_term = 0.25 * anti * anti;

  const SecondRole ra = second_role(a, rho);
  const SecondRole rb = second_role(b, rho);
  rep.skew_product_term = ra.skew * rb.skew;

  const RhoDecomposition da = decompose(a, rho);
  const RhoDecomposition db = decompose(b, rho);

  rep.m1_fwd = m1_from(comm, rb);
  rep.m1_rev = m1_from(comm, ra);
  rep.m2_fwd = m2_from(a, b, rho, rb, db);
  rep.m2_rev = m2_from(b, a, rho, ra, da);
  rep.m3_fwd = rb.norm_sq * m3_gain(abc_quantities(da, db));
  rep.m3_rev = ra.norm_sq * m3_gain(abc_quantities(db, da));
  if (rb.degenerate) {
    rep.notes.emplace_back("m1_fwd: guard: degenerate");
    rep.notes.emplace_back("m2_fwd: guard: degenerate");
  } else if (db.minus_degenerate()) {
    rep.notes.emplace_back("m2_fwd: guard: degenerate");
  }
  if (ra.degenerate) {
    rep.notes.emplace_back("m1_rev: guard: degenerate");
    rep.notes.emplace_back("m2_rev: guard: degenerate");
  } else if (da.minus_degenerate()) {
    rep.notes.emplace_back("m2_rev: guard: degenerate");
  }

  rep.M_thm22 = std::max(rep.m1_fwd, rep.m1_rev);
  rep.M_tilde_thm41 = std::max(rep.m1_fwd + rep.m2_fwd + rep.m3_fwd,
                               rep.m1_rev + rep.m2_rev + rep.m3_rev);

  rep.lhs_heisenberg = rep.commutator_term;
  rep.lhs_schrodinger = rep.commutator_term + rep.anticommutator_term;
  rep.lhs_thm21 = rep.commutator_term + rep.skew_product_term;
  rep.lhs_thm22 = rep.lhs_schrodinger + rep.M_thm22;
  rep.lhs_thm41 = rep.lhs_schrodinger + rep.M_tilde_thm41;
  rep.rhs = ra.norm_sq * rb.norm_sq;

  rep.margins.heisenberg = rep.rhs - rep.lhs_heisenberg;
  rep.margins.schrodinger = rep.rhs - rep.lhs_schrodinger;
  rep.margins.thm21 = rep.rhs - rep.lhs_thm21;
  rep.margins.thm22 = rep.rhs - rep.lhs_thm22;
  rep.margins.thm41 = rep.rhs - rep.lhs_thm41;

  rep.skew_info_A = skew_information(rho, a);
  rep.skew_info_B = skew_information(rho, b);

  const std::pair<double, const char*> checked[] = {
      {rep.commutator_term, "commutator_term"},
      {rep.anticommutator_term, "anticommutator_term"},
      {rep.skew_product_term, "skew_product_term"},
      {rep.m1_fwd, "m1_fwd"}, {rep.m1_rev, "m1_rev"},
      {rep.m2_fwd, "m2_fwd"}, {rep.m2_rev, "m2_rev"},
      {rep.m3_fwd, "m3_fwd"}, {rep.m3_rev, "m3_rev"},
      {rep.rhs, "rhs"},
      {rep.skew_info_A, "skew_info_A"}, {rep.skew_info_B, "skew_info_B"}};
  for (const auto& [value, name] : checked) require_finite(value, name);
  return rep;
}

const BoundCheck& VerificationResult::get(Bound bound) const {
  return checks[static_cast<std::size_t>(bound)];
}

VerificationResult verify(const UncertaintyReport& report, double tol) {
  if (!(tol > 0.0)) throw ParameterError("verify: tol must be positive");
  VerificationResult out;
  out.pass = true;
  for (Bound bound : kAllBounds) {
    BoundCheck& c = out.checks[static_cast<std::size_t>(bound)];
    c.bound = bound;
    c.margin = report.margins.get(bound);
    c.pass = c.margin >= -tol;
    c.equality = std::abs(c.margin) <= tol;
    out.pass = out.pass && c.pass;
  }
  return out;
}

}  // namespace urel
