#include "urel/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace urel {

double RhoDecomposition::norm() const {
  return std::hypot(norm_plus, norm_minus);
}

RhoDecomposition decompose(const HermitianOperator& a, const DensityMatrix& rho) {
  require_same_dim(a.dim(), rho.dim(), "decompose");
  const ComplexMatrix& s = rho.sqrt();
  const ComplexMatrix as = a.matrix() * s;
  const ComplexMatrix sa = s * a.matrix();

  RhoDecomposition dec;
  dec.plus = 0.5 * (as + sa);
  dec.minus = 0.5 * (as - sa);

  const double total = hs_norm(as);
  const double cutoff = kDegenerateNorm * total;
  auto unit = [&](const ComplexMatrix& part, double& norm, ComplexMatrix& hat) {
    norm = hs_norm(part);
    if (norm <= cutoff || norm == 0.0) {
      norm = 0.0;
      hat = ComplexMatrix::Zero(part.rows(), part.cols());
    } else {
      hat = part / norm;
    }
  };
  unit(dec.plus, dec.norm_plus, dec.hat_plus);
  unit(dec.minus, dec.norm_minus, dec.hat_minus);
  return dec;
}

double GramTable::max_deviation() const {
  return std::max({a_plus_plus.deviation(), a_minus_minus.deviation(),
                   b_plus_plus.deviation(), b_minus_minus.deviation(),
                   b_plus_a_plus.deviation(), b_minus_a_minus.deviation(),
                   b_plus_a_minus.deviation(), b_minus_a_plus.deviation()});
}

GramTable gram_table(const HermitianOperator& a, const HermitianOperator& b,
                     const DensityMatrix& rho) {
  require_same_dim(a.dim(), b.dim(), "gram_table");
  const RhoDecomposition da = decompose(a, rho);
  const RhoDecomposition db = decompose(b, rho);

  const ComplexMatrix& r = rho.matrix();
  const ComplexMatrix& s = rho.sqrt();
  const ComplexMatrix& am = a.matrix();
  const ComplexMatrix& bm = b.matrix();

  const Complex a2 = (am * am * r).trace();
  const Complex b2 = (bm * bm * r).trace();
  const Complex a_skew = (am * s * am * s).trace();
  const Complex b_skew = (bm * s * bm * s).trace();
  const Complex ab_anti = ((am * bm + bm * am) * r).trace();
  const Complex ba_skew = (bm * s * am * s).trace();
  const Complex ba_comm = ((bm * am - am * bm) * r).trace();

  GramTable g;
  g.a_plus_plus = {hs_inner(da.plus, da.plus), 0.5 * (a2 + a_skew)};
  g.a_minus_minus = {hs_inner(da.minus, da.minus), 0.5 * (a2 - a_skew)};
  g.b_plus_plus = {hs_inner(db.plus, db.plus), 0.5 * (b2 + b_skew)};
  g.b_minus_minus = {hs_inner(db.minus, db.minus), 0.5 * (b2 - b_skew)};
  g.b_plus_a_plus = {hs_inner(db.plus, da.plus), 0.25 * (ab_anti + 2.0 * ba_skew)};
  g.b_minus_a_minus = {hs_inner(db.minus, da.minus),
                       0.25 * (ab_anti - 2.0 * ba_skew)};
  const double cross_abs2 = std::norm(ba_comm) / 16.0;
  g.b_plus_a_minus = {hs_inner(db.plus, da.minus), cross_abs2};
  g.b_minus_a_plus = {hs_inner(db.minus, da.plus), cross_abs2};
  return g;
}

ComplexMatrix perp_vector(const RhoDecomposition& dec) {
  if (dec.minus_degenerate()) {
    return ComplexMatrix::Zero(dec.plus.rows(), dec.plus.cols());
  }
  return dec.norm_minus * dec.hat_plus - dec.norm_plus * dec.hat_minus;
}

namespace {

// Orthonormal basis of span{hat(B+), hat(B-)}.
std::vector<ComplexMatrix> span_basis(const RhoDecomposition& b_dec) {
  std::vector<ComplexMatrix> basis;
  if (!b_dec.plus_degenerate()) basis.push_back(b_dec.hat_plus);
  if (!b_dec.minus_degenerate()) {
    ComplexMatrix e = b_dec.hat_minus;
    if (!basis.empty()) {
      const Complex overlap = hs_inner(basis.front(), e);
      if (std::abs(overlap) > kHatOverlapTol) {
        e -= overlap * basis.front();
        const double n = hs_norm(e);
        if (n <= kHatOverlapTol) return basis;
        e /= n;
      }
    }
    basis.push_back(std::move(e));
  }
  return basis;
}

}  // namespace

ComplexMatrix project_onto_span(const ComplexMatrix& x,
                                const RhoDecomposition& b_dec) {
  if (x.rows() != b_dec.plus.rows() || x.cols() != b_dec.plus.cols()) {
    throw ShapeError("project_onto_span: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
  for (const ComplexMatrix& e : span_basis(b_dec)) {
    out += hs_inner(e, x) * e;
  }
  return out;
}

AbcQuantities abc_quantities(const RhoDecomposition& a_dec,
                             const RhoDecomposition& b_dec) {
  const ComplexMatrix pa = project_onto_span(a_dec.combined(), b_dec);
  const ComplexMatrix pp = project_onto_span(perp_vector(a_dec), b_dec);

  AbcQuantities q;
  q.a = hs_inner(pa, pa).real();
  q.b = hs_inner(pp, pp).real();
  q.c = std::abs(hs_inner(pa, pp));
  if (q.c > kAbcCThreshold * std::max({1.0, q.a, q.b})) {
    q.d = (q.a - q.b) / (2.0 * q.c);
  }
  return q;
}

}  // namespace urel
