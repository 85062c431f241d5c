#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "support/oracles.hpp"
#include "urel/bounds.hpp"
#include "urel/errors.hpp"
#include "urel/oscillator.hpp"

using namespace urel;
using Catch::Matchers::WithinAbs;

namespace {

struct Qubit {
  HermitianOperator sx{oracle::pauli_x()};
  HermitianOperator sy{oracle::pauli_y()};
  DensityMatrix rho;
  explicit Qubit(double p) : rho(oracle::diag2(p, 1 - p)) {}
};

std::vector<double> lhs_and_rhs(const UncertaintyReport& r) {
  return {r.commutator_term, r.anticommutator_term, r.skew_product_term, r.m1_fwd, r.m1_rev,
          r.m2_fwd,          r.m2_rev,              r.m3_fwd,            r.m3_rev, r.M_thm22,
          r.M_tilde_thm41,   r.lhs_heisenberg,      r.lhs_schrodinger,   r.lhs_thm21,
          r.lhs_thm22,       r.lhs_thm41,           r.rhs};
}

}  // namespace

TEST_CASE("skew_information", "[bounds]") {
  const DensityMatrix diag(oracle::diag2(0.2, 0.8));
  CHECK(skew_information(diag, HermitianOperator(oracle::pauli_z())) == 0.0);

  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = oracle::random_instance(4, 1 + seed % 4, seed);
    const ComplexMatrix& a = inst.a.matrix();
    const ComplexMatrix& s = inst.rho.sqrt();
    const double direct =
        oracle::tr(a * a * inst.rho.matrix()).real() - oracle::tr(a * s * a * s).real();
    const double info = skew_information(inst.rho, inst.a);
    CHECK(oracle::rel_err(info, direct) <= 1e-11);
    CHECK(info >= -1e-12);
  }

  const auto pure = oracle::random_instance(3, 1, 9);
  const HermitianOperator a0 = center(pure.a, pure.rho);
  CHECK(oracle::rel_err(skew_information(pure.rho, a0), variance(pure.a, pure.rho)) <= 1e-10);

  const oscillator::FockSpace space(60);
  const DensityMatrix thermal = oscillator::thermal_state(1.0, space);
  CHECK_THAT(skew_information(thermal, oscillator::pq_ops(space).q),
             WithinAbs(0.5 * std::tanh(0.25), 1e-8));
}

TEST_CASE("qubit closed forms at p = 0.75", "[bounds]") {
  const double p = 0.75;
  const Qubit q(p);
  CHECK_THAT(thm21_lhs(q.sx, q.sy, q.rho), WithinAbs(1.0, 1e-12));
  CHECK_THAT(m1_term(q.sx, q.sy, q.rho), WithinAbs(4 * p * (1 - p), 1e-12));
  CHECK_THAT(m1_term(q.sx, q.sy, q.rho), WithinAbs(0.75, 1e-12));
  const UncertaintyReport r = evaluate_all(q.sx, q.sy, q.rho);
  CHECK_THAT(r.commutator_term, WithinAbs(0.25, 1e-12));
  CHECK_THAT(r.lhs_thm22, WithinAbs(1.0, 1e-12));
}

TEST_CASE("qubit family against a brute-force 2x2 computation", "[bounds]") {
  for (int k = 1; k <= 19; ++k) {
    const double p = 0.05 * k;
    const Qubit q(p);
    // Direct matrices: sqrt(rho) is diagonal.
    const ComplexMatrix s = oracle::diag2(std::sqrt(p), std::sqrt(1 - p));
    const ComplexMatrix x = oracle::pauli_x();
    const ComplexMatrix y = oracle::pauli_y();
    const ComplexMatrix r = oracle::diag2(p, 1 - p);
    const double comm = std::abs(oracle::tr((x * y - y * x) * r));
    const double skew_x = oracle::tr(x * s * x * s).real();
    const double skew_y = oracle::tr(y * s * y * s).real();
    const double norm_y = oracle::tr(y * y * r).real();
    CHECK_THAT(thm21_lhs(q.sx, q.sy, q.rho),
               WithinAbs(0.25 * comm * comm + skew_x * skew_y, 1e-12));
    const double denom = norm_y * norm_y - skew_y * skew_y;
    const double m1 = denom > 1e-10 * norm_y * norm_y
                          ? 0.25 * std::pow(comm * skew_y, 2) / denom
                          : 0.0;
    CHECK_THAT(m1_term(q.sx, q.sy, q.rho), WithinAbs(m1, 1e-12));
  }
}

TEST_CASE("m1_term guard", "[bounds]") {
  const DensityMatrix rho(oracle::diag2(0.3, 0.7));
  CHECK(m1_term(HermitianOperator(oracle::pauli_x()), HermitianOperator(oracle::pauli_z()), rho) ==
        0.0);
  // rho = I/2 commutes with everything.
  const Qubit half(0.5);
  CHECK(m1_term(half.sx, half.sy, half.rho) == 0.0);
}

TEST_CASE("m2_term against the Gram-table route", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = oracle::random_instance(4, 1 + seed % 4, seed);
    const RhoDecomposition db = decompose(inst.b, inst.rho);
    const GramTable g = gram_table(inst.a, inst.b, inst.rho);
    const double np = db.norm_plus;
    const double nm = db.norm_minus;
    const double route =
        np == 0.0 || nm == 0.0
            ? 0.0
            : std::norm((nm / np) * g.b_plus_a_plus.by_definition -
                        (np / nm) * g.b_minus_a_minus.by_definition);
    CHECK(oracle::rel_err(m2_term(inst.a, inst.b, inst.rho), route) <= 1e-10);
    CHECK(m2_term(inst.a, inst.b, inst.rho) >= 0.0);
  }
  const DensityMatrix rho(oracle::diag2(0.3, 0.7));
  CHECK(m2_term(HermitianOperator(oracle::pauli_x()), HermitianOperator(oracle::pauli_z()), rho) ==
        0.0);
}

TEST_CASE("m3_gain limits", "[bounds]") {
  CHECK(m3_gain({2.0, 1.0, 0.0, std::nullopt}) == 0.0);
  CHECK_THAT(m3_gain({1.0, 3.0, 0.0, std::nullopt}), WithinAbs(2.0, 1e-15));
  // Stable branch agrees with the textbook form when there is no cancellation.
  const double a = 2.0, b = 1.0, c = 0.3;
  const double naive = 0.5 * (std::sqrt((a - b) * (a - b) + 4 * c * c) - (a - b));
  CHECK_THAT(m3_gain({a, b, c, (a - b) / (2 * c)}), WithinAbs(naive, 1e-15));
}

TEST_CASE("m3_term against a grid search", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = oracle::random_instance(3, 1 + seed % 3, seed);
    const oracle::Abc o = oracle::abc_gram(inst.a.matrix(), inst.b.matrix(), inst.rho.sqrt());
    const oracle::GridMax best = oracle::grid_search(o.a, o.b, o.c);
    const double want = rho_norm_sq(inst.b, inst.rho) * (best.value - o.a);
    const double got = m3_term(inst.a, inst.b, inst.rho);
    CHECK(std::abs(got - want) <= 1e-6 * std::max(1.0, std::abs(want)));
    CHECK(got >= -1e-12);
  }
}

TEST_CASE("optimal_coefficients", "[bounds]") {
  SECTION("symmetric case") {
    const auto k = optimal_coefficients({1.0, 1.0, 0.5, 0.0});
    CHECK_THAT(k.alpha, WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(k.gamma, WithinAbs(1 / std::sqrt(2.0), 1e-15));
  }
  SECTION("c below threshold") {
    const auto k = optimal_coefficients({2.0, 1.0, 0.0, std::nullopt});
    CHECK(k.alpha == 1.0);
    CHECK(k.gamma == 0.0);
    const auto k2 = optimal_coefficients({1.0, 2.0, 0.0, std::nullopt});
    CHECK(k2.alpha == 0.0);
    CHECK(k2.gamma == 1.0);
  }
  SECTION("random instances") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 250; ++seed) {
      const auto inst = oracle::random_instance(3 + seed % 3, 1 + seed % 3, seed);
      const AbcQuantities abc =
          abc_quantities(decompose(inst.a, inst.rho), decompose(inst.b, inst.rho));
      if (!abc.d) continue;
      ++checked;
      const double d = *abc.d;
      const auto k = optimal_coefficients(abc);
      CHECK(std::abs(k.alpha * k.alpha + k.gamma * k.gamma - 1.0) <= 1e-12);
      CHECK(std::abs(2 * d * k.alpha * k.gamma - (1 - 2 * k.gamma * k.gamma)) <=
            1e-10 * std::max(1.0, std::abs(d)));
      const double g2 = 1.0 / (2 * (d * d + 1) + 2 * d * std::sqrt(d * d + 1));
      CHECK(oracle::rel_err(k.gamma * k.gamma, g2) <= 1e-10);
      CHECK(oracle::rel_err(projected_length_sq(abc, k), abc.a + m3_gain(abc)) <= 1e-10);
      const oracle::GridMax best = oracle::grid_search(abc.a, abc.b, abc.c);
      CHECK(projected_length_sq(abc, k) >= best.value - 1e-12 * std::max(1.0, best.value));
    }
    CHECK(checked >= 200);
  }
}

TEST_CASE("alpha*gamma = 1 - 2 gamma^2 does not hold without the factor 2d",
          "[bounds]") {
  // d = 0 gives alpha = gamma = 1/sqrt(2): alpha*gamma = 1/2, 1 - 2 gamma^2 = 0.
  const auto k = optimal_coefficients({1.0, 1.0, 0.5, 0.0});
  CHECK(std::abs(k.alpha * k.gamma - (1 - 2 * k.gamma * k.gamma)) > 0.4);
}

TEST_CASE("projected length identity", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = oracle::random_instance(2 + seed % 5, 1 + seed % 2, seed);
    const AbcQuantities abc =
        abc_quantities(decompose(inst.a, inst.rho), decompose(inst.b, inst.rho));
    const ComplexMatrix& a = inst.a.matrix();
    const ComplexMatrix& b = inst.b.matrix();
    const ComplexMatrix& r = inst.rho.matrix();
    const double lhs = rho_norm_sq(inst.b, inst.rho) * abc.a;
    const double rhs = 0.25 * std::norm(oracle::tr((a * b - b * a) * r)) +
                       0.25 * std::norm(oracle::tr((a * b + b * a) * r)) +
                       m1_term(inst.a, inst.b, inst.rho) + m2_term(inst.a, inst.b, inst.rho);
    CHECK(oracle::rel_err(lhs, rhs) <= 1e-10);
  }
}

TEST_CASE("raw entry points", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = oracle::random_instance(4, 1 + seed % 4, seed);
    const double t22 = thm22_lhs(inst.a, inst.b, inst.rho);
    const double t41 = thm41_lhs(inst.a, inst.b, inst.rho);
    CHECK(t41 >= t22 - 1e-12);
    const UncertaintyReport raw = evaluate_all(inst.a, inst.b, inst.rho, false);
    CHECK(oracle::rel_err(raw.lhs_thm22, t22) <= 1e-12);
    CHECK(oracle::rel_err(raw.lhs_thm41, t41) <= 1e-12);
    CHECK(oracle::rel_err(raw.lhs_thm21, thm21_lhs(inst.a, inst.b, inst.rho)) <= 1e-12);
  }
}

TEST_CASE("pure states reduce to the classical relations", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = oracle::random_instance(2 + seed % 4, 1, seed);
    const UncertaintyReport r = evaluate_all(inst.a, inst.b, inst.rho);
    CHECK(std::abs(r.lhs_thm21 - r.lhs_heisenberg) <= 1e-10);
    CHECK(std::abs(r.lhs_thm22 - r.lhs_schrodinger) <= 1e-10);
    const VerificationResult v = verify(r, 1e-9);
    CHECK(v.get(Bound::thm21).equality == v.get(Bound::heisenberg).equality);
    CHECK(v.get(Bound::thm22).equality == v.get(Bound::schrodinger).equality);
  }
}

TEST_CASE("maximally mixed qubit", "[bounds]") {
  const Qubit q(0.5);
  const UncertaintyReport r = evaluate_all(q.sx, q.sy, q.rho);
  CHECK(r.commutator_term == 0.0);
  CHECK_THAT(r.skew_product_term, WithinAbs(1.0, 1e-14));
  CHECK_THAT(r.rhs, WithinAbs(1.0, 1e-14));
  CHECK_THAT(r.margins.thm21, WithinAbs(0.0, 1e-14));
  for (Bound b : kAllBounds) CHECK(r.margins.get(b) >= -1e-14);
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("report invariants on random instances", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Eigen::Index dim = 2 + seed % 5;
    const auto inst = oracle::random_instance(dim, 1 + seed % dim, seed);
    const UncertaintyReport r = evaluate_all(inst.a, inst.b, inst.rho);
    for (double v : lhs_and_rhs(r)) CHECK(v >= -1e-12);
    const double tol = 1e-10 * std::max(1.0, r.rhs);
    CHECK(r.lhs_heisenberg <= r.lhs_schrodinger + tol);
    CHECK(r.lhs_schrodinger <= r.lhs_thm22 + tol);
    CHECK(r.lhs_thm22 <= r.lhs_thm41 + tol);
    CHECK(r.lhs_thm41 <= r.rhs + 1e-9);
    CHECK(r.lhs_thm21 <= r.rhs + 1e-9);
    CHECK(oracle::rel_err(r.rhs, variance(inst.a, inst.rho) * variance(inst.b, inst.rho)) <=
          1e-12);
    CHECK(verify(r, 1e-9).pass);
  }
}

TEST_CASE("scale covariance", "[bounds]") {
  const double s = 1.7, t = -0.4;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = oracle::random_instance(3, 1 + seed % 3, seed);
    const UncertaintyReport r = evaluate_all(inst.a, inst.b, inst.rho);
    const UncertaintyReport rs = evaluate_all(inst.a.scaled(s), inst.b.scaled(t), inst.rho);
    const auto base = lhs_and_rhs(r);
    const auto scaled = lhs_and_rhs(rs);
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(oracle::rel_err(scaled[i], s * s * t * t * base[i]) <= 1e-10);
    }
  }
}

TEST_CASE("unitary covariance", "[bounds]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = oracle::random_instance(4, 1 + seed % 4, seed);
    Rng rng(seed + 99);
    const ComplexMatrix u = sample_unitary(4, rng);
    CHECK((u * u.adjoint() - ComplexMatrix::Identity(4, 4)).norm() <= 1e-13);
    const HermitianOperator ua(ComplexMatrix(u * inst.a.matrix() * u.adjoint()));
    const HermitianOperator ub(ComplexMatrix(u * inst.b.matrix() * u.adjoint()));
    const DensityMatrix ur(ComplexMatrix(u * inst.rho.matrix() * u.adjoint()));
    const auto base = lhs_and_rhs(evaluate_all(inst.a, inst.b, inst.rho));
    const auto rot = lhs_and_rhs(evaluate_all(ua, ub, ur));
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(oracle::rel_err(rot[i], base[i]) <= 1e-10);
    }
  }
}

TEST_CASE("thermal oscillator strictness", "[bounds]") {
  const oscillator::FockSpace space(60);
  const auto pq = oscillator::pq_ops(space);
  const DensityMatrix rho = oscillator::thermal_state(1.0, space);
  CHECK(rho_norm_sq(pq.q, rho) - skew_trace(pq.q, rho) > 1e-6);
  const UncertaintyReport r = evaluate_all(pq.p, pq.q, rho);
  const VerificationResult v = verify(r, 1e-9);
  CHECK(v.pass);
  CHECK(v.get(Bound::thm21).equality);
  CHECK(v.get(Bound::thm22).equality);
  CHECK(v.get(Bound::thm41).equality);
  CHECK_FALSE(v.get(Bound::heisenberg).equality);
}

TEST_CASE("verify", "[bounds]") {
  UncertaintyReport r;
  r.rhs = 1.0;
  r.lhs_heisenberg = r.lhs_schrodinger = r.lhs_thm21 = r.lhs_thm22 = 0.5;
  r.lhs_thm41 = 2.0;
  r.margins = {0.5, 0.5, 0.5, 0.5, -1.0};
  const VerificationResult v = verify(r, 1e-9);
  CHECK_FALSE(v.pass);
  CHECK_FALSE(v.get(Bound::thm41).pass);
  CHECK(v.get(Bound::thm21).pass);
  CHECK_THROWS_AS(verify(r, 0.0), ParameterError);
  CHECK(bound_name(Bound::thm41) == "thm41");
}

TEST_CASE("evaluate_all rejects mismatched and non-finite input", "[bounds]") {
  const Qubit q(0.3);
  CHECK_THROWS_AS(evaluate_all(q.sx, HermitianOperator::identity(3), q.rho), ShapeError);
  const HermitianOperator huge = q.sx.scaled(1e160);
  CHECK_THROWS_AS(evaluate_all(huge, huge, q.rho), NumericError);
}
