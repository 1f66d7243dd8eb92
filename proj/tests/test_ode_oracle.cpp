#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "paneitz/ode_oracle.hpp"
#include "reference_values.hpp"

using namespace paneitz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("solution basis") {
  const auto hyper = solution_basis(ModeIndex(1), OracleDomain::annulus);
  REQUIRE(hyper.size() == 4);
  CHECK(hyper[0].kind() == OracleBasisFunction::Kind::cosh_kt);
  CHECK(hyper[0].rate() == 1.0);
  CHECK(hyper[3].rate() == 3.0);

  const auto affine = solution_basis(ModeIndex(0), OracleDomain::annulus);
  REQUIRE(affine.size() == 4);
  CHECK(affine[0].kind() == OracleBasisFunction::Kind::one);
  CHECK(affine[1].kind() == OracleBasisFunction::Kind::linear_t);
  CHECK(affine[2].rate() == 2.0);

  const auto ball = solution_basis(ModeIndex(2), OracleDomain::ball);
  REQUIRE(ball.size() == 2);
  CHECK(ball[0].kind() == OracleBasisFunction::Kind::exp_neg_kt);
  CHECK(ball[0].rate() == 2.0);
  CHECK(ball[1].rate() == 4.0);

  CHECK_THROWS_AS(solution_basis(ModeIndex(0), OracleDomain::ball), std::domain_error);
  CHECK_THROWS_AS(solution_basis(ModeIndex(1), OracleDomain::zero_mode), std::domain_error);
  CHECK_NOTHROW(solution_basis(ModeIndex(0), OracleDomain::zero_mode));
}

TEST_CASE("basis functions annihilate the projected operator") {
  // checked analytically: d^4 - [(l+2)^2 + l^2] d^2 + (l+2)^2 l^2 on each member
  for (long long l : {1LL, 2LL, 5LL}) {
    const double k2 = std::pow(double(l + 2), 2) + double(l * l);
    const double k0 = std::pow(double(l + 2), 2) * double(l * l);
    for (const auto& domain : {OracleDomain::annulus, OracleDomain::ball}) {
      for (const auto& fn : solution_basis(ModeIndex(l), domain)) {
        for (double t : {0.0, 0.37, 1.4}) {
          // fourth derivative of every basis member is rate^2 times the second
          const double r2 = fn.rate() * fn.rate();
          const double residual =
              r2 * r2 * fn.derivative(t, 0) - k2 * r2 * fn.derivative(t, 0) +
              k0 * fn.derivative(t, 0);
          const double scale = (r2 * r2 + k2 * r2 + k0) * std::abs(fn.derivative(t, 0));
          if (scale > 0.0) CHECK(std::abs(residual) <= 1e-12 * scale);
        }
      }
    }
  }
}

TEST_CASE("ball determinant root") {
  const BallModel ball;
  CHECK_THAT(char_determinant(ModeIndex(1), ball, 12.0), WithinAbs(0.0, 1e-10));
  const auto dv = char_determinant_with_scale(ModeIndex(1), ball, 12.0);
  CHECK(std::abs(dv.value) <= 1e-12 * dv.scale);

  for (long long l = 1; l <= 10; ++l) {
    const double expected = 2.0 * double(l) * double(l + 1) * double(l + 2);
    const auto roots = oracle_eigenvalues(ModeIndex(l), ball, 2.0 * expected);
    REQUIRE(roots.size() == 1);
    CHECK_THAT(roots[0], WithinRel(expected, 1e-10));
  }
  // no root below the actual eigenvalue: window that stops short comes back empty
  CHECK(oracle_eigenvalues(ModeIndex(3), ball, 100.0).empty());
}

TEST_CASE("annulus determinant: zero mode and sign structure") {
  const AnnulusModel model(1.0, 0.5);
  // constants solve the l = 0 problem at lambda = 0
  CHECK_THAT(char_determinant(ModeIndex(0), model, 0.0), WithinAbs(0.0, 1e-12));

  const auto [lm, lp] = annulus_eigenvalues(ModeIndex(1), model);
  const double mid = std::sqrt(lm * lp);
  const double below = lm * 0.9;
  const double d_mid = char_determinant(ModeIndex(1), model, mid);
  const double d_below = char_determinant(ModeIndex(1), model, below);
  CHECK(d_mid != 0.0);
  CHECK(d_mid * d_below < 0.0);  // opposite sign across lambda_1^-
}

TEST_CASE("oracle eigenvalues match closed forms") {
  const AnnulusModel model(1.0, 0.5);
  const auto roots1 = oracle_eigenvalues(ModeIndex(1), model, 2.0 * refs::lambda_plus_l1_tau1_a05);
  REQUIRE(roots1.size() == 2);
  CHECK_THAT(roots1[0], WithinRel(refs::lambda_minus_l1_tau1_a05, 1e-8));
  CHECK_THAT(roots1[1], WithinRel(refs::lambda_plus_l1_tau1_a05, 1e-8));

  const auto roots0 = oracle_eigenvalues(ModeIndex(0), model, 2.0 * refs::lambda0_plus_tau1_a05);
  REQUIRE(roots0.size() == 1);
  CHECK_THAT(roots0[0], WithinRel(refs::lambda0_plus_tau1_a05, 1e-8));

  CHECK_THROWS_AS(oracle_eigenvalues(ModeIndex(1), model, -1.0), std::domain_error);
  CHECK_THROWS_AS(oracle_eigenvalues(ModeIndex(1), model, 100.0, 4), std::domain_error);
}

TEST_CASE("oracle recovers numerically tangent pairs") {
  // on the symmetric annulus the two roots coalesce as l tau grows; a sign
  // scan alone cannot separate them
  const AnnulusModel model(3.0, 0.5);
  for (long long l : {8LL, 9LL, 10LL}) {
    const auto [lm, lp] = annulus_eigenvalues(ModeIndex(l), model);
    CHECK((lp - lm) / lp < 1e-8);
    const auto roots = oracle_eigenvalues(ModeIndex(l), model, 2.0 * lp, 512, 1e-3 * lm);
    REQUIRE_FALSE(roots.empty());
    for (double r : roots) {
      CHECK_THAT(r, WithinRel(lm, 1e-8));
      CHECK_THAT(r, WithinRel(lp, 1e-8));
    }
  }
}

TEST_CASE("determinant is quadratic in lambda") {
  // a quadratic fit through three samples reproduces a fourth
  const AnnulusModel model(0.7, 0.3);
  for (long long l : {0LL, 1LL, 4LL}) {
    const double s = l == 0 ? refs::lambda0_plus_tau1_a05 : 50.0 * double(l);
    const double x1 = 0.3 * s, x2 = 0.9 * s, x3 = 2.1 * s, x4 = 1.4 * s;
    auto det = [&](double lam) { return char_determinant(ModeIndex(l), model, lam); };
    const double d1 = det(x1), d2 = det(x2), d3 = det(x3);
    const double s12 = (d2 - d1) / (x2 - x1);
    const double s23 = (d3 - d2) / (x3 - x2);
    const double qa = (s23 - s12) / (x3 - x1);
    const double qb = s12 - qa * (x1 + x2);
    const double qc = d1 - x1 * (qb + qa * x1);
    const double predicted = qa * x4 * x4 + qb * x4 + qc;
    CHECK_THAT(det(x4), WithinRel(predicted, 1e-9));
  }
}

TEST_CASE("row scaling invariance of the root set") {
  // scaling rows of the matrix only rescales the determinant; compare the
  // root the solver finds for the scaled and unscaled problems through the
  // public interface at two different tau (different internal row scales)
  const AnnulusModel a(2.0, 0.35);
  const auto [lm, lp] = annulus_eigenvalues(ModeIndex(2), a);
  const auto roots = oracle_eigenvalues(ModeIndex(2), a, 2.0 * lp, 512, 1e-3 * lm);
  REQUIRE(roots.size() == 2);
  CHECK_THAT(roots[0], WithinRel(lm, 1e-8));
  CHECK_THAT(roots[1], WithinRel(lp, 1e-8));
}

TEST_CASE("residual_check: ball eigenpair") {
  const BallModel ball;
  const FirstEigenvalue fe = first_nonzero_eigenvalue(ball, 5);
  const ResidualReport rep = residual_check(fe.pair, ball, 32);
  CHECK(rep.ode_residual <= 1e-6);
  REQUIRE(rep.boundary.size() == 1);
  CHECK(rep.boundary[0].b1 <= 1e-9);
  CHECK(rep.boundary[0].eigen_relation <= 1e-9);

  // a perturbed eigenvalue must be detected
  EigenPair bad = fe.pair;
  bad.value *= 1.0 + 1e-3;
  const ResidualReport rep_bad = residual_check(bad, ball, 32);
  CHECK(rep_bad.boundary[0].eigen_relation >= 1e-4);
}

TEST_CASE("residual_check: constant profile reports exact zeros") {
  const AnnulusModel model(1.0, 0.5);
  const EigenPair constant{0.0, ModeIndex(0), Branch::zero, 1, RadialProfile::constant()};
  const ResidualReport rep = residual_check(constant, model, 16);
  CHECK(rep.ode_residual == 0.0);
  REQUIRE(rep.boundary.size() == 2);
  CHECK(rep.boundary[0].b1 == 0.0);
  CHECK(rep.boundary[0].eigen_relation == 0.0);
  CHECK(rep.boundary[1].eigen_relation == 0.0);
}

TEST_CASE("residual_check: annulus eigenpairs") {
  const AnnulusModel model(1.0, 0.5);
  for (Branch branch : {Branch::minus, Branch::plus}) {
    const EigenPair pair = annulus_eigenpair(ModeIndex(1), branch, model);
    const ResidualReport rep = residual_check(pair, model, 32);
    CHECK(rep.ode_residual <= 1e-6);
    REQUIRE(rep.boundary.size() == 2);
    for (const auto& b : rep.boundary) {
      CHECK(b.b1 <= 1e-9);
      CHECK(b.eigen_relation <= 1e-8);
    }
  }
  const EigenPair zm = annulus_zero_mode(model);
  const ResidualReport rep = residual_check(zm, model, 32);
  CHECK(rep.ode_residual <= 1e-6);
  CHECK(rep.boundary[0].eigen_relation <= 1e-9);
  CHECK(rep.boundary[1].eigen_relation <= 1e-9);

  CHECK_THROWS_AS(residual_check(zm, model, 4), std::domain_error);
  const EigenPair no_profile{5.0, ModeIndex(0), Branch::cylinder, 1, std::nullopt};
  CHECK_THROWS_AS(residual_check(no_profile, model, 16), std::domain_error);
}
