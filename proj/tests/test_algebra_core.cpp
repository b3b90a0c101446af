// Unit tests for the core left-invariant geometry: connection, curvature,
// tensor calculus, and the axiom suite, pinned against classical closed-form
// oracles (hyperbolic plane, round 3-sphere, flat space).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "liekahler/algebra_core.hpp"

using namespace liekahler;

namespace {

constexpr double kTol = 1e-12;

// The ax+b algebra [e0, e1] = e1 with the flat metric: the hyperbolic plane
// of curvature -1.
LieAlgebraData axb() {
  LieAlgebraData alg;
  alg.dim = 2;
  alg.brackets = Tensor3(2);
  alg.brackets(0, 1, 1) = 1.0;
  alg.brackets(1, 0, 1) = -1.0;
  return alg;
}

// su(2) with the bi-invariant metric: the round 3-sphere of sectional
// curvature 1/4 (structure constants [e_i, e_j] = e_k cyclically).
LieAlgebraData su2() {
  LieAlgebraData alg;
  alg.dim = 3;
  alg.brackets = Tensor3(3);
  const int idx[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& t : idx) {
    alg.brackets(t[0], t[1], t[2]) = 1.0;
    alg.brackets(t[1], t[0], t[2]) = -1.0;
  }
  return alg;
}

}  // namespace

TEST_CASE("hyperbolic plane: connection, curvature and scalar oracles") {
  const LieAlgebraData alg = axb();
  const MetricData g{Mat::identity(2)};
  const ConnectionCoefficients conn = levi_civita(alg, g);
  // nabla_{e1} e1 = e0, nabla_{e1} e0 = -e1, nabla_{e0} . = 0.
  CHECK(conn.gamma(1, 1, 0) == doctest::Approx(1.0).epsilon(kTol));
  CHECK(conn.gamma(1, 0, 1) == doctest::Approx(-1.0).epsilon(kTol));
  CHECK(std::fabs(conn.gamma(0, 0, 0)) <= kTol);
  CHECK(std::fabs(conn.gamma(0, 1, 1)) <= kTol);

  const CurvaturePackage curv = curvature(alg, g, conn);
  // Sectional curvature -1: riem(0,1,1,0) = g(R(e0,e1)e1, e0) = -1.
  CHECK(curv.riem(0, 1, 1, 0) == doctest::Approx(-1.0).epsilon(kTol));
  CHECK(curv.rhat(0, 1, 0, 1) == doctest::Approx(-1.0).epsilon(kTol));
  CHECK(max_abs(curv.ricci + Mat::identity(2)) <= kTol);
  CHECK(curv.scal == doctest::Approx(-2.0).epsilon(kTol));
  CHECK(axiom_suite(alg, g, conn, curv).pass());
}

TEST_CASE("hyperbolic plane of curvature -c^2 has s = -2c^2") {
  for (double c : {1.0, 2.0, 0.5}) {
    LieAlgebraData alg = axb();
    alg.brackets(0, 1, 1) = c;
    alg.brackets(1, 0, 1) = -c;
    const MetricData g{Mat::identity(2)};
    const CurvaturePackage curv = curvature(alg, g, levi_civita(alg, g));
    CHECK(curv.scal == doctest::Approx(-2.0 * c * c).epsilon(1e-12));
  }
}

TEST_CASE("round 3-sphere: positive curvature operator convention") {
  const LieAlgebraData alg = su2();
  const MetricData g{Mat::identity(3)};
  const ConnectionCoefficients conn = levi_civita(alg, g);
  CHECK(conn.gamma(0, 1, 2) == doctest::Approx(0.5).epsilon(kTol));
  const CurvaturePackage curv = curvature(alg, g, conn);
  // Sectional curvature +1/4; rhat is positive on this sign convention.
  CHECK(curv.riem(0, 1, 1, 0) == doctest::Approx(0.25).epsilon(kTol));
  CHECK(curv.rhat(0, 1, 0, 1) == doctest::Approx(0.25).epsilon(kTol));
  CHECK(max_abs(curv.ricci - 0.5 * Mat::identity(3)) <= kTol);
  CHECK(curv.scal == doctest::Approx(1.5).epsilon(kTol));
  CHECK(axiom_suite(alg, g, conn, curv).pass());
}

TEST_CASE("flat abelian algebra") {
  LieAlgebraData alg;
  alg.dim = 4;
  alg.brackets = Tensor3(4);
  const MetricData g{Mat::identity(4)};
  const CurvaturePackage curv = curvature(alg, g, levi_civita(alg, g));
  CHECK(curv.riem.max_abs() <= kTol);
  CHECK(curv.scal == 0.0);
}

TEST_CASE("codifferential and rough laplacian anchors on the hyperbolic plane") {
  const LieAlgebraData alg = axb();
  const MetricData g{Mat::identity(2)};
  const ConnectionCoefficients conn = levi_civita(alg, g);
  const Vec e0_dual = {1.0, 0.0};
  // delta(e^0) = +1 and nabla*nabla e^0 = e^0 on this model.
  CHECK(codifferential(g, conn, e0_dual) == doctest::Approx(1.0).epsilon(kTol));
  const Vec lap = rough_laplacian(g, conn, e0_dual);
  CHECK(lap[0] == doctest::Approx(1.0).epsilon(kTol));
  CHECK(std::fabs(lap[1]) <= kTol);
}

TEST_CASE("exterior derivative: d^2 = 0 on invariant 1-forms") {
  const LieAlgebraData alg = su2();
  const Vec a = {0.3, -1.2, 0.7};
  const Mat da = d_form(alg, a);
  const Tensor3 dda = d_form(alg, da);
  // For 1-forms d(da) vanishes by the Jacobi identity.
  CHECK(dda.max_abs() <= kTol);
}

TEST_CASE("codifferential is adjoint to d on invariant forms") {
  // <da, psi> = <a, delta psi> with the 1/2-weighted 2-form pairing;
  // checked on su(2) with the flat metric and arbitrary fixed data.
  const LieAlgebraData alg = su2();
  const MetricData g{Mat::identity(3)};
  const ConnectionCoefficients conn = levi_civita(alg, g);
  const Vec a = {0.25, -0.5, 1.0};
  Mat psi(3, 3);
  psi(0, 1) = 0.7;
  psi(1, 0) = -0.7;
  psi(1, 2) = -0.4;
  psi(2, 1) = 0.4;
  psi(0, 2) = 0.1;
  psi(2, 0) = -0.1;
  const Mat da = d_form(alg, a);
  double lhs = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) lhs += 0.5 * da(i, j) * psi(i, j);
  const Vec dpsi = codifferential(g, conn, psi);
  CHECK(lhs == doctest::Approx(dot(a, dpsi)).epsilon(1e-12));
}

TEST_CASE("validation flags a Jacobi violation") {
  LieAlgebraData alg;
  alg.dim = 3;
  alg.brackets = Tensor3(3);
  // [e0,e1] = e2, [e2,e0] = e0 violates Jacobi: the cyclic sum on
  // (e0,e1,e2) equals [[e2,e0],e1] = [e0,e1] = e2 != 0.
  alg.brackets(0, 1, 2) = 1.0;
  alg.brackets(1, 0, 2) = -1.0;
  alg.brackets(2, 0, 0) = 1.0;
  alg.brackets(0, 2, 0) = -1.0;
  const ValidationReport rep = validate_algebra(alg);
  const CheckResult* jac = rep.find("jacobi_identity");
  REQUIRE(jac != nullptr);
  CHECK_FALSE(jac->pass);
}

TEST_CASE("validation rejects out-of-range dimensions") {
  LieAlgebraData alg;
  alg.dim = 0;
  CHECK_THROWS_AS((void)validate_algebra(alg), InputError);
  alg.dim = tols::kMaxDim + 1;
  alg.brackets = Tensor3(alg.dim);
  CHECK_THROWS_AS((void)validate_algebra(alg), InputError);
}

TEST_CASE("symmetric eigensplit clusters repeated eigenvalues") {
  Mat s = Mat::identity(4);
  s(0, 0) = s(1, 1) = -2.0;
  s(2, 2) = s(3, 3) = -1.0;
  const MetricData g{Mat::identity(4)};
  const auto clusters = symmetric_eigensplit(s, g);
  REQUIRE(clusters.size() == 2);
  CHECK(clusters[0].value == doctest::Approx(-2.0));
  CHECK(clusters[0].vectors.cols() == 2);
  CHECK(clusters[1].value == doctest::Approx(-1.0));
  CHECK(clusters[1].vectors.cols() == 2);
}

TEST_CASE("metric scaling: s scales by 1/c") {
  const LieAlgebraData alg = su2();
  for (double c : {0.25, 9.0}) {
    const MetricData g{Mat::identity(3)};
    const MetricData gc{c * Mat::identity(3)};
    const double s = curvature(alg, g, levi_civita(alg, g)).scal;
    const double sc = curvature(alg, gc, levi_civita(alg, gc)).scal;
    CHECK(sc == doctest::Approx(s / c).epsilon(1e-12));
  }
}
