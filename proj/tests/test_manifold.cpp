#include "doctest.h"

#include <cmath>

#include "gmmtk/manifold.hpp"
#include "gmmtk/scenario.hpp"
#include "support.hpp"

using namespace gmm;

namespace {

EmbeddedManifold sphere(int ambient, const Tolerances& tol = {}) {
  return EmbeddedManifold(
      "sphere", ambient, 1,
      [](const Vec& x) { return Vec(Vec::Constant(1, x.squaredNorm() - 1.0)); },
      [](const Vec& x) { return Mat(2.0 * x.transpose()); }, tol);
}

Vec v3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_CASE("projection onto the three-sphere") {
  EmbeddedManifold S3 = sphere(4);
  Vec onpt(4);
  onpt << 1, 0, 0, 0;

  SUBCASE("point already on the manifold is unchanged") {
    auto m = project_to_manifold(onpt, S3);
    CHECK((m.coords - onpt).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(m.residual == doctest::Approx(0.0));
  }
  SUBCASE("radial point lands on the nearest sphere point") {
    Vec x(4);
    x << 2, 0, 0, 0;
    auto m = project_to_manifold(x, S3);
    CHECK((m.coords - onpt).norm() < 1e-12);
  }
  SUBCASE("generic point matches closed-form normalization") {
    Vec x(4);
    x << 1.1, 0.2, 0.0, 0.05;
    auto m = project_to_manifold(x, S3);
    Vec expected = x / x.norm();  // oracle: radial projection
    CHECK((m.coords - expected).norm() < 1e-12);
  }
  SUBCASE("projection is idempotent") {
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
      Vec x = rng.normal_vector(4);
      auto m = project_to_manifold(x, S3);
      auto m2 = project_to_manifold(m.coords, S3);
      CHECK((m.coords - m2.coords).norm() <= S3.tol().eps_mem);
    }
  }
  SUBCASE("rank-deficient Jacobian is rejected") {
    Vec x = Vec::Zero(4);
    CHECK_THROWS_AS(project_to_manifold(x, S3), Error);
  }
}

TEST_CASE("tangent projector") {
  EmbeddedManifold S2 = sphere(3);
  SUBCASE("north pole of S^2 projects to the xy-plane") {
    Mat P = tangent_projector(S2, v3(0, 0, 1));
    Mat expected = Mat::Zero(3, 3);
    expected(0, 0) = expected(1, 1) = 1.0;
    CHECK((P - expected).norm() < 1e-12);
  }
  SUBCASE("trace equals the manifold dimension") {
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
      Vec x = rng.sphere(3);
      Mat P = tangent_projector(S2, x);
      CHECK(P.trace() == doctest::Approx(2.0).epsilon(1e-10));
      CHECK((P - P.transpose()).norm() < 1e-12);
      CHECK((P * P - P).norm() < 1e-12);
    }
  }
  SUBCASE("kernel spans the constraint gradient") {
    EmbeddedManifold S3 = sphere(4);
    Rng rng(7);
    for (int i = 0; i < 10; ++i) {
      Vec x = rng.sphere(4);
      Mat P = tangent_projector(S3, x);
      Vec grad = S3.constraint_jacobian(x).row(0);
      CHECK((P * grad).norm() <= 1e-10);
    }
  }
}

TEST_CASE("finite-difference exterior derivative") {
  Tolerances tol;
  EmbeddedManifold R2 = EmbeddedManifold::flat(2, tol);
  Vec e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;

  SUBCASE("d of an exact form vanishes") {
    OneFormFn dx = [](const Vec&, const Vec& v) { return v[0]; };
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
      Vec x = rng.normal_vector(2);
      double d = exterior_derivative_fd(R2, dx, x, e1, e2);
      CHECK(std::abs(d) < 1e-9);
    }
  }
  SUBCASE("d(x dy) = dx ^ dy") {
    OneFormFn xdy = [](const Vec& x, const Vec& v) { return x[0] * v[1]; };
    Vec x(2);
    x << 0.3, -0.7;
    double d = exterior_derivative_fd(R2, xdy, x, e1, e2);
    CHECK(d == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("top-degree argument on the two-sphere returns zero") {
    auto sc = make_scenario("s1-rotation-s2");
    Rng rng(9);
    TwoFormFn area = sc.triple->omega.eval;
    for (int i = 0; i < 5; ++i) {
      Vec x = rng.sphere(3);
      Vec u = random_tangent(sc.manifold, x, rng);
      Vec v = random_tangent(sc.manifold, x, rng);
      Vec w = random_tangent(sc.manifold, x, rng);  // necessarily dependent
      double d = exterior_derivative_fd(sc.manifold, area, x, u, v, w);
      CHECK(std::abs(d) < 1e-7);
    }
  }
  SUBCASE("convergence order is at least 1.9 on a smooth form") {
    // alpha = x^2 dy, d alpha = 2x dx ^ dy; Richardson slope in h_fd.
    OneFormFn alpha = [](const Vec& x, const Vec& v) {
      return std::sin(x[0]) * x[0] * v[1];
    };
    Vec x(2);
    x << 0.8, 0.2;
    auto exact = [&](const Vec& p) {
      return std::sin(p[0]) + p[0] * std::cos(p[0]);
    };
    Tolerances t1 = tol, t2 = tol;
    t1.h_fd = 1e-3;
    t2.h_fd = 5e-4;
    EmbeddedManifold M1 = EmbeddedManifold::flat(2, t1);
    EmbeddedManifold M2 = EmbeddedManifold::flat(2, t2);
    double e_h = std::abs(exterior_derivative_fd(M1, alpha, x, e1, e2) - exact(x));
    double e_h2 = std::abs(exterior_derivative_fd(M2, alpha, x, e1, e2) - exact(x));
    double rate = std::log(e_h / e_h2) / std::log(2.0);
    CHECK(rate >= 1.9);
  }
}

TEST_CASE("compatible triple from a two-form") {
  SUBCASE("standard form on R^2 gives the quarter-turn") {
    EmbeddedManifold R2 = EmbeddedManifold::flat(2);
    TwoForm omega{[](const Vec&, const Vec& u, const Vec& v) {
      return u[0] * v[1] - u[1] * v[0];
    }};
    auto triple = compatible_triple_from_form(R2, omega);
    Vec e1(2);
    e1 << 1, 0;
    Vec J_e1 = triple.J(Vec::Zero(2), e1);
    Vec expected(2);
    expected << 0, 1;
    CHECK((J_e1 - expected).norm() < 1e-12);
  }
  SUBCASE("scaling the form leaves the polar part unchanged") {
    EmbeddedManifold R2 = EmbeddedManifold::flat(2);
    TwoForm omega3{[](const Vec&, const Vec& u, const Vec& v) {
      return 3.0 * (u[0] * v[1] - u[1] * v[0]);
    }};
    auto triple = compatible_triple_from_form(R2, omega3);
    Vec e1(2);
    e1 << 1, 0;
    Vec expected(2);
    expected << 0, 1;
    CHECK((triple.J(Vec::Zero(2), e1) - expected).norm() < 1e-12);
  }
  SUBCASE("random nondegenerate antisymmetric form on R^4: J^2 = -I") {
    EmbeddedManifold R4 = EmbeddedManifold::flat(4);
    Rng rng(21);
    for (int rep = 0; rep < 10; ++rep) {
      Mat A = Mat::Random(4, 4);
      Mat W = A - A.transpose();
      Eigen::JacobiSVD<Mat> svd(W);
      if (svd.singularValues().minCoeff() < 1e-3) continue;
      TwoForm omega{[W](const Vec&, const Vec& u, const Vec& v) {
        return u.dot(W * v);
      }};
      auto triple = compatible_triple_from_form(R4, omega);
      Vec x = rng.normal_vector(4);
      Vec u = rng.normal_vector(4);
      CHECK((triple.J(x, triple.J(x, u)) + u).norm() < 1e-10);
      // compatibility: g symmetric positive on a sample
      double guu = triple.g(x, u, u);
      CHECK(guu > 0.0);
    }
  }
  SUBCASE("degenerate form is rejected") {
    EmbeddedManifold R4 = EmbeddedManifold::flat(4);
    TwoForm omega{[](const Vec&, const Vec& u, const Vec& v) {
      return u[0] * v[1] - u[1] * v[0];  // rank 2 on R^4
    }};
    auto triple = compatible_triple_from_form(R4, omega);
    Vec u(4);
    u << 1, 0, 0, 0;
    CHECK_THROWS_AS(triple.J(Vec::Zero(4), u), Error);
  }
}

TEST_CASE("triple invariants hold on the registered scenarios") {
  Rng rng(2024);
  for (const char* name :
       {"s1-rotation-s2", "diag-c2", "torus-cp1", "cp2-weights", "t2-product",
        "calabi-eckmann", "toric-c2-quotient"}) {
    CAPTURE(name);
    auto sc = make_scenario(name);
    auto report = check_triple_invariants(sc, 1000, rng, 1e-8);
    CHECK(report.pass);
  }
}
