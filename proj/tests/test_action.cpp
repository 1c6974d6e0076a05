#include "doctest.h"

#include <cmath>

#include "gmmtk/action.hpp"
#include "gmmtk/cplx.hpp"
#include "gmmtk/scenario.hpp"
#include "support.hpp"

using namespace gmm;

TEST_CASE("fundamental fields") {
  SUBCASE("circle rotation on R^2 at (1,0)") {
    auto sc = gmmtest::flat_r2_rotation();
    Vec m(2);
    m << 1, 0;
    Vec f = fundamental_field(sc.manifold, sc.action, Vec::Constant(1, 1.0),
                              ManifoldPoint{m, 0.0})
                .vec;
    Vec expected(2);
    expected << 0, 1;
    CHECK((f - expected).norm() < 1e-14);
  }
  SUBCASE("zero element gives the zero field") {
    auto sc = make_scenario("s1-rotation-s2");
    Rng rng(1);
    Vec x = sc.sample(rng);
    Vec f = fundamental_field(sc.manifold, sc.action, Vec::Zero(1),
                              ManifoldPoint{x, 0.0})
                .vec;
    CHECK(f.norm() == 0.0);
  }
  SUBCASE("linearity in xi") {
    auto sc = make_scenario("t2-product");
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
      Vec x = sc.sample(rng);
      Vec a = rng.normal_vector(2), b = rng.normal_vector(2);
      double s = rng.uniform(-2, 2);
      ManifoldPoint m{x, 0.0};
      Vec lhs =
          fundamental_field(sc.manifold, sc.action, Vec(a + s * b), m).vec;
      Vec rhs = fundamental_field(sc.manifold, sc.action, a, m).vec +
                s * fundamental_field(sc.manifold, sc.action, b, m).vec;
      CHECK((lhs - rhs).norm() < 1e-10);
    }
  }
  SUBCASE("calabi-eckmann generator matches V componentwise") {
    auto params = Json::object();
    params["tau_re"] = 0.4;
    params["tau_im"] = 1.3;
    auto sc = make_scenario("calabi-eckmann", params);
    const auto& ce = *sc.ce;
    CELayout L{ce.n, ce.m};
    Rng rng(3);
    Vec x = sc.sample(rng);
    Vec f = fundamental_field(sc.manifold, sc.action, Vec::Constant(1, 1.0),
                              ManifoldPoint{x, 0.0})
                .vec;
    // V = d/ds1 + b X_2 + a d/ds2 with X_2 = i q.
    CHECK(f[L.s1_index()] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f[L.s2_index()] == doctest::Approx(0.4).epsilon(1e-12));
    Vec expected_q = 1.3 * cplx::times_i(L.q(x));
    CHECK((f.segment(L.q_offset(), L.q_dim()) - expected_q).norm() < 1e-12);
    CHECK(f.segment(0, L.p_dim()).norm() < 1e-12);
  }
}

TEST_CASE("complexified action") {
  SUBCASE("z = 0 is the identity") {
    auto sc = make_scenario("cp2-weights");
    Rng rng(4);
    Vec x = sc.sample(rng);
    auto y = act_complexified(sc.manifold, sc.action, Vec::Constant(1, 1.0),
                              {0.0, 0.0}, ManifoldPoint{x, 0.0});
    CHECK((y.coords - x).norm() < 1e-12);
  }
  SUBCASE("weight-one circle on C: exp(i(is)) scales by e^{-s}") {
    auto sc = gmmtest::flat_r2_rotation();
    Vec m(2);
    m << 1, 0;
    auto y = act_complexified(sc.manifold, sc.action, Vec::Constant(1, 1.0),
                              {0.0, 1.0}, ManifoldPoint{m, 0.0});
    CHECK(y.coords[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::abs(y.coords[1]) < 1e-14);
  }
  SUBCASE("calabi-eckmann real action matches (e^t x, e^{tau t} y)") {
    auto params = Json::object();
    params["tau_re"] = 0.5;
    params["tau_im"] = 2.0;
    auto sc = make_scenario("calabi-eckmann", params);
    CELayout L{sc.ce->n, sc.ce->m};
    Rng rng(5);
    Vec x = sc.sample(rng);
    const double t = 0.37;
    Vec y = sc.action.act_real(Vec::Constant(1, 1.0), t, x);
    // Through the chart (p, s1, q, s2) -> (e^{s1} p, e^{s2} q):
    // x-block scales by e^t, y-block by e^{tau t}.
    Vec amb_x = std::exp(L.s1(x)) * L.p(x);
    Vec amb_y_before = std::exp(L.s2(x)) * L.q(x);
    Vec amb_after_x = std::exp(L.s1(y)) * L.p(y);
    Vec amb_after_y = std::exp(L.s2(y)) * L.q(y);
    CHECK((amb_after_x - std::exp(t) * amb_x).norm() < 1e-10);
    std::complex<double> tau(0.5, 2.0);
    auto scale = std::exp(tau * t);
    Vec expected_y = cplx::scale(scale, amb_y_before);
    CHECK((amb_after_y - expected_y).norm() < 1e-10);
  }
  SUBCASE("abelian group law") {
    for (const char* name : {"cp2-weights", "diag-c2", "calabi-eckmann"}) {
      CAPTURE(name);
      auto sc = make_scenario(name);
      Rng rng(6);
      Vec x = sc.sample(rng);
      Vec xi = Vec::Constant(1, 0.8);
      std::complex<double> z1{0.3, -0.4}, z2{-0.1, 0.6};
      auto a = act_complexified(sc.manifold, sc.action, xi, z1,
                                ManifoldPoint{x, 0.0});
      auto ab = act_complexified(sc.manifold, sc.action, xi, z2, a);
      auto direct = act_complexified(sc.manifold, sc.action, xi, z1 + z2,
                                     ManifoldPoint{x, 0.0});
      CHECK((ab.coords - direct.coords).norm() < 1e-8);
    }
  }
  SUBCASE("overflow guard saturates") {
    auto sc = make_scenario("diag-c2");
    Vec m(4);
    m << 1, 0, 0, 0;
    CHECK_THROWS_AS(act_complexified(sc.manifold, sc.action,
                                     Vec::Constant(1, 1.0), {0.0, 1e4},
                                     ManifoldPoint{m, 0.0}),
                    Error);
  }
  SUBCASE("real flows form one-parameter groups") {
    Rng rng(10);
    for (const char* name : {"s1-rotation-s2", "cp2-weights", "t2-product",
                             "calabi-eckmann", "toric-c2-quotient"}) {
      CAPTURE(name);
      auto sc = make_scenario(name);
      for (int i = 0; i < 10; ++i) {
        Vec x = sc.sample(rng);
        Vec xi = rng.sphere(sc.rank());
        double t1 = rng.uniform(-2, 2), t2 = rng.uniform(-2, 2);
        Vec composed = sc.action.act_real(xi, t1, sc.action.act_real(xi, t2, x));
        Vec direct = sc.action.act_real(xi, t1 + t2, x);
        CHECK((composed - direct).norm() < 1e-12);
        // t = 0 is the identity
        CHECK((sc.action.act_real(xi, 0.0, x) - x).norm() == 0.0);
      }
    }
  }
}

TEST_CASE("isotropy algebra") {
  Tolerances tol;
  SUBCASE("free orbit point of the Hopf action") {
    auto sc = make_scenario("hopf-s3");
    Rng rng(7);
    Vec x = sc.sample(rng);
    auto iso = isotropy_algebra(sc.manifold, sc.action, ManifoldPoint{x, 0.0},
                                tol.iso_rel);
    CHECK(iso.algebra_basis.cols() == 0);
    CHECK(iso.annihilator_basis.cols() == 1);
  }
  SUBCASE("pole of the rotating sphere is fully fixed") {
    auto sc = make_scenario("s1-rotation-s2");
    Vec pole(3);
    pole << 0, 0, 1;
    auto iso = isotropy_algebra(sc.manifold, sc.action,
                                ManifoldPoint{pole, 0.0}, tol.iso_rel);
    CHECK(iso.algebra_basis.cols() == 1);
  }
  SUBCASE("coordinate axis of the torus on C^2") {
    auto sc = gmmtest::t2_on_c2();
    Vec m(4);
    m << 1, 0, 0, 0;  // z = (1, 0)
    auto iso = isotropy_algebra(sc.manifold, sc.action, ManifoldPoint{m, 0.0},
                                tol.iso_rel);
    REQUIRE(iso.algebra_basis.cols() == 1);
    // kernel = span(e_2): the second factor fixes z_2 = 0.
    CHECK(std::abs(iso.algebra_basis(0, 0)) < 1e-10);
    CHECK(std::abs(std::abs(iso.algebra_basis(1, 0)) - 1.0) < 1e-10);
  }
}

TEST_CASE("invariance checks") {
  Rng rng(8);
  SUBCASE("rotation-invariant area form passes") {
    auto sc = make_scenario("s1-rotation-s2");
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(sc.sample(rng));
    auto rep = check_invariance(
        sc.manifold, sc.action,
        [&sc](const Vec& x, const Vec& u, const Vec& v) {
          return sc.triple->omega(x, u, v);
        },
        pts, rng, 1e-9);
    CHECK(rep.pass);
  }
  SUBCASE("x dx^dy is not rotation invariant") {
    auto sc = gmmtest::flat_r2_rotation();
    std::vector<Vec> pts;
    for (int i = 0; i < 40; ++i) pts.push_back(sc.sample(rng));
    auto rep = check_invariance(
        sc.manifold, sc.action,
        [](const Vec& x, const Vec& u, const Vec& v) {
          return x[0] * (u[0] * v[1] - u[1] * v[0]);
        },
        pts, rng, 1e-9);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_deviation > 1e-3);
  }
  SUBCASE("calabi-eckmann metric is invariant under the R-action") {
    auto sc = make_scenario("calabi-eckmann");
    std::vector<Vec> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(sc.sample(rng));
    auto rep = check_invariance(
        sc.manifold, sc.action,
        [&sc](const Vec& x, const Vec& u, const Vec& v) {
          return sc.triple->g(x, u, v);
        },
        pts, rng, 1e-6);
    CHECK(rep.pass);
  }
  SUBCASE("built-in actions are isometries of their metrics") {
    for (const char* name : {"s1-rotation-s2", "cp2-weights", "t2-product"}) {
      CAPTURE(name);
      auto sc = make_scenario(name);
      std::vector<Vec> pts;
      for (int i = 0; i < 25; ++i) pts.push_back(sc.sample(rng));
      auto rep = check_invariance(
          sc.manifold, sc.action,
          [&sc](const Vec& x, const Vec& u, const Vec& v) {
            return sc.triple->g(x, u, v);
          },
          pts, rng, 1e-8);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("torus generators commute and the action preserves membership") {
  Rng rng(9);
  for (const char* name : {"t2-product", "s1-rotation-s2"}) {
    CAPTURE(name);
    auto sc = make_scenario(name);
    const double h = 1e-5;
    const int n_samples = std::string(name) == "t2-product" ? 250 : 25;
    for (int i = 0; i < n_samples; ++i) {
      Vec x = sc.sample(rng);
      // Finite-difference bracket of two generator fields.
      for (int a = 0; a < sc.rank(); ++a)
        for (int b = a + 1; b < sc.rank(); ++b) {
          auto field = [&](int idx, const Vec& y) {
            Vec e = Vec::Zero(sc.rank());
            e[idx] = 1.0;
            return fundamental_field(sc.manifold, sc.action, e,
                                     ManifoldPoint{y, 0.0})
                .vec;
          };
          Vec fa = field(a, x), fb = field(b, x);
          auto shift = [&](const Vec& dir, double s) {
            return project_to_manifold(x + s * dir, sc.manifold).coords;
          };
          Vec dba = (field(b, shift(fa, h)) - field(b, shift(fa, -h))) / (2 * h);
          Vec dab = (field(a, shift(fb, h)) - field(a, shift(fb, -h))) / (2 * h);
          CHECK((dba - dab).norm() < 1e-6);
        }
      // Residual preservation under the action.
      Vec xi = rng.sphere(sc.rank());
      Vec y = sc.action.act_real(xi, rng.uniform(-2, 2), x);
      CHECK(sc.manifold.residual(y) <= sc.manifold.tol().eps_mem);
    }
  }
}
