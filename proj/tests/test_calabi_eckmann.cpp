#include "doctest.h"

#include <cmath>

#include "gmmtk/calabi_eckmann.hpp"
#include "gmmtk/cplx.hpp"
#include "gmmtk/moment.hpp"
#include "gmmtk/reduction.hpp"
#include "support.hpp"

using namespace gmm;

namespace {

Vec random_point(const CELayout& L, Rng& rng) {
  return L.assemble(rng.sphere(L.p_dim()), rng.uniform(-0.8, 0.8),
                    rng.sphere(L.q_dim()), rng.uniform(-0.8, 0.8));
}

Vec random_tangent_at(const CEStructures& ce, const Vec& x, Rng& rng) {
  return random_tangent(ce.manifold, x, rng);
}

}  // namespace

TEST_CASE("sasaki data on odd spheres") {
  auto sas = sasaki_standard();
  Rng rng(200);
  for (int i = 0; i < 20; ++i) {
    Vec z = rng.sphere(4);
    Vec X = sas.reeb(z);
    CHECK(sas.eta(z, X) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sas.J(z, X).norm() < 1e-12);
    // Omega(-,-) = g(J-,-) on sphere tangents
    Vec u = rng.normal_vector(4);
    u -= u.dot(z) * z;
    Vec v = rng.normal_vector(4);
    v -= v.dot(z) * z;
    CHECK(sas.Omega(z, u, v) ==
          doctest::Approx(sas.J(z, u).dot(v)).epsilon(1e-10));
  }
}

TEST_CASE("structural identities at tau = i") {
  CalabiEckmannParams p;  // n = m = 1, tau = i
  auto ce = ce_structures(p);
  const CELayout& L = ce.layout;
  Rng rng(201);
  for (int i = 0; i < 50; ++i) {
    Vec x = random_point(L, rng);
    Vec v = random_tangent_at(ce, x, rng);
    // i_V omega_h = -ds2 and psi = -s2 at a = 0, b = 1.
    double lhs = ce.triple.omega(x, ce.V(x), v);
    CHECK(lhs == doctest::Approx(-v[L.s2_index()]).epsilon(1e-12));
    CHECK(ce.psi(x)[0] == doctest::Approx(-L.s2(x)).epsilon(1e-12));
  }
}

TEST_CASE("structural identities at 1000 points for generic tau") {
  CalabiEckmannParams p;
  p.tau = {0.9, 1.7};
  auto ce = ce_structures(p);
  const CELayout& L = ce.layout;
  Rng rng(207);
  double worst_contraction = 0.0, worst_metric_inv = 0.0, worst_Jinv = 0.0;
  const double a = p.a(), b = p.b();
  for (int i = 0; i < 1000; ++i) {
    Vec x = random_point(L, rng);
    Vec u = random_tangent_at(ce, x, rng);
    Vec v = random_tangent_at(ce, x, rng);
    // i_V omega_h = d(a b s1 - b s2) against the analytic differential
    double dpsi = a * b * u[L.s1_index()] - b * u[L.s2_index()];
    worst_contraction = std::max(
        worst_contraction, std::abs(ce.triple.omega(x, ce.V(x), u) - dpsi));
    // h invariance along the flow, finite 1-parameter transport
    double t = rng.uniform(-1.0, 1.0);
    Vec y = ce.action.act_real(Vec::Constant(1, 1.0), t, x);
    const double h = 1e-6;
    auto push = [&](const Vec& w) -> Vec {
      Vec xp = project_to_manifold(x + h * w, ce.manifold).coords;
      Vec xm = project_to_manifold(x - h * w, ce.manifold).coords;
      return (ce.action.act_real(Vec::Constant(1, 1.0), t, xp) -
              ce.action.act_real(Vec::Constant(1, 1.0), t, xm)) /
             (2 * h);
    };
    worst_metric_inv =
        std::max(worst_metric_inv, std::abs(ce.triple.g(y, push(u), push(v)) -
                                            ce.triple.g(x, u, v)));
    // J-invariance of h
    worst_Jinv = std::max(
        worst_Jinv, std::abs(ce.triple.g(x, ce.triple.J(x, u),
                                         ce.triple.J(x, v)) -
                             ce.triple.g(x, u, v)));
  }
  CHECK(worst_contraction <= 1e-6);
  CHECK(worst_metric_inv <= 1e-6);
  CHECK(worst_Jinv <= 1e-6);
}

TEST_CASE("hermitian structure of the product model") {
  auto params = Json::object();
  params["tau_re"] = 0.7;
  params["tau_im"] = 1.4;
  auto sc = make_scenario("calabi-eckmann", params);
  Rng rng(202);
  SUBCASE("J squares to minus the identity") {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      Vec x = sc.sample(rng);
      Vec v = random_tangent(sc.manifold, x, rng);
      worst = std::max(worst,
                       (sc.triple->J(x, sc.triple->J(x, v)) + v).norm());
    }
    CHECK(worst < 1e-9);
  }
  SUBCASE("h is positive definite on sampled tangents") {
    for (int i = 0; i < 200; ++i) {
      Vec x = sc.sample(rng);
      Vec v = random_tangent(sc.manifold, x, rng);
      CHECK(sc.triple->g(x, v, v) > 0.0);
    }
  }
  SUBCASE("omega_h is the hermitian form of (h, J)") {
    for (int i = 0; i < 100; ++i) {
      Vec x = sc.sample(rng);
      Vec u = random_tangent(sc.manifold, x, rng);
      Vec v = random_tangent(sc.manifold, x, rng);
      CHECK(sc.triple->omega(x, u, v) ==
            doctest::Approx(sc.triple->g(x, sc.triple->J(x, u), v))
                .epsilon(1e-9));
    }
  }
  SUBCASE("i_V omega_h equals d psi by finite differences") {
    Rng rng2(203);
    auto rep = check_defining_identity(sc.manifold, sc.action,
                                       sc.triple->omega, sc.psi, sc.sample,
                                       100, rng2, 1e-6);
    CHECK(rep.pass);
  }
}

TEST_CASE("tsukada model") {
  CalabiEckmannParams p;
  p.tau = {0.6, 1.2};
  auto ts = tsukada_model(p);
  const int pd = 2 * p.n + 2, qd = 2 * p.m + 2;
  Rng rng(204);
  for (int i = 0; i < 40; ++i) {
    Vec pq(pd + qd);
    pq << rng.sphere(pd), rng.sphere(qd);
    auto tangent = [&](Rng& r) {
      Vec u(pd + qd);
      Vec up = r.normal_vector(pd);
      up -= up.dot(pq.head(pd)) * pq.head(pd);
      Vec uq = r.normal_vector(qd);
      uq -= uq.dot(pq.tail(qd)) * pq.tail(qd);
      u << up, uq;
      return u;
    };
    Vec u = tangent(rng), v = tangent(rng);
    // J_tau^2 = -I on product tangents
    CHECK((ts.J_tau(pq, ts.J_tau(pq, u)) + u).norm() < 1e-9);
    // omega = g(J-,-), g symmetric positive
    CHECK(ts.omega(pq, u, v) ==
          doctest::Approx(ts.g(pq, ts.J_tau(pq, u), v)).epsilon(1e-9));
    CHECK(ts.g(pq, u, v) == doctest::Approx(ts.g(pq, v, u)).epsilon(1e-9));
    CHECK(ts.g(pq, u, u) > 0.0);
  }
}

TEST_CASE("reduction matches the tsukada data") {
  Rng rng(205);
  SUBCASE("minimal hopf-like case n = 1, m = 0 at c = 0") {
    // n + m >= 1 is required; (1, 0) is the smallest admissible case.
    CalabiEckmannParams p;
    p.n = 1;
    p.m = 0;
    auto rep = ce_verify_reduction(p, 0.0, 60, rng, 1e-6);
    CHECK(rep.pass);
  }
  SUBCASE("default parameters across levels: c-independence") {
    CalabiEckmannParams p;
    auto a = ce_verify_reduction(p, 0.0, 40, rng, 1e-6);
    auto b = ce_verify_reduction(p, 1.3, 40, rng, 1e-6);
    auto c = ce_verify_reduction(p, -2.1, 40, rng, 1e-6);
    CHECK(a.pass);
    CHECK(b.pass);
    CHECK(c.pass);
  }
  SUBCASE("tau = 1 + i") {
    CalabiEckmannParams p;
    p.tau = {1.0, 1.0};
    auto rep = ce_verify_reduction(p, 0.7, 40, rng, 1e-5);
    CHECK(rep.pass);
  }
  SUBCASE("negative control: flipped cross-term sign mismatches") {
    CalabiEckmannParams p;
    p.tau = {1.0, 1.0};  // needs a != 0 for the cross term to matter
    auto ce = ce_structures(p);
    auto ts = tsukada_model(p);
    const CELayout& L = ce.layout;
    double worst = 0.0;
    for (int i = 0; i < 40; ++i) {
      Vec pp = rng.sphere(L.p_dim());
      Vec qq = rng.sphere(L.q_dim());
      Vec x = L.assemble(pp, 0.0, qq, 0.0);
      Vec pq(L.p_dim() + L.q_dim());
      pq << pp, qq;
      auto dj = [&](const Vec& w) {
        return L.assemble(w.segment(0, L.p_dim()), 0.0,
                          w.segment(L.p_dim(), L.q_dim()), 0.0);
      };
      Vec Vx = ce.V(x);
      double hVV = ce.triple.g(x, Vx, Vx);
      auto proj_H = [&](const Vec& w) {
        return Vec(w - (ce.triple.g(x, Vx, w) / hVV) * Vx);
      };
      Vec up = rng.normal_vector(L.p_dim());
      up -= up.dot(pp) * pp;
      up /= up.norm();
      Vec uq = rng.normal_vector(L.q_dim());
      uq -= uq.dot(qq) * qq;
      uq /= uq.norm();
      Vec U(pq.size());
      U << up, uq;
      // tsukada metric with the cross-term sign flipped
      auto eta1 = [&](const Vec& v) {
        return cplx::times_i(pp).dot(v.segment(0, L.p_dim()));
      };
      auto eta2 = [&](const Vec& v) {
        return cplx::times_i(qq).dot(v.segment(L.p_dim(), L.q_dim()));
      };
      const double a = p.a(), b = p.b();
      auto g_flipped = [&](const Vec& u1, const Vec& u2) {
        return u1.segment(0, L.p_dim()).dot(u2.segment(0, L.p_dim())) +
               u1.segment(L.p_dim(), L.q_dim())
                   .dot(u2.segment(L.p_dim(), L.q_dim())) +
               a * (eta1(u1) * eta2(u2) + eta2(u1) * eta1(u2)) +
               (a * a + b * b - 1.0) * eta1(u1) * eta1(u2);
      };
      double red = ce.triple.g(x, proj_H(dj(U)), proj_H(dj(U)));
      worst = std::max(worst, std::abs(red - g_flipped(U, U)));
    }
    CHECK(worst > 1e-2);
  }
}

TEST_CASE("complexified orbits meet each level exactly once") {
  auto sc = make_scenario("calabi-eckmann");
  Rng rng(206);
  const double c = 0.4;
  for (int i = 0; i < 10; ++i) {
    Vec x = sc.sample(rng);
    // psi(exp(iu) x) is strictly monotone in u; bisection finds the level.
    auto value = [&](double u) {
      Vec y = sc.action.act_cplx(Vec::Constant(1, 1.0),
                                 std::complex<double>(0.0, u), x);
      return sc.psi(y)[0] - c;
    };
    double lo = -40, hi = 40;
    REQUIRE(value(lo) * value(hi) < 0);
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      if (value(lo) * value(mid) <= 0)
        hi = mid;
      else
        lo = mid;
    }
    double root = 0.5 * (lo + hi);
    CHECK(std::abs(value(root)) < 1e-9);
    // uniqueness: the derivative d/du psi(exp(iu)x) = |V|^2_h = b^2 > 0
    double h = 1e-5;
    CHECK((value(root + h) - value(root - h)) / (2 * h) > 0.5);
  }
}

TEST_CASE("parameter validation") {
  CalabiEckmannParams bad;
  bad.tau = {1.0, 0.0};
  CHECK_THROWS_AS(ce_structures(bad), Error);
  CalabiEckmannParams bad2;
  bad2.n = 0;
  bad2.m = 0;
  bad2.n = -1;
  CHECK_THROWS_AS(ce_structures(bad2), Error);
}
