#include "gmmtk/calabi_eckmann.hpp"

#include <cmath>

#include "gmmtk/cplx.hpp"

namespace gmm {

Vec CELayout::assemble(const Vec& pv, double s1v, const Vec& qv,
                       double s2v) const {
  Vec x(ambient_dim());
  x.segment(0, p_dim()) = pv;
  x[s1_index()] = s1v;
  x.segment(q_offset(), q_dim()) = qv;
  x[s2_index()] = s2v;
  return x;
}

SasakiData sasaki_standard() {
  SasakiData s;
  s.reeb = [](const Vec& z) { return cplx::times_i(z); };
  s.eta = [](const Vec& z, const Vec& v) {
    return cplx::times_i(z).dot(v);
  };
  s.J = [](const Vec& z, const Vec& v) {
    Vec X = cplx::times_i(z);
    Vec perp = v - X.dot(v) * X;
    return Vec(cplx::times_i(perp));
  };
  s.Omega = [](const Vec& z, const Vec& u, const Vec& v) {
    Vec X = cplx::times_i(z);
    Vec up = u - X.dot(u) * X;
    Vec vp = v - X.dot(v) * X;
    return cplx::hdot(up, vp).imag();
  };
  s.g_prime = [](const Vec& z, const Vec& u, const Vec& v) {
    Vec X = cplx::times_i(z);
    return u.dot(v) - (X.dot(u)) * (X.dot(v));
  };
  return s;
}

CEStructures ce_structures(const CalabiEckmannParams& params,
                           const Tolerances& tol) {
  params.validate();
  CEStructures ce;
  ce.params = params;
  ce.layout = CELayout{params.n, params.m};
  const CELayout L = ce.layout;
  const double a = params.a();
  const double b = params.b();

  ce.manifold = EmbeddedManifold(
      "calabi-eckmann", L.ambient_dim(), 2,
      [L](const Vec& x) {
        Vec c(2);
        c[0] = L.p(x).squaredNorm() - 1.0;
        c[1] = L.q(x).squaredNorm() - 1.0;
        return c;
      },
      [L](const Vec& x) {
        Mat J = Mat::Zero(2, L.ambient_dim());
        J.block(0, 0, 1, L.p_dim()) = 2.0 * L.p(x).transpose();
        J.block(1, L.q_offset(), 1, L.q_dim()) = 2.0 * L.q(x).transpose();
        return J;
      },
      tol);

  // Block one-forms on Y. All take the full ambient point/vector.
  auto eta1 = [L](const Vec& x, const Vec& v) {
    return cplx::times_i(L.p(x)).dot(L.p(v));
  };
  auto eta2 = [L](const Vec& x, const Vec& v) {
    return cplx::times_i(L.q(x)).dot(L.q(v));
  };
  auto ds1 = [L](const Vec& v) { return v[L.s1_index()]; };
  auto ds2 = [L](const Vec& v) { return v[L.s2_index()]; };
  auto omega1 = [L](const Vec& x, const Vec& u, const Vec& v) {
    Vec X = cplx::times_i(L.p(x));
    Vec up = L.p(u) - X.dot(L.p(u)) * X;
    Vec vp = L.p(v) - X.dot(L.p(v)) * X;
    return cplx::hdot(up, vp).imag();
  };
  auto omega2 = [L](const Vec& x, const Vec& u, const Vec& v) {
    Vec X = cplx::times_i(L.q(x));
    Vec uq = L.q(u) - X.dot(L.q(u)) * X;
    Vec vq = L.q(v) - X.dot(L.q(v)) * X;
    return cplx::hdot(uq, vq).imag();
  };
  auto gp1 = [L](const Vec& x, const Vec& u, const Vec& v) {
    Vec X = cplx::times_i(L.p(x));
    return L.p(u).dot(L.p(v)) - X.dot(L.p(u)) * X.dot(L.p(v));
  };
  auto gp2 = [L](const Vec& x, const Vec& u, const Vec& v) {
    Vec X = cplx::times_i(L.q(x));
    return L.q(u).dot(L.q(v)) - X.dot(L.q(u)) * X.dot(L.q(v));
  };

  // The four one-forms whose squares and wedges build h and omega_h.
  auto f1 = [=](const Vec& x, const Vec& v) {  // b eta1 + ds2 - a ds1
    return b * eta1(x, v) + ds2(v) - a * ds1(v);
  };
  auto f2 = [=](const Vec&, const Vec& v) {  // ds2 - a ds1
    return ds2(v) - a * ds1(v);
  };
  auto f3 = [=](const Vec& x, const Vec& v) {  // eta2 - a eta1
    return eta2(x, v) - a * eta1(x, v);
  };
  auto f4 = [=](const Vec& x, const Vec& v) {  // b ds1 - eta2 + a eta1
    return b * ds1(v) - eta2(x, v) + a * eta1(x, v);
  };

  MetricFn h = [=](const Vec& x, const Vec& u, const Vec& v) {
    return f1(x, u) * f1(x, v) + f2(x, u) * f2(x, v) + f3(x, u) * f3(x, v) +
           f4(x, u) * f4(x, v) + gp1(x, u, v) + gp2(x, u, v);
  };
  TwoFormFn omega_h = [=](const Vec& x, const Vec& u, const Vec& v) {
    double wedge14 = f4(x, u) * f1(x, v) - f4(x, v) * f1(x, u);
    double wedge23 = f2(x, u) * f3(x, v) - f2(x, v) * f3(x, u);
    return wedge14 + wedge23 + omega1(x, u, v) + omega2(x, u, v);
  };
  // Product complex structure: J d/ds_i = X_i, J X_i = -d/ds_i, i on ker eta.
  EndoField J = [L](const Vec& x, const Vec& v) {
    Vec out = Vec::Zero(x.size());
    Vec p = L.p(x), q = L.q(x);
    Vec X1 = cplx::times_i(p), X2 = cplx::times_i(q);
    Vec vp = L.p(v), vq = L.q(v);
    double e1 = X1.dot(vp), e2 = X2.dot(vq);
    Vec p_perp = vp - e1 * X1;
    Vec q_perp = vq - e2 * X2;
    out.segment(0, L.p_dim()) = cplx::times_i(p_perp) + v[L.s1_index()] * X1;
    out[L.s1_index()] = -e1;
    out.segment(L.q_offset(), L.q_dim()) =
        cplx::times_i(q_perp) + v[L.s2_index()] * X2;
    out[L.s2_index()] = -e2;
    return out;
  };
  ce.triple = HermitianTriple{J, h, TwoForm{omega_h}};

  ce.psi = [L, a, b](const Vec& x) {
    Vec val(1);
    val[0] = a * b * L.s1(x) - b * L.s2(x);
    return val;
  };

  ce.V = [L, a, b](const Vec& x) {
    Vec v = Vec::Zero(x.size());
    v[L.s1_index()] = 1.0;
    v.segment(L.q_offset(), L.q_dim()) = b * cplx::times_i(L.q(x));
    v[L.s2_index()] = a;
    return v;
  };

  GroupActionSpec action;
  action.rank = 1;
  action.one_parameter_real = true;
  action.generators = {ce.V};
  action.act_real = [L, a, b](const Vec& xi, double t, const Vec& x) {
    const double u = xi[0] * t;
    Vec q = cplx::scale(std::exp(std::complex<double>(0, b * u)), L.q(x));
    return L.assemble(L.p(x), L.s1(x) + u, q, L.s2(x) + a * u);
  };
  // exp(xi (t + i s)): p picks up the phase xi s, q the phase xi(b t + a s),
  // s1 += xi t, s2 += xi (a t - b s).
  action.act_cplx = [L, a, b](const Vec& xi, std::complex<double> z,
                              const Vec& x) {
    const double t = xi[0] * z.real();
    const double s = xi[0] * z.imag();
    Vec p = cplx::scale(std::exp(std::complex<double>(0, s)), L.p(x));
    Vec q = cplx::scale(std::exp(std::complex<double>(0, b * t + a * s)),
                        L.q(x));
    return L.assemble(p, L.s1(x) + t, q, L.s2(x) + a * t - b * s);
  };
  ce.action = std::move(action);
  return ce;
}

TsukadaModel tsukada_model(const CalabiEckmannParams& params) {
  params.validate();
  const double a = params.a();
  const double b = params.b();
  const int pd = 2 * params.n + 2;
  const int qd = 2 * params.m + 2;
  auto pblk = [pd](const Vec& v) { return Vec(v.segment(0, pd)); };
  auto qblk = [pd, qd](const Vec& v) { return Vec(v.segment(pd, qd)); };
  auto eta1 = [pblk](const Vec& x, const Vec& v) {
    return cplx::times_i(pblk(x)).dot(pblk(v));
  };
  auto eta2 = [qblk](const Vec& x, const Vec& v) {
    return cplx::times_i(qblk(x)).dot(qblk(v));
  };

  TsukadaModel t;
  t.g = [=](const Vec& x, const Vec& u, const Vec& v) {
    double g12 = eta1(x, u) * eta2(x, v) + eta2(x, u) * eta1(x, v);
    return pblk(u).dot(pblk(v)) + qblk(u).dot(qblk(v)) - a * g12 +
           (a * a + b * b - 1.0) * eta1(x, u) * eta1(x, v);
  };
  t.J_tau = [=](const Vec& x, const Vec& v) {
    Vec p = pblk(x), q = qblk(x);
    Vec X1 = cplx::times_i(p), X2 = cplx::times_i(q);
    double e1 = eta1(x, v), e2 = eta2(x, v);
    Vec J1v = cplx::times_i(pblk(v) - e1 * X1);
    Vec J2v = cplx::times_i(qblk(v) - e2 * X2);
    Vec out(x.size());
    out.segment(0, p.size()) = J1v + (a / b) * e1 * X1 - (1.0 / b) * e2 * X1;
    out.segment(p.size(), q.size()) =
        J2v + ((a * a + b * b) / b) * e1 * X2 - (a / b) * e2 * X2;
    return out;
  };
  t.omega = [=](const Vec& x, const Vec& u, const Vec& v) {
    Vec p = pblk(x), q = qblk(x);
    Vec X1 = cplx::times_i(p), X2 = cplx::times_i(q);
    Vec up = pblk(u) - X1.dot(pblk(u)) * X1;
    Vec vp = pblk(v) - X1.dot(pblk(v)) * X1;
    Vec uq = qblk(u) - X2.dot(qblk(u)) * X2;
    Vec vq = qblk(v) - X2.dot(qblk(v)) * X2;
    double O1 = cplx::hdot(up, vp).imag();
    double O2 = cplx::hdot(uq, vq).imag();
    return O1 + O2 +
           b * (eta1(x, u) * eta2(x, v) - eta2(x, u) * eta1(x, v));
  };
  return t;
}

CEReductionReport ce_verify_reduction(const CalabiEckmannParams& params,
                                      double c, int n_samples, Rng& rng,
                                      double tolerance, const Tolerances& tol) {
  CEStructures ce = ce_structures(params, tol);
  TsukadaModel ts = tsukada_model(params);
  const CELayout& L = ce.layout;
  const double u0 = -c / params.b();

  CEReductionReport report;
  report.tolerance = tolerance;
  report.n_samples = n_samples;

  auto sphere_tangent = [&](const Vec& z) {
    Vec v = rng.normal_vector(z.size());
    v -= v.dot(z) * z;
    return Vec(v / v.norm());
  };

  for (int i = 0; i < n_samples; ++i) {
    Vec p = rng.sphere(L.p_dim());
    Vec q = rng.sphere(L.q_dim());
    Vec x = L.assemble(p, 0.0, q, u0);  // j_{u0}(p, q), lies in Psi^{-1}(c)
    Vec pq(L.p_dim() + L.q_dim());
    pq << p, q;

    auto dj = [&](const Vec& w) {
      return L.assemble(w.segment(0, L.p_dim()), 0.0,
                        w.segment(L.p_dim(), L.q_dim()), 0.0);
    };

    Vec Vx = ce.V(x);
    const double hVV = ce.triple.g(x, Vx, Vx);
    auto proj_H = [&](const Vec& w) {
      return Vec(w - (ce.triple.g(x, Vx, w) / hVV) * Vx);
    };

    for (int rep = 0; rep < 2; ++rep) {
      Vec u = sphere_tangent(p), uq = sphere_tangent(q);
      Vec v = sphere_tangent(p), vq = sphere_tangent(q);
      Vec U(pq.size()), W(pq.size());
      U << u, uq;
      W << v, vq;
      Vec dU = dj(U), dW = dj(W);

      double form_dev =
          std::abs(ce.triple.omega(x, dU, dW) - ts.omega(pq, U, W));
      double metric_dev = std::abs(
          ce.triple.g(x, proj_H(dU), proj_H(dW)) - ts.g(pq, U, W));
      Vec lhs = proj_H(ce.triple.J(x, proj_H(dU)));
      Vec rhs = proj_H(dj(ts.J_tau(pq, U)));
      double J_dev = (lhs - rhs).norm();

      report.max_form_dev = std::max(report.max_form_dev, form_dev);
      report.max_metric_dev = std::max(report.max_metric_dev, metric_dev);
      report.max_J_dev = std::max(report.max_J_dev, J_dev);
    }
  }
  report.pass = report.max_form_dev <= tolerance &&
                report.max_metric_dev <= tolerance &&
                report.max_J_dev <= tolerance;
  return report;
}

}  // namespace gmm
