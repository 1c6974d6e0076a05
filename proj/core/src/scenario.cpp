#include "gmmtk/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "gmmtk/cplx.hpp"
#include "gmmtk/ode.hpp"

namespace gmm {

namespace {

EmbeddedManifold unit_sphere(const std::string& name, int ambient_dim,
                             const Tolerances& tol) {
  return EmbeddedManifold(
      name, ambient_dim, 1,
      [](const Vec& x) {
        Vec c(1);
        c[0] = x.squaredNorm() - 1.0;
        return c;
      },
      [](const Vec& x) { return Mat(2.0 * x.transpose()); }, tol);
}

// Complexified flow obtained by integrating J xi_M for the imaginary part.
// Used where no closed form is available.
std::function<Vec(const Vec&, std::complex<double>, const Vec&)>
ode_complexification(const EmbeddedManifold& M, const GroupActionSpec& base,
                     const EndoField& J, const Tolerances& tol) {
  auto gens = base.generators;
  auto act_real = base.act_real;
  int rank = base.rank;
  return [M, gens, act_real, rank, J, tol](const Vec& xi,
                                           std::complex<double> z,
                                           const Vec& x) -> Vec {
    Vec y = z.real() != 0.0 ? act_real(xi, z.real(), x) : x;
    const double s = z.imag();
    if (s == 0.0) return y;
    const double dir = s > 0 ? 1.0 : -1.0;
    auto field = [&](const Vec& p) -> Vec {
      Vec v = Vec::Zero(p.size());
      for (int i = 0; i < rank; ++i)
        if (xi[i] != 0.0) v += xi[i] * gens[i](p);
      return dir * J(p, physical_projector(M, p) * v);
    };
    OdeOptions opts;
    opts.rtol = tol.ode_rtol;
    opts.atol = tol.ode_atol;
    auto res = integrate_ode(M, field, y, std::abs(s), opts);
    return res.samples.back().x;
  };
}

// ---------------------------------------------------------------------------
// s1-rotation-s2: the round two-sphere, rotation about the z-axis,
// area form omega(u, v) = x . (u x v), psi = height.
// ---------------------------------------------------------------------------
Scenario make_s1_rotation_s2(const Json&, const Tolerances& tol) {
  Scenario sc;
  sc.name = "s1-rotation-s2";
  sc.manifold = unit_sphere(sc.name, 3, tol);

  auto cross = [](const Vec& a, const Vec& b) -> Vec {
    Vec c(3);
    c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0];
    return c;
  };

  GroupActionSpec action;
  action.rank = 1;
  action.generators = {[cross](const Vec& x) -> Vec {
    Vec ez(3);
    ez << 0, 0, 1;
    return cross(ez, x);
  }};
  action.act_real = [](const Vec& xi, double t, const Vec& x) -> Vec {
    const double th = xi[0] * t, c = std::cos(th), s = std::sin(th);
    Vec y(3);
    y << c * x[0] - s * x[1], s * x[0] + c * x[1], x[2];
    return y;
  };
  // exp(i s xi) is the height gradient flow: z -> tanh(s xi + artanh z).
  action.act_cplx = [](const Vec& xi, std::complex<double> zc,
                       const Vec& x) -> Vec {
    const double th = xi[0] * zc.real(), c = std::cos(th), s = std::sin(th);
    Vec y(3);
    y << c * x[0] - s * x[1], s * x[0] + c * x[1], x[2];
    const double r = std::hypot(y[0], y[1]);
    if (r < 1e-154) return y;  // at a pole; stays
    double zz = std::clamp(y[2], -1.0 + 1e-16, 1.0 - 1e-16);
    double w = std::atanh(zz) + xi[0] * zc.imag();
    double znew = std::tanh(w);
    double rnew = std::sqrt(std::max(0.0, 1.0 - znew * znew));
    Vec out(3);
    out << y[0] * rnew / r, y[1] * rnew / r, znew;
    return out;
  };
  sc.action = std::move(action);

  HermitianTriple triple;
  triple.omega = TwoForm{[cross](const Vec& x, const Vec& u, const Vec& v) {
    return x.dot(cross(u, v));
  }};
  triple.J = [cross](const Vec& x, const Vec& v) -> Vec {
    return cross(x / x.norm(), v);
  };
  triple.g = [](const Vec&, const Vec& u, const Vec& v) { return u.dot(v); };
  sc.triple = std::move(triple);

  sc.psi = [](const Vec& x) {
    Vec val(1);
    val[0] = x[2];
    return val;
  };
  sc.base_point = Vec(3);
  sc.base_point << 0, 0, 1;
  sc.base_value = Vec::Constant(1, 1.0);
  sc.is_complex = true;
  sc.compact = true;

  Vec north(3), south(3);
  north << 0, 0, 1;
  south << 0, 0, -1;
  sc.fixed_components = {
      {"north", north, Vec::Constant(1, 1.0), {Vec::Constant(1, -1.0)}},
      {"south", south, Vec::Constant(1, -1.0), {Vec::Constant(1, 1.0)}}};
  sc.critical_values = {Vec::Constant(1, 0.0), Vec::Constant(1, -1.0),
                        Vec::Constant(1, 1.0)};
  sc.sample = [](Rng& rng) { return rng.sphere(3); };
  sc.stratum_samplers = {sc.sample, [north](Rng&) { return north; },
                         [south](Rng&) { return south; }};
  sc.basin_oracle = [](const Vec& x) -> int {
    if (std::abs(x[2] - 1.0) < 1e-9) return 2;
    if (std::abs(x[2] + 1.0) < 1e-9) return 1;
    return 0;
  };
  sc.open_stratum_fraction = 0.99;
  sc.notes =
      "area form x.(u x v), J = x cross, psi = height; counterclockwise "
      "rotation about e_z";
  return sc;
}

// ---------------------------------------------------------------------------
// diag-c2: flat C^2, diagonal circle z -> e^{i t} z, standard symplectic
// form, psi = -|z|^2 / 2.
// ---------------------------------------------------------------------------
Scenario make_diag_c2(const Json&, const Tolerances& tol) {
  Scenario sc;
  sc.name = "diag-c2";
  sc.manifold = EmbeddedManifold::flat(4, tol);

  GroupActionSpec action;
  action.rank = 1;
  action.generators = {[](const Vec& x) { return cplx::times_i(x); }};
  action.act_real = [](const Vec& xi, double t, const Vec& x) -> Vec {
    return cplx::scale(std::exp(std::complex<double>(0, xi[0] * t)), x);
  };
  action.act_cplx = [](const Vec& xi, std::complex<double> z,
                       const Vec& x) -> Vec {
    // e^{i xi (t + i s)} = e^{i xi t} e^{-xi s}
    auto w = std::exp(std::complex<double>(-xi[0] * z.imag(),
                                           xi[0] * z.real()));
    return cplx::scale(w, x);
  };
  sc.action = std::move(action);

  HermitianTriple triple;
  triple.omega = TwoForm{[](const Vec&, const Vec& u, const Vec& v) {
    return cplx::hdot(u, v).imag();
  }};
  triple.J = [](const Vec&, const Vec& v) -> Vec { return cplx::times_i(v); };
  triple.g = [](const Vec&, const Vec& u, const Vec& v) { return u.dot(v); };
  sc.triple = std::move(triple);

  sc.psi = [](const Vec& x) {
    Vec val(1);
    val[0] = -0.5 * x.squaredNorm();
    return val;
  };
  sc.base_point = Vec::Zero(4);
  sc.base_value = Vec::Zero(1);
  sc.is_complex = true;
  sc.compact = false;
  sc.fixed_components = {{"origin",
                          Vec::Zero(4),
                          Vec::Zero(1),
                          {Vec::Constant(1, -1.0), Vec::Constant(1, -1.0)}}};
  sc.critical_values = {Vec::Zero(1)};
  sc.sample = [](Rng& rng) -> Vec {
    Vec x = 0.6 * rng.normal_vector(4);
    while (x.norm() < 0.05) x = 0.6 * rng.normal_vector(4);
    return x;
  };
  sc.stratum_samplers = {sc.sample};
  sc.basin_oracle = [](const Vec&) { return 0; };
  // CP^1 chart of the reduced space at level p < 0: the Hopf quotient of
  // the radius sqrt(-2p) sphere, section w -> r (1, w) / sqrt(1 + |w|^2).
  sc.reduced_section = [](double u, double v, const Vec& level) -> Vec {
    const double p = level[0];
    const double r = std::sqrt(std::max(0.0, -2.0 * p));
    const double nrm = std::sqrt(1.0 + u * u + v * v);
    Vec x(4);
    x << r / nrm, 0.0, r * u / nrm, r * v / nrm;
    return x;
  };
  sc.level_connection = [](const Vec& x, const Vec& v) -> Vec {
    Vec val(1);
    val[0] = cplx::times_i(x).dot(v) / x.squaredNorm();
    return val;
  };
  sc.notes =
      "counterclockwise diagonal rotation; psi = -|z|^2/2, so the normal-form "
      "weights at the origin are (-1, -1)";
  return sc;
}

// ---------------------------------------------------------------------------
// hopf-s3: the free Hopf circle on S^3 (no Hermitian data; odd dimension).
// ---------------------------------------------------------------------------
Scenario make_hopf_s3(const Json&, const Tolerances& tol) {
  Scenario sc;
  sc.name = "hopf-s3";
  sc.manifold = unit_sphere(sc.name, 4, tol);
  GroupActionSpec action;
  action.rank = 1;
  action.generators = {[](const Vec& x) { return cplx::times_i(x); }};
  action.act_real = [](const Vec& xi, double t, const Vec& x) -> Vec {
    return cplx::scale(std::exp(std::complex<double>(0, xi[0] * t)), x);
  };
  sc.action = std::move(action);
  sc.is_complex = false;
  sc.compact = true;
  sc.sample = [](Rng& rng) { return rng.sphere(4); };
  sc.stratum_samplers = {sc.sample};
  sc.notes = "principal total space only; consumed by coupling scenarios";
  return sc;
}

// ---------------------------------------------------------------------------
// Weighted projective circle scenarios carried on an odd sphere with the
// Hopf direction as internal gauge. Convention: the circle acts by
// z_j -> e^{-i w_j t} z_j so that psi = sum_j w_j |z_j|^2 / |z|^2 solves
// d psi = i_{xi_M} omega with omega = 2 Im<hor -, hor ->, J = i.
// ---------------------------------------------------------------------------
Scenario make_weighted_projective(const std::string& name,
                                  const std::vector<double>& weights,
                                  const Tolerances& tol) {
  Scenario sc;
  sc.name = name;
  const int ncoord = static_cast<int>(weights.size());
  const int ambient = 2 * ncoord;
  sc.manifold = unit_sphere(name, ambient, tol);
  sc.manifold.set_gauge_fields({[](const Vec& x) {
    return Vec(cplx::times_i(x) / std::max(x.norm(), 1e-300));
  }});

  Vec w(ncoord);
  for (int j = 0; j < ncoord; ++j) w[j] = weights[j];

  auto weight_scale = [w, ncoord](const Vec& x, std::complex<double> factor_exp,
                                  bool shift_exponents) -> Vec {
    // multiplies coordinate j by exp(w_j * factor_exp); with shifting, the
    // common real exponent is removed first (the projective representative
    // is scale invariant), which keeps arbitrarily long complexified flows
    // inside the floating range.
    double shift = 0.0;
    if (shift_exponents) {
      bool first = true;
      for (int j = 0; j < ncoord; ++j) {
        if (std::abs(cplx::coord(x, j)) < 1e-300) continue;
        double e = w[j] * factor_exp.real();
        shift = first ? e : std::max(shift, e);
        first = false;
      }
    }
    Vec out(x.size());
    for (int j = 0; j < ncoord; ++j) {
      auto zj = cplx::coord(x, j);
      // exp can overflow on dead coordinates; 0 stays 0.
      cplx::set_coord(
          out, j,
          std::abs(zj) < 1e-300
              ? std::complex<double>(0.0, 0.0)
              : std::exp(std::complex<double>(w[j] * factor_exp.real() - shift,
                                              w[j] * factor_exp.imag())) *
                    zj);
    }
    return out;
  };

  GroupActionSpec action;
  action.rank = 1;
  action.generators = {[w, ncoord](const Vec& x) -> Vec {
    Vec wx(x.size());
    for (int j = 0; j < ncoord; ++j)
      cplx::set_coord(wx, j, w[j] * cplx::coord(x, j));
    return Vec(-cplx::times_i(wx));
  }};
  action.act_real = [weight_scale](const Vec& xi, double t,
                                   const Vec& x) -> Vec {
    return weight_scale(x, std::complex<double>(0, -xi[0] * t), false);
  };
  action.act_cplx = [weight_scale](const Vec& xi, std::complex<double> z,
                                   const Vec& x) -> Vec {
    // exp(-i w_j xi (t + i s)) = e^{-i w_j xi t} e^{w_j xi s}, then project
    // back to the unit-sphere representative.
    Vec y = weight_scale(
        x, std::complex<double>(xi[0] * z.imag(), -xi[0] * z.real()), true);
    return Vec(y / y.norm());
  };
  sc.action = std::move(action);

  HermitianTriple triple;
  triple.omega = TwoForm{[](const Vec& x, const Vec& u, const Vec& v) {
    Vec z = x / x.norm();
    return 2.0 * cplx::hdot(cplx::horizontal(z, u), cplx::horizontal(z, v))
                     .imag();
  }};
  triple.J = [](const Vec& x, const Vec& v) -> Vec {
    Vec z = x / x.norm();
    return cplx::times_i(cplx::horizontal(z, v));
  };
  triple.g = [](const Vec& x, const Vec& u, const Vec& v) {
    Vec z = x / x.norm();
    return 2.0 * cplx::hdot(cplx::horizontal(z, u), cplx::horizontal(z, v))
                     .real();
  };
  sc.triple = std::move(triple);

  sc.psi = [w, ncoord](const Vec& x) {
    double num = 0.0;
    for (int j = 0; j < ncoord; ++j) num += w[j] * std::norm(cplx::coord(x, j));
    Vec val(1);
    val[0] = num / x.squaredNorm();
    return val;
  };

  // Fixed components: the coordinate points (weights assumed distinct).
  std::vector<int> order(ncoord);
  for (int j = 0; j < ncoord; ++j) order[j] = j;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return w[a] < w[b]; });
  for (int j = 0; j < ncoord; ++j) {
    Vec rep = Vec::Zero(ambient);
    rep[2 * j] = 1.0;
    std::vector<Vec> isotropy;
    for (int l = 0; l < ncoord; ++l)
      if (l != j) isotropy.push_back(Vec::Constant(1, w[l] - w[j]));
    sc.fixed_components.push_back(
        {"e" + std::to_string(j), rep, Vec::Constant(1, w[j]), isotropy});
  }
  for (int idx : order) sc.critical_values.push_back(Vec::Constant(1, w[idx]));

  sc.base_point = sc.fixed_components[order[0]].representative;
  sc.base_value = Vec::Constant(1, w[order[0]]);
  sc.is_complex = true;
  sc.compact = true;

  sc.sample = [ambient](Rng& rng) { return rng.sphere(ambient); };
  sc.stratum_samplers.push_back(sc.sample);
  // Subvariety samplers: successively kill the lowest-weight coordinates.
  for (int strata = 1; strata < ncoord; ++strata) {
    std::vector<int> kill(order.begin(), order.begin() + strata);
    sc.stratum_samplers.push_back([ambient, kill, ncoord](Rng& rng) -> Vec {
      Vec x = rng.sphere(ambient);
      for (int j : kill) cplx::set_coord(x, j, 0.0);
      double n = x.norm();
      while (n < 1e-6) {
        x = rng.sphere(ambient);
        for (int j : kill) cplx::set_coord(x, j, 0.0);
        n = x.norm();
      }
      return Vec(x / n);
    });
  }
  // Basin label: the lowest weight present in the support.
  sc.basin_oracle = [w, ncoord, order](const Vec& x) -> int {
    for (int rank_pos = 0; rank_pos < ncoord; ++rank_pos) {
      int j = order[rank_pos];
      if (std::abs(cplx::coord(x, j)) > 1e-9) return rank_pos;
    }
    return -1;
  };
  sc.open_stratum_fraction = 0.99;
  sc.notes =
      "carried on the unit sphere with the Hopf phase as internal gauge; "
      "clockwise weighted rotation";
  return sc;
}

// ---------------------------------------------------------------------------
// t2-product: CP^1 x CP^1 carried on S^3 x S^3, rank-2 torus.
// ---------------------------------------------------------------------------
Scenario make_t2_product(const Json&, const Tolerances& tol) {
  Scenario sc;
  sc.name = "t2-product";
  const int ambient = 8;
  sc.manifold = EmbeddedManifold(
      sc.name, ambient, 2,
      [](const Vec& x) {
        Vec c(2);
        c[0] = x.segment(0, 4).squaredNorm() - 1.0;
        c[1] = x.segment(4, 4).squaredNorm() - 1.0;
        return c;
      },
      [](const Vec& x) {
        Mat J = Mat::Zero(2, 8);
        J.block(0, 0, 1, 4) = 2.0 * x.segment(0, 4).transpose();
        J.block(1, 4, 1, 4) = 2.0 * x.segment(4, 4).transpose();
        return J;
      },
      tol);
  auto blk = [](const Vec& x, int b) { return Vec(x.segment(4 * b, 4)); };
  auto put = [](Vec& x, int b, const Vec& v) { x.segment(4 * b, 4) = v; };
  sc.manifold.set_gauge_fields(
      {[blk](const Vec& x) -> Vec {
         Vec out = Vec::Zero(8);
         out.segment(0, 4) = cplx::times_i(blk(x, 0) / blk(x, 0).norm());
         return out;
       },
       [blk](const Vec& x) -> Vec {
         Vec out = Vec::Zero(8);
         out.segment(4, 4) = cplx::times_i(blk(x, 1) / blk(x, 1).norm());
         return out;
       }});

  // Weight (0, 1) on each factor; generator b rotates coordinate 1 of
  // block b clockwise.
  auto gen_block = [blk](const Vec& x, int b) -> Vec {
    Vec z = blk(x, b);
    Vec wz = Vec::Zero(4);
    cplx::set_coord(wz, 1, cplx::coord(z, 1));
    Vec out = Vec::Zero(8);
    out.segment(4 * b, 4) = -cplx::times_i(wz);
    return out;
  };
  GroupActionSpec action;
  action.rank = 2;
  action.generators = {[gen_block](const Vec& x) { return gen_block(x, 0); },
                       [gen_block](const Vec& x) { return gen_block(x, 1); }};
  auto act_block = [blk](const Vec& x, int b, std::complex<double> e,
                         bool shift) -> Vec {
    // weight (0, 1): coordinate exponents are (0, Re e). Removing the
    // largest exponent present in the support keeps arbitrarily long flows
    // finite on the projective representative.
    Vec z = blk(x, b);
    Vec out = z;
    double sh = 0.0;
    if (shift) {
      bool first = true;
      if (std::abs(cplx::coord(z, 0)) > 1e-300) {
        sh = 0.0;
        first = false;
      }
      if (std::abs(cplx::coord(z, 1)) > 1e-300)
        sh = first ? e.real() : std::max(sh, e.real());
    }
    auto z0 = cplx::coord(z, 0), z1 = cplx::coord(z, 1);
    cplx::set_coord(out, 0,
                    std::abs(z0) < 1e-300 ? std::complex<double>(0.0, 0.0)
                                          : std::exp(-sh) * z0);
    cplx::set_coord(out, 1,
                    std::abs(z1) < 1e-300
                        ? std::complex<double>(0.0, 0.0)
                        : std::exp(std::complex<double>(e.real() - sh,
                                                        e.imag())) *
                              z1);
    return out;
  };
  action.act_real = [put, act_block](const Vec& xi, double t,
                                     const Vec& x) -> Vec {
    Vec y = x;
    put(y, 0, act_block(x, 0, std::complex<double>(0, -xi[0] * t), false));
    put(y, 1, act_block(x, 1, std::complex<double>(0, -xi[1] * t), false));
    return y;
  };
  action.act_cplx = [put, act_block](const Vec& xi, std::complex<double> z,
                                     const Vec& x) -> Vec {
    Vec y = x;
    for (int b = 0; b < 2; ++b) {
      Vec zb = act_block(
          x, b, std::complex<double>(xi[b] * z.imag(), -xi[b] * z.real()),
          true);
      put(y, b, Vec(zb / zb.norm()));
    }
    return y;
  };
  sc.action = std::move(action);

  auto hor_block = [blk](const Vec& x, const Vec& v, int b) -> Vec {
    Vec z = blk(x, b);
    z /= z.norm();
    return cplx::horizontal(z, blk(v, b));
  };
  HermitianTriple triple;
  triple.omega = TwoForm{[hor_block](const Vec& x, const Vec& u, const Vec& v) {
    double s = 0.0;
    for (int b = 0; b < 2; ++b)
      s += 2.0 * cplx::hdot(hor_block(x, u, b), hor_block(x, v, b)).imag();
    return s;
  }};
  triple.J = [hor_block](const Vec& x, const Vec& v) -> Vec {
    Vec out(8);
    out.segment(0, 4) = cplx::times_i(hor_block(x, v, 0));
    out.segment(4, 4) = cplx::times_i(hor_block(x, v, 1));
    return out;
  };
  triple.g = [hor_block](const Vec& x, const Vec& u, const Vec& v) {
    double s = 0.0;
    for (int b = 0; b < 2; ++b)
      s += 2.0 * cplx::hdot(hor_block(x, u, b), hor_block(x, v, b)).real();
    return s;
  };
  sc.triple = std::move(triple);

  sc.psi = [blk](const Vec& x) {
    Vec val(2);
    for (int b = 0; b < 2; ++b) {
      Vec z = blk(x, b);
      val[b] = std::norm(cplx::coord(z, 1)) / z.squaredNorm();
    }
    return val;
  };

  auto vertex = [](int i, int j) -> Vec {
    Vec x = Vec::Zero(8);
    x[i == 0 ? 0 : 2] = 1.0;
    x[j == 0 ? 4 : 6] = 1.0;
    return x;
  };
  auto wvec = [](double w1, double w2) {
    Vec v(2);
    v << w1, w2;
    return v;
  };
  sc.fixed_components = {
      {"00", vertex(0, 0), wvec(0, 0), {wvec(1, 0), wvec(0, 1)}},
      {"10", vertex(1, 0), wvec(1, 0), {wvec(-1, 0), wvec(0, 1)}},
      {"01", vertex(0, 1), wvec(0, 1), {wvec(1, 0), wvec(0, -1)}},
      {"11", vertex(1, 1), wvec(1, 1), {wvec(-1, 0), wvec(0, -1)}}};
  sc.critical_values = {wvec(0, 0), wvec(1, 0), wvec(0, 1), wvec(1, 1)};
  sc.base_point = vertex(0, 0);
  sc.base_value = wvec(0, 0);
  sc.is_complex = true;
  sc.compact = true;

  auto sphere_pair = [](Rng& rng) -> Vec {
    Vec x(8);
    x.segment(0, 4) = rng.sphere(4);
    x.segment(4, 4) = rng.sphere(4);
    return x;
  };
  sc.sample = sphere_pair;
  sc.stratum_samplers = {
      sphere_pair,
      [](Rng& rng) -> Vec {  // factor 1 pinned at its vertex e1
        Vec x = Vec::Zero(8);
        x[2] = 1.0;
        x.segment(4, 4) = rng.sphere(4);
        return x;
      },
      [](Rng& rng) -> Vec {
        Vec x = Vec::Zero(8);
        x.segment(0, 4) = rng.sphere(4);
        x[6] = 1.0;
        return x;
      },
      [vertex](Rng&) { return vertex(1, 1); }};
  sc.basin_oracle = [blk](const Vec& x) -> int {
    int b1 = std::abs(cplx::coord(blk(x, 0), 0)) > 1e-9 ? 0 : 1;
    int b2 = std::abs(cplx::coord(blk(x, 1), 0)) > 1e-9 ? 0 : 1;
    // order in critical_values: (0,0), (1,0), (0,1), (1,1)
    if (b1 == 0 && b2 == 0) return 0;
    if (b1 == 1 && b2 == 0) return 1;
    if (b1 == 0 && b2 == 1) return 2;
    return 3;
  };
  sc.open_stratum_fraction = 0.99;
  sc.notes = "product of two weight-(0,1) projective circles";
  return sc;
}

// ---------------------------------------------------------------------------
// toric-c2-quotient (alias hopf-coupling): minimal coupling on S^3 x k*,
// Hopf connection, Fubini-Study base form. psi = -a.
// ---------------------------------------------------------------------------
Scenario make_hopf_coupling(const std::string& name, const Tolerances& tol) {
  Scenario sc;
  sc.name = name;
  const int ambient = 5;  // [z in R^4 | a]
  sc.manifold = EmbeddedManifold(
      name, ambient, 1,
      [](const Vec& x) {
        Vec c(1);
        c[0] = x.segment(0, 4).squaredNorm() - 1.0;
        return c;
      },
      [](const Vec& x) {
        Mat J = Mat::Zero(1, 5);
        J.block(0, 0, 1, 4) = 2.0 * x.segment(0, 4).transpose();
        return J;
      },
      tol);

  auto zblk = [](const Vec& x) { return Vec(x.segment(0, 4)); };

  // Bundle data: left Hopf action with theta(xi_P) = xi.
  PrincipalBundleSpec bundle;
  bundle.total = unit_sphere("hopf-s3", 4, tol);
  bundle.action.rank = 1;
  bundle.action.generators = {[](const Vec& z) { return cplx::times_i(z); }};
  bundle.action.act_real = [](const Vec& xi, double t, const Vec& z) -> Vec {
    return cplx::scale(std::exp(std::complex<double>(0, xi[0] * t)), z);
  };
  bundle.theta = [](const Vec& z, const Vec& v) -> Vec {
    Vec val(1);
    val[0] = cplx::times_i(z).dot(v) / z.squaredNorm();
    return val;
  };
  bundle.sigma = [](const Vec& z, const Vec& u, const Vec& v) {
    Vec zn = z / z.norm();
    return cplx::hdot(cplx::horizontal(zn, u), cplx::horizontal(zn, v)).imag();
  };
  bundle.dtheta = {[](const Vec&, const Vec& u, const Vec& v) {
    return 2.0 * cplx::hdot(u, v).imag();
  }};
  sc.bundle = bundle;

  // Product-space K-action: the bundle action composed with inversion, so
  // -pr_2 is the moment map.
  GroupActionSpec action;
  action.rank = 1;
  action.generators = {[zblk](const Vec& x) -> Vec {
    Vec out = Vec::Zero(5);
    out.segment(0, 4) = -cplx::times_i(zblk(x));
    return out;
  }};
  action.act_real = [zblk](const Vec& xi, double t, const Vec& x) -> Vec {
    Vec y = x;
    y.segment(0, 4) =
        cplx::scale(std::exp(std::complex<double>(0, -xi[0] * t)), zblk(x));
    return y;
  };
  sc.action = std::move(action);

  auto theta1 = [zblk](const Vec& x, const Vec& v) {
    Vec z = zblk(x);
    return cplx::times_i(z).dot(zblk(v)) / z.squaredNorm();
  };
  TwoFormFn omega = [zblk, theta1](const Vec& x, const Vec& u, const Vec& v) {
    const double a = x[4];
    Vec zn = zblk(x) / zblk(x).norm();
    double sigma =
        cplx::hdot(cplx::horizontal(zn, zblk(u)), cplx::horizontal(zn, zblk(v)))
            .imag();
    double datheta = u[4] * theta1(x, v) - v[4] * theta1(x, u) +
                     a * 2.0 * cplx::hdot(zblk(u), zblk(v)).imag();
    return sigma - datheta;
  };
  sc.triple = compatible_triple_from_form(sc.manifold, TwoForm{omega});

  sc.psi = [](const Vec& x) {
    Vec val(1);
    val[0] = -x[4];
    return val;
  };
  sc.base_point = Vec::Zero(5);
  sc.base_point[0] = 1.0;
  sc.base_value = Vec::Zero(1);
  sc.is_complex = true;
  sc.compact = false;
  sc.sample = [tol](Rng& rng) -> Vec {
    Vec x(5);
    x.segment(0, 4) = rng.sphere(4);
    x[4] = rng.uniform(-0.9 * tol.r_slab, 0.9 * tol.r_slab);
    return x;
  };
  sc.stratum_samplers = {sc.sample};
  sc.action.act_cplx =
      ode_complexification(sc.manifold, sc.action, sc.triple->J, tol);
  // Level Psi = p is the slice a = -p; same CP^1 chart as the Hopf base.
  sc.reduced_section = [](double u, double v, const Vec& level) -> Vec {
    const double nrm = std::sqrt(1.0 + u * u + v * v);
    Vec x(5);
    x << 1.0 / nrm, 0.0, u / nrm, v / nrm, -level[0];
    return x;
  };
  sc.level_connection = [zblk](const Vec& x, const Vec& v) -> Vec {
    Vec z = zblk(x);
    Vec val(1);
    val[0] = cplx::times_i(z).dot(zblk(v)) / z.squaredNorm();
    return val;
  };
  sc.notes =
      "omega = pr_1^* sigma - d<pr_2, theta>; the K-action inverts the "
      "principal action, so psi = -pr_2";
  return sc;
}

// ---------------------------------------------------------------------------
// calabi-eckmann scenario wrapper.
// ---------------------------------------------------------------------------
Scenario make_calabi_eckmann(const Json& params, const Tolerances& tol) {
  CalabiEckmannParams p;
  if (params.contains("n")) p.n = params["n"].get<int>();
  if (params.contains("m")) p.m = params["m"].get<int>();
  if (params.contains("tau_re") || params.contains("tau_im")) {
    double re = params.value("tau_re", 0.0);
    double im = params.value("tau_im", 1.0);
    p.tau = {re, im};
  }
  CEStructures ce = ce_structures(p, tol);

  Scenario sc;
  sc.name = "calabi-eckmann";
  sc.manifold = ce.manifold;
  sc.action = ce.action;
  sc.triple = ce.triple;
  sc.psi = ce.psi;
  const CELayout L = ce.layout;
  Vec p0 = Vec::Zero(L.p_dim());
  p0[0] = 1.0;
  Vec q0 = Vec::Zero(L.q_dim());
  q0[0] = 1.0;
  sc.base_point = L.assemble(p0, 0.0, q0, 0.0);
  sc.base_value = Vec::Zero(1);
  sc.is_complex = true;
  sc.compact = false;
  sc.ce = p;
  sc.sample = [L](Rng& rng) -> Vec {
    return L.assemble(rng.sphere(L.p_dim()), rng.uniform(-0.8, 0.8),
                      rng.sphere(L.q_dim()), rng.uniform(-0.8, 0.8));
  };
  sc.stratum_samplers = {sc.sample};
  sc.notes = "noncompact R-action; no convexity or Kempf-Ness suites";
  return sc;
}

}  // namespace

ScenarioCatalog& ScenarioCatalog::instance() {
  static ScenarioCatalog catalog;
  return catalog;
}

void ScenarioCatalog::add(const std::string& name, Factory f) {
  if (factories_.count(name))
    throw Error(ErrorKind::DuplicateName, "scenario already registered: " + name);
  factories_[name] = std::move(f);
}

bool ScenarioCatalog::contains(const std::string& name) const {
  return factories_.count(name) > 0;
}

Scenario ScenarioCatalog::make(const std::string& name, const Json& params,
                               const Tolerances& tol) const {
  auto it = factories_.find(name);
  if (it == factories_.end())
    throw Error(ErrorKind::UnknownScenario, name);
  return it->second(params, tol);
}

std::vector<std::string> ScenarioCatalog::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : factories_) out.push_back(name);
  return out;
}

ScenarioCatalog& register_scenarios() {
  ScenarioCatalog& cat = ScenarioCatalog::instance();
  if (cat.contains("s1-rotation-s2")) return cat;  // idempotent
  cat.add("s1-rotation-s2", make_s1_rotation_s2);
  cat.add("diag-c2", make_diag_c2);
  cat.add("hopf-s3", make_hopf_s3);
  cat.add("torus-cp1", [](const Json&, const Tolerances& tol) {
    return make_weighted_projective("torus-cp1", {0.0, 1.0}, tol);
  });
  cat.add("cp2-weights", [](const Json& params, const Tolerances& tol) {
    std::vector<double> w = {0.0, 1.0, 2.0};
    if (params.contains("weights")) w = params["weights"].get<std::vector<double>>();
    return make_weighted_projective("cp2-weights", w, tol);
  });
  cat.add("t2-product", make_t2_product);
  cat.add("calabi-eckmann", make_calabi_eckmann);
  cat.add("toric-c2-quotient", [](const Json&, const Tolerances& tol) {
    return make_hopf_coupling("toric-c2-quotient", tol);
  });
  cat.add("hopf-coupling", [](const Json&, const Tolerances& tol) {
    return make_hopf_coupling("hopf-coupling", tol);
  });
  return cat;
}

Scenario make_scenario(const std::string& name, const Json& params,
                       const Tolerances& tol) {
  return register_scenarios().make(name, params, tol);
}

CheckReport check_triple_invariants(const Scenario& sc, int n_samples,
                                    Rng& rng, double tol) {
  CheckReport report{"triple_invariants", sc.name, 0, 0.0, tol, false};
  if (!sc.has_triple())
    throw Error(ErrorKind::ConfigError, sc.name + ": no Hermitian triple");
  const auto& T = *sc.triple;
  for (int s = 0; s < n_samples; ++s) {
    Vec x = sc.sample(rng);
    Vec u = random_tangent(sc.manifold, x, rng);
    Vec v = random_tangent(sc.manifold, x, rng);
    double dev = std::abs(T.omega(x, u, v) + T.omega(x, v, u));
    dev = std::max(dev, (T.J(x, T.J(x, u)) + u).norm());
    dev = std::max(dev, std::abs(T.g(x, u, v) - T.g(x, v, u)));
    dev = std::max(dev,
                   std::abs(T.omega(x, T.J(x, u), T.J(x, v)) - T.omega(x, u, v)));
    // positive definiteness on the sampled direction
    if (T.g(x, u, u) <= 0.0) dev = std::max(dev, 1.0);
    report.max_deviation = std::max(report.max_deviation, dev);
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

}  // namespace gmm
