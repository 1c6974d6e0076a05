#pragma once

// Test-only scenario builders and oracles. These stay independent of the
// library paths they are used to check.

#include <cmath>

#include "gmmtk/cplx.hpp"
#include "gmmtk/scenario.hpp"

namespace gmmtest {

using gmm::Mat;
using gmm::Vec;

// Flat R^2 with the counterclockwise rotation, omega = dx ^ dy,
// psi = -|z|^2/2. The smallest closed-form case.
inline gmm::Scenario flat_r2_rotation(const gmm::Tolerances& tol = {}) {
  gmm::Scenario sc;
  sc.name = "flat-r2-rotation";
  sc.manifold = gmm::EmbeddedManifold::flat(2, tol);
  gmm::GroupActionSpec action;
  action.rank = 1;
  action.generators = {[](const Vec& x) {
    Vec v(2);
    v << -x[1], x[0];
    return v;
  }};
  action.act_real = [](const Vec& xi, double t, const Vec& x) -> Vec {
    double c = std::cos(xi[0] * t), s = std::sin(xi[0] * t);
    Vec y(2);
    y << c * x[0] - s * x[1], s * x[0] + c * x[1];
    return y;
  };
  action.act_cplx = [](const Vec& xi, std::complex<double> z,
                       const Vec& x) -> Vec {
    auto w = std::exp(std::complex<double>(-xi[0] * z.imag(), xi[0] * z.real()));
    std::complex<double> p(x[0], x[1]);
    p *= w;
    Vec y(2);
    y << p.real(), p.imag();
    return y;
  };
  sc.action = std::move(action);
  gmm::HermitianTriple triple;
  triple.omega = gmm::TwoForm{[](const Vec&, const Vec& u, const Vec& v) {
    return u[0] * v[1] - u[1] * v[0];
  }};
  triple.J = [](const Vec&, const Vec& v) -> Vec {
    Vec w(2);
    w << -v[1], v[0];
    return w;
  };
  triple.g = [](const Vec&, const Vec& u, const Vec& v) { return u.dot(v); };
  sc.triple = std::move(triple);
  sc.psi = [](const Vec& x) { return Vec(Vec::Constant(1, -0.5 * x.squaredNorm())); };
  sc.base_point = Vec::Zero(2);
  sc.base_value = Vec::Zero(1);
  sc.is_complex = true;
  sc.compact = false;
  sc.sample = [](gmm::Rng& rng) -> Vec {
    Vec x = 0.7 * rng.normal_vector(2);
    while (x.norm() < 0.05) x = 0.7 * rng.normal_vector(2);
    return x;
  };
  sc.stratum_samplers = {sc.sample};
  sc.critical_values = {Vec::Zero(1)};
  return sc;
}

// Rank-2 torus on flat C^2 (coordinatewise rotations), psi = -(|z1|^2,
// |z2|^2)/2. Isotropy and affine-image oracle case.
inline gmm::Scenario t2_on_c2(const gmm::Tolerances& tol = {}) {
  using gmm::cplx::coord;
  using gmm::cplx::set_coord;
  gmm::Scenario sc;
  sc.name = "t2-on-c2";
  sc.manifold = gmm::EmbeddedManifold::flat(4, tol);
  gmm::GroupActionSpec action;
  action.rank = 2;
  action.generators = {[](const Vec& x) -> Vec {
                         Vec v = Vec::Zero(4);
                         set_coord(v, 0, std::complex<double>(0, 1) * coord(x, 0));
                         return v;
                       },
                       [](const Vec& x) -> Vec {
                         Vec v = Vec::Zero(4);
                         set_coord(v, 1, std::complex<double>(0, 1) * coord(x, 1));
                         return v;
                       }};
  action.act_real = [](const Vec& xi, double t, const Vec& x) -> Vec {
    Vec y = x;
    set_coord(y, 0, std::exp(std::complex<double>(0, xi[0] * t)) * coord(x, 0));
    set_coord(y, 1, std::exp(std::complex<double>(0, xi[1] * t)) * coord(x, 1));
    return y;
  };
  action.act_cplx = [](const Vec& xi, std::complex<double> z,
                       const Vec& x) -> Vec {
    Vec y = x;
    for (int j = 0; j < 2; ++j) {
      auto w = std::exp(std::complex<double>(-xi[j] * z.imag(), xi[j] * z.real()));
      set_coord(y, j, w * coord(x, j));
    }
    return y;
  };
  sc.action = std::move(action);
  gmm::HermitianTriple triple;
  triple.omega = gmm::TwoForm{[](const Vec&, const Vec& u, const Vec& v) {
    return gmm::cplx::hdot(u, v).imag();
  }};
  triple.J = [](const Vec&, const Vec& v) -> Vec { return gmm::cplx::times_i(v); };
  triple.g = [](const Vec&, const Vec& u, const Vec& v) { return u.dot(v); };
  sc.triple = std::move(triple);
  sc.psi = [](const Vec& x) {
    Vec val(2);
    val << -0.5 * std::norm(coord(x, 0)), -0.5 * std::norm(coord(x, 1));
    return val;
  };
  sc.base_point = Vec::Zero(4);
  sc.base_value = Vec::Zero(2);
  sc.is_complex = true;
  sc.compact = false;
  sc.sample = [](gmm::Rng& rng) -> Vec {
    Vec x = 0.7 * rng.normal_vector(4);
    while (x.norm() < 0.05) x = 0.7 * rng.normal_vector(4);
    return x;
  };
  sc.stratum_samplers = {sc.sample};
  sc.critical_values = {Vec::Zero(2)};
  return sc;
}

// Flat R^4 with a translation R-action and a level-dependent conformal
// factor: momentumly closed, not closed, and the natural trivialization is
// not good (i_A d omega has a vertical contraction).
inline gmm::Scenario translation_slab(const gmm::Tolerances& tol = {}) {
  gmm::Scenario sc;
  sc.name = "translation-slab";
  sc.manifold = gmm::EmbeddedManifold::flat(4, tol);
  gmm::GroupActionSpec action;
  action.rank = 1;
  action.one_parameter_real = true;
  action.generators = {[](const Vec& x) -> Vec {
    Vec v = Vec::Zero(4);
    v[0] = 1.0;
    return v;
  }};
  action.act_real = [](const Vec& xi, double t, const Vec& x) -> Vec {
    Vec y = x;
    y[0] += xi[0] * t;
    return y;
  };
  sc.action = std::move(action);
  auto factor = [](const Vec& x) { return 1.0 + 0.5 * x[1] * x[2]; };
  gmm::HermitianTriple triple;
  triple.omega = gmm::TwoForm{[factor](const Vec& x, const Vec& u, const Vec& v) {
    return (u[0] * v[1] - u[1] * v[0]) +
           factor(x) * (u[2] * v[3] - u[3] * v[2]);
  }};
  // Compatible data filled in through the polar construction when needed.
  sc.triple = gmm::compatible_triple_from_form(sc.manifold, triple.omega);
  sc.psi = [](const Vec& x) { return Vec(Vec::Constant(1, x[1])); };
  sc.base_point = Vec::Zero(4);
  sc.base_value = Vec::Zero(1);
  sc.is_complex = false;
  sc.compact = false;
  sc.sample = [](gmm::Rng& rng) -> Vec {
    Vec x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform(-0.5, 0.5);
    return x;
  };
  sc.stratum_samplers = {sc.sample};
  sc.critical_values = {};
  return sc;
}

}  // namespace gmmtest
