#include "gmmtk/reduction.hpp"

#include <cmath>

#include "gmmtk/cplx.hpp"
#include "gmmtk/ode.hpp"
#include "gmmtk/quadrature.hpp"

namespace gmm {

namespace {

Vec basis_vector(int k, int i) {
  Vec e = Vec::Zero(k);
  e[i] = 1.0;
  return e;
}

// Newton on the joint system (c(x) = 0, psi(x) = level).
bool newton_to_level(const Scenario& sc, const Vec& level, Vec& x,
                     int max_iter = 60) {
  const EmbeddedManifold& M = sc.manifold;
  const int k = sc.rank();
  const double h = M.tol().h_fd;
  for (int it = 0; it < max_iter; ++it) {
    Vec c = M.constraints(x);
    Vec d = sc.psi(x) - level;
    double res = std::sqrt(c.squaredNorm() + d.squaredNorm());
    if (res <= M.tol().eps_mem) return true;
    Mat J(M.codim() + k, M.ambient_dim());
    J.topRows(M.codim()) = M.constraint_jacobian(x);
    for (int j = 0; j < M.ambient_dim(); ++j) {
      Vec e = Vec::Zero(M.ambient_dim());
      e[j] = h;
      J.bottomRows(k).col(j) = (sc.psi(x + e) - sc.psi(x - e)) / (2 * h);
    }
    Vec rhs(M.codim() + k);
    rhs << c, d;
    Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().minCoeff() <
        M.tol().sigma_min * std::max(1.0, svd.singularValues().maxCoeff()))
      return false;
    x -= svd.solve(rhs);
  }
  return false;
}

}  // namespace

LevelSetSample sample_level_set(const Scenario& sc, const Vec& level, int n,
                                Rng& rng, int max_attempts_per_point) {
  const EmbeddedManifold& M = sc.manifold;
  const int k = sc.rank();
  LevelSetSample out;
  out.level = level;

  int attempts_left = max_attempts_per_point * n;
  while (static_cast<int>(out.points.size()) < n) {
    if (attempts_left-- <= 0)
      throw Error(ErrorKind::SeedExhausted,
                  sc.name + ": could not reach the requested level");
    Vec x = sc.sample(rng);
    if (!newton_to_level(sc, level, x)) continue;

    // Regularity audit: dPsi on the tangent space has full rank k.
    auto [D, Q] = moment_jacobian(sc, sc.psi, x);
    Eigen::JacobiSVD<Mat> svd(D);
    if (svd.singularValues().size() < k ||
        svd.singularValues().minCoeff() < 1e-6)
      throw Error(ErrorKind::NotRegular,
                  sc.name + ": rank drop of dPsi on the level set");

    // Horizontal basis: ker dPsi inside the tangent space, minus the orbit
    // directions, orthonormal in g.
    Mat Kb = kernel_basis(D, 1e-8);  // in tangent-basis coordinates
    Mat level_tangent = Q * Kb;      // ambient columns
    // Remove orbit directions.
    Mat orbit(M.ambient_dim(), k);
    for (int i = 0; i < k; ++i)
      orbit.col(i) = fundamental_field(M, sc.action, basis_vector(k, i),
                                       ManifoldPoint{x, 0.0})
                         .vec;
    auto gdot = [&](const Vec& a, const Vec& b) { return sc.triple->g(x, a, b); };
    std::vector<Vec> H;
    for (int j = 0; j < level_tangent.cols(); ++j) {
      Vec h = level_tangent.col(j);
      for (int i = 0; i < k; ++i) {
        Vec o = orbit.col(i);
        double oo = gdot(o, o);
        if (oo > 1e-18) h -= (gdot(o, h) / oo) * o;
      }
      for (const Vec& prev : H) h -= gdot(prev, h) * prev;
      double nn = std::sqrt(std::max(0.0, gdot(h, h)));
      if (nn > 1e-8) H.push_back(h / nn);
    }
    Mat Hb(M.ambient_dim(), static_cast<int>(H.size()));
    for (int j = 0; j < Hb.cols(); ++j) Hb.col(j) = H[j];
    out.points.push_back(x);
    out.horizontal.push_back(Hb);
  }
  return out;
}

double reduced_form_at(const Scenario& sc, const Vec& point, const Vec& u,
                       const Vec& v) {
  return sc.triple->omega(point, u, v);
}

CheckReport check_reduction_descent(const Scenario& sc,
                                    const LevelSetSample& sample, Rng& rng,
                                    double tol) {
  CheckReport report{"reduction_descent", sc.name, 0, 0.0, tol, false};
  const double h = sc.manifold.tol().h_fd;
  for (size_t i = 0; i < sample.points.size(); ++i) {
    const Vec& x = sample.points[i];
    const Mat& H = sample.horizontal[i];
    if (H.cols() < 2) continue;
    Vec u = H.col(0), v = H.col(1);
    double base = reduced_form_at(sc, x, u, v);
    Vec xi = rng.sphere(sc.rank());
    double t = rng.uniform(-1.0, 1.0);
    Vec y = sc.action.act_real(xi, t, x);
    auto push = [&](const Vec& w) -> Vec {
      Vec xp = project_to_manifold(x + h * w, sc.manifold).coords;
      Vec xm = project_to_manifold(x - h * w, sc.manifold).coords;
      return (sc.action.act_real(xi, t, xp) - sc.action.act_real(xi, t, xm)) /
             (2 * h);
    };
    double moved = reduced_form_at(sc, y, push(u), push(v));
    report.max_deviation = std::max(report.max_deviation, std::abs(moved - base));
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

ReducedComplexReport check_reduced_complex_structure(
    const Scenario& sc, const LevelSetSample& sample, double tol) {
  ReducedComplexReport report;
  report.min_positivity = 1e300;
  report.min_sigma = 1e300;
  for (size_t i = 0; i < sample.points.size(); ++i) {
    const Vec& x = sample.points[i];
    const Mat& H = sample.horizontal[i];
    const int d = static_cast<int>(H.cols());
    if (d == 0) continue;
    Mat P = H * (H.transpose() * H).ldlt().solve(H.transpose());
    Mat Gram(d, d);
    for (int a = 0; a < d; ++a) {
      Vec Jh = sc.triple->J(x, H.col(a));
      report.max_J_leakage =
          std::max(report.max_J_leakage, (Jh - P * Jh).norm());
      report.min_positivity = std::min(
          report.min_positivity, sc.triple->omega(x, H.col(a), Vec(P * Jh)));
      Gram(a, a) = 0.0;
      for (int b = a + 1; b < d; ++b) {
        double w = sc.triple->omega(x, H.col(a), H.col(b));
        Gram(a, b) = w;
        Gram(b, a) = -w;
      }
    }
    Eigen::JacobiSVD<Mat> svd(Gram);
    report.min_sigma =
        std::min(report.min_sigma, svd.singularValues().minCoeff());
    ++report.n_samples;
  }
  report.pass = report.max_J_leakage <= tol && report.min_positivity > 0.0 &&
                report.min_sigma > sc.manifold.tol().sigma_min;
  return report;
}

MinimalCoupling minimal_coupling_form(const PrincipalBundleSpec& bundle,
                                      const Tolerances& tol) {
  const int np = bundle.total.ambient_dim();
  const int k = bundle.action.rank;
  MinimalCoupling mc;

  auto base_constraints = bundle.total;
  mc.product = EmbeddedManifold(
      bundle.total.name() + "-coupling", np + k, bundle.total.codim(),
      [base_constraints, np](const Vec& x) {
        return base_constraints.constraints(x.head(np));
      },
      [base_constraints, np, k](const Vec& x) {
        Mat J = Mat::Zero(base_constraints.codim(), np + k);
        J.leftCols(np) = base_constraints.constraint_jacobian(x.head(np));
        return J;
      },
      tol);

  // The coupled K-action inverts the principal action, so -pr_2 is the
  // moment map.
  GroupActionSpec action;
  action.rank = k;
  for (int i = 0; i < k; ++i) {
    auto gen = bundle.action.generators[i];
    action.generators.push_back([gen, np, k](const Vec& x) -> Vec {
      Vec out = Vec::Zero(np + k);
      out.head(np) = -gen(x.head(np));
      return out;
    });
  }
  auto base_act = bundle.action.act_real;
  action.act_real = [base_act, np, k](const Vec& xi, double t,
                                      const Vec& x) -> Vec {
    Vec y = x;
    y.head(np) = base_act(xi, -t, x.head(np));
    return y;
  };
  mc.action = std::move(action);

  auto theta = bundle.theta;
  auto sigma = bundle.sigma;
  auto dtheta = bundle.dtheta;
  auto total = bundle.total;
  mc.omega = TwoForm{[theta, sigma, dtheta, total, np, k](
                         const Vec& x, const Vec& u, const Vec& v) {
    Vec z = x.head(np);
    Vec uz = u.head(np), vz = v.head(np);
    Vec a = x.tail(k), ua = u.tail(k), va = v.tail(k);
    double val = sigma(z, uz, vz);
    Vec th_u = theta(z, uz), th_v = theta(z, vz);
    // d<pr2, theta> = da_i ^ theta^i + a_i d theta^i
    val -= ua.dot(th_v) - va.dot(th_u);
    for (int i = 0; i < k; ++i) {
      double dth;
      if (!dtheta.empty()) {
        dth = dtheta[i](z, uz, vz);
      } else {
        OneFormFn comp = [theta, i](const Vec& y, const Vec& w) {
          return theta(y, w)[i];
        };
        dth = exterior_derivative_fd(total, comp, z, uz, vz);
      }
      val -= a[i] * dth;
    }
    return val;
  }};
  mc.psi = [np, k](const Vec& x) { return Vec(-x.tail(k)); };
  return mc;
}

CheckReport coupling_nondegenerate_on_slab(const MinimalCoupling& mc,
                                           double r_slab, int n_samples,
                                           Rng& rng, double sigma_floor) {
  CheckReport report{"coupling_nondegenerate", mc.product.name(), 0, 0.0,
                     sigma_floor, false};
  const int np = mc.product.ambient_dim() - mc.action.rank;
  const int k = mc.action.rank;
  double min_sigma = 1e300;
  for (int s = 0; s < n_samples; ++s) {
    Vec x(np + k);
    x.head(np) = rng.sphere(np);  // bundle totals here are unit spheres
    for (int i = 0; i < k; ++i) x[np + i] = rng.uniform(-r_slab, r_slab);
    x = project_to_manifold(x, mc.product).coords;
    Mat Q = tangent_basis(mc.product, x);
    const int d = static_cast<int>(Q.cols());
    Mat Gram(d, d);
    for (int i = 0; i < d; ++i) {
      Gram(i, i) = 0.0;
      for (int j = i + 1; j < d; ++j) {
        double w = mc.omega(x, Q.col(i), Q.col(j));
        Gram(i, j) = w;
        Gram(j, i) = -w;
      }
    }
    Eigen::JacobiSVD<Mat> svd(Gram);
    min_sigma = std::min(min_sigma, svd.singularValues().minCoeff());
    ++report.n_samples;
  }
  report.max_deviation = min_sigma;
  if (min_sigma < sigma_floor)
    throw Error(ErrorKind::SlabTooLarge,
                "coupling form degenerate inside the slab, sigma = " +
                    std::to_string(min_sigma));
  report.pass = true;
  return report;
}

CheckReport check_defining_identity(const EmbeddedManifold& M,
                                    const GroupActionSpec& action,
                                    const TwoForm& omega,
                                    const std::function<Vec(const Vec&)>& psi,
                                    const std::function<Vec(Rng&)>& sample,
                                    int n_samples, Rng& rng, double tol) {
  CheckReport report{"defining_identity", M.name(), 0, 0.0, tol, false};
  const int k = action.rank;
  for (int s = 0; s < n_samples; ++s) {
    Vec x = sample(rng);
    Vec v = random_tangent(M, x, rng);
    for (int i = 0; i < k; ++i) {
      Vec xi = basis_vector(k, i);
      auto f = [&](const Vec& y) { return psi(y)[i]; };
      double lhs = exterior_derivative_fd(M, ZeroFormFn(f), x, v);
      Vec fm = fundamental_field(M, action, xi, ManifoldPoint{x, 0.0}).vec;
      double rhs = omega(x, fm, v);
      report.max_deviation =
          std::max(report.max_deviation, std::abs(lhs - rhs));
    }
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

GoodTrivializationReport good_trivialization_check(
    const Scenario& sc, const std::vector<Vec>& level_grid, int n_per_level,
    Rng& rng, double tol) {
  GoodTrivializationReport report;
  report.tolerance = tol;
  const int k = sc.rank();
  const EmbeddedManifold& M = sc.manifold;
  TwoFormFn om = sc.triple->omega.eval;

  for (const Vec& level : level_grid) {
    LevelSetSample sample = sample_level_set(sc, level, n_per_level, rng);
    double level_max = 0.0;
    for (const Vec& x : sample.points) {
      // H = J k: lifts solve dPsi(lift) = A inside span{J xi_M}.
      Mat JK(M.ambient_dim(), k);
      for (int i = 0; i < k; ++i)
        JK.col(i) = sc.triple->J(
            x, fundamental_field(M, sc.action, basis_vector(k, i),
                                 ManifoldPoint{x, 0.0})
                   .vec);
      auto [D, Q] = moment_jacobian(sc, sc.psi, x);
      Mat dPsiJK(k, k);  // dPsi applied to the J k directions
      for (int i = 0; i < k; ++i)
        dPsiJK.col(i) = D * (Q.transpose() * JK.col(i));
      // Vertical directions: tangent kernel of dPsi.
      Mat Kb = kernel_basis(D, 1e-8);
      Mat vert = Q * Kb;
      Mat Qt = tangent_basis(M, x);
      for (int a = 0; a < k; ++a) {
        Vec lift = JK * dPsiJK.colPivHouseholderQr().solve(basis_vector(k, a));
        for (int iv = 0; iv < vert.cols(); ++iv)
          for (int j = 0; j < Qt.cols(); ++j) {
            double val = exterior_derivative_fd(M, om, x, lift,
                                                Vec(vert.col(iv)),
                                                Vec(Qt.col(j)));
            level_max = std::max(level_max, std::abs(val));
          }
      }
    }
    report.levels.push_back(level);
    report.max_values.push_back(level_max);
    report.overall_max = std::max(report.overall_max, level_max);
  }
  report.pass = report.overall_max <= tol;
  return report;
}

namespace {

// Integral of a chart two-form over the plane via the tan substitution
// w = tan(theta) e^{i phi}. Gauss-Legendre in theta; the periodic phi
// direction uses the (spectrally accurate) midpoint rule.
double chart_integral(const std::function<double(double, double)>& density) {
  const int n_theta = 48, n_phi = 64;
  std::vector<double> gl_nodes, gl_weights;
  gauss_legendre(n_theta, gl_nodes, gl_weights);
  double total = 0.0;
  for (int it = 0; it < n_theta; ++it) {
    double th = 0.25 * M_PI * (gl_nodes[it] + 1.0);
    double wth = 0.25 * M_PI * gl_weights[it];
    double w = std::tan(th);
    double jac = (1.0 + w * w);  // d|w| = sec^2 dtheta
    for (int ip = 0; ip < n_phi; ++ip) {
      double ph = (ip + 0.5) * (2.0 * M_PI) / n_phi;
      double u = w * std::cos(ph), v = w * std::sin(ph);
      total += density(u, v) * w * jac * wth * (2.0 * M_PI / n_phi);
    }
  }
  return total;
}

}  // namespace

DHReport dh_variation(const Scenario& sc, const std::vector<double>& p_grid,
                      double fit_tol, double slope_rel_tol) {
  if (p_grid.size() < 2)
    throw Error(ErrorKind::FitResidualTooLarge,
                "dh fit needs at least two levels");
  if (!sc.reduced_section || !sc.level_connection)
    throw Error(ErrorKind::ConfigError,
                sc.name + ": no reduced chart registered");
  DHReport report;
  const double h = 1e-6;

  auto section_tangents = [&](double u, double v, const Vec& level, Vec& su,
                              Vec& sv) {
    su = (sc.reduced_section(u + h, v, level) -
          sc.reduced_section(u - h, v, level)) /
         (2 * h);
    sv = (sc.reduced_section(u, v + h, level) -
          sc.reduced_section(u, v - h, level)) /
         (2 * h);
  };

  for (double p : p_grid) {
    Vec level = Vec::Constant(1, p);
    auto density = [&](double u, double v) {
      Vec su, sv;
      section_tangents(u, v, level, su, sv);
      Vec x = sc.reduced_section(u, v, level);
      return sc.triple->omega(x, su, sv);
    };
    report.levels.push_back(p);
    report.integrals.push_back(chart_integral(density));
  }

  // Least squares line A = slope * p + intercept.
  const int n = static_cast<int>(p_grid.size());
  double sp = 0, sa = 0, spp = 0, spa = 0;
  for (int i = 0; i < n; ++i) {
    sp += report.levels[i];
    sa += report.integrals[i];
    spp += report.levels[i] * report.levels[i];
    spa += report.levels[i] * report.integrals[i];
  }
  double det = n * spp - sp * sp;
  if (std::abs(det) < 1e-14)
    throw Error(ErrorKind::FitResidualTooLarge, "degenerate level grid");
  report.slope = (n * spa - sp * sa) / det;
  report.intercept = (sa * spp - sp * spa) / det;
  double resid = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    double fit = report.slope * report.levels[i] + report.intercept;
    resid = std::max(resid, std::abs(fit - report.integrals[i]));
    scale = std::max(scale, std::abs(report.integrals[i]));
  }
  report.rel_residual = resid / std::max(scale, 1e-30);

  // Curvature-integral degree on the middle level.
  Vec level = Vec::Constant(1, report.levels[n / 2]);
  auto theta_pull = [&](double u, double v, int comp, int dir) {
    Vec su, sv;
    section_tangents(u, v, level, su, sv);
    Vec x = sc.reduced_section(u, v, level);
    return sc.level_connection(x, dir == 0 ? su : sv)[comp];
  };
  auto curvature_density = [&](double u, double v) {
    // d(s^* theta) = d_u theta_v - d_v theta_u on the flat chart
    double duv = (theta_pull(u + h, v, 0, 1) - theta_pull(u - h, v, 0, 1)) /
                 (2 * h);
    double dvu = (theta_pull(u, v + h, 0, 0) - theta_pull(u, v - h, 0, 0)) /
                 (2 * h);
    return duv - dvu;
  };
  report.degree = chart_integral(curvature_density) / (2.0 * M_PI);

  const double expected = 2.0 * M_PI * std::abs(report.degree);
  report.slope_vs_degree = expected > 1e-12
                               ? std::abs(std::abs(report.slope) - expected) /
                                     expected
                               : std::abs(report.slope);
  if (report.rel_residual > fit_tol)
    throw Error(ErrorKind::FitResidualTooLarge,
                "dh fit residual " + std::to_string(report.rel_residual));
  report.pass = report.rel_residual <= fit_tol &&
                (expected > 1e-12 ? report.slope_vs_degree <= slope_rel_tol
                                  : std::abs(report.slope) <= slope_rel_tol);
  return report;
}

MoserReport moser_flow(const EmbeddedManifold& M, const GroupActionSpec& action,
                       const TwoFormFn& omega0, const TwoFormFn& omega1,
                       double radius, int n_samples, Rng& rng, double tol) {
  const int n = M.ambient_dim();
  if (M.has_constraints())
    throw Error(ErrorKind::ConfigError, "moser chart must be linear");

  // Forms must agree at the chart origin.
  Vec zero = Vec::Zero(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
      ei[i] = 1;
      ej[j] = 1;
      if (std::abs(omega0(zero, ei, ej) - omega1(zero, ei, ej)) > 1e-10)
        throw Error(ErrorKind::ConfigError, "forms differ at the fixed point");
    }

  // beta_x(v) = int_0^1 (omega1 - omega0)(s x; x, s v) ds.
  auto beta = [&](const Vec& x, const Vec& v) {
    auto f = [&](double s) {
      Vec sx = s * x;
      return omega1(sx, x, s * v) - omega0(sx, x, s * v);
    };
    return integrate_adaptive(f, 0.0, 1.0, 1e-12);
  };

  // Time-dependent Moser field R_t solving i_{R_t} omega_t + beta = 0.
  auto moser_field = [&](double t, const Vec& x) -> Vec {
    Mat Gram(n, n);
    for (int i = 0; i < n; ++i) {
      Gram(i, i) = 0.0;
      for (int j = i + 1; j < n; ++j) {
        Vec ei = Vec::Zero(n), ej = Vec::Zero(n);
        ei[i] = 1;
        ej[j] = 1;
        double w = (1.0 - t) * omega0(x, ei, ej) + t * omega1(x, ei, ej);
        Gram(i, j) = w;
        Gram(j, i) = -w;
      }
    }
    Vec b(n);
    for (int i = 0; i < n; ++i) {
      Vec ei = Vec::Zero(n);
      ei[i] = 1;
      b[i] = beta(x, ei);
    }
    Eigen::JacobiSVD<Mat> svd(Gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().minCoeff() < M.tol().sigma_min)
      throw Error(ErrorKind::DegenerateInterpolation,
                  "omega_t lost rank inside the working radius");
    // i_R omega(e_j) = (Gram^T R)_j = -(Gram R)_j, so Gram R = beta.
    return svd.solve(b);
  };

  // Time-one map by the augmented autonomous system (x, t).
  EmbeddedManifold flat_aug = EmbeddedManifold::flat(n + 1, M.tol());
  auto phi = [&](const Vec& x0) -> Vec {
    Vec y0(n + 1);
    y0 << x0, 0.0;
    auto field = [&](const Vec& y) -> Vec {
      Vec out(n + 1);
      out.head(n) = moser_field(std::clamp(y[n], 0.0, 1.0), y.head(n));
      out[n] = 1.0;
      return out;
    };
    OdeOptions opts;
    opts.rtol = 1e-11;
    opts.atol = 1e-13;
    auto res = integrate_ode(flat_aug, field, y0, 1.0, opts);
    return res.samples.back().x.head(n);
  };

  MoserReport report;
  report.radius = radius;
  const double h = 1e-6;
  for (int s = 0; s < n_samples; ++s) {
    Vec x = radius * std::pow(rng.uniform(), 1.0 / n) * rng.sphere(n);
    Vec fx = phi(x);
    // d phi by central differences of the flow map.
    Mat Dphi(n, n);
    for (int j = 0; j < n; ++j) {
      Vec e = Vec::Zero(n);
      e[j] = h;
      Dphi.col(j) = (phi(x + e) - phi(x - e)) / (2 * h);
    }
    for (int g = 0; g < action.rank; ++g) {
      Vec xi_m = action.generators[g](x);
      Vec v = rng.sphere(n);
      double lhs = omega0(x, xi_m, v);
      double rhs = omega1(fx, Dphi * xi_m, Dphi * v);
      report.max_identity_dev =
          std::max(report.max_identity_dev, std::abs(lhs - rhs));
    }
    ++report.n_samples;
  }
  report.pass = report.max_identity_dev <= tol;
  return report;
}

QuotientReport quotient_scenario_check(int n_points, Rng& rng, double tol,
                                       const Tolerances& tols) {
  Scenario sc = make_scenario("toric-c2-quotient", Json::object(), tols);
  QuotientReport report;

  Vec level = Vec::Zero(1);
  LevelSetSample sample = sample_level_set(sc, level, n_points, rng);
  report.n_samples = static_cast<int>(sample.points.size());
  report.reduced_dim =
      sample.horizontal.empty() ? 0 : static_cast<int>(sample.horizontal[0].cols());

  // Chart transfer: w = z_1 / z_0 (complex); reduced data must match the
  // Fubini-Study chart values.
  auto chart_push = [](const Vec& x, const Vec& u) -> std::complex<double> {
    std::complex<double> z0 = cplx::coord(x, 0), z1 = cplx::coord(x, 1);
    std::complex<double> u0 = cplx::coord(u, 0), u1 = cplx::coord(u, 1);
    return (u1 * z0 - z1 * u0) / (z0 * z0);
  };
  auto fs_chart = [](std::complex<double> w, std::complex<double> du,
                     std::complex<double> dv) {
    double denom = 1.0 + std::norm(w);
    return (std::conj(du) * dv).imag() / (denom * denom);
  };

  for (size_t i = 0; i < sample.points.size(); ++i) {
    const Vec& x = sample.points[i];
    if (std::abs(cplx::coord(x, 0)) < 0.15) continue;  // stay in the chart
    const Mat& H = sample.horizontal[i];
    if (H.cols() != 2) continue;
    std::complex<double> w =
        cplx::coord(x, 1) / cplx::coord(x, 0);
    Vec h1 = H.col(0), h2 = H.col(1);

    double red = reduced_form_at(sc, x, h1, h2);
    double chart = fs_chart(w, chart_push(x, h1), chart_push(x, h2));
    report.max_form_dev =
        std::max(report.max_form_dev, std::abs(red - chart));

    Vec Jh = sc.triple->J(x, h1);
    std::complex<double> lhs = chart_push(x, Jh);
    std::complex<double> rhs =
        std::complex<double>(0, 1) * chart_push(x, h1);
    report.max_J_dev = std::max(report.max_J_dev, std::abs(lhs - rhs));
  }

  // Total reduced area against the base-form normalization.
  auto density = [&](double u, double v) {
    const double h = 1e-6;
    Vec su = (sc.reduced_section(u + h, v, level) -
              sc.reduced_section(u - h, v, level)) /
             (2 * h);
    Vec sv = (sc.reduced_section(u, v + h, level) -
              sc.reduced_section(u, v - h, level)) /
             (2 * h);
    Vec x = sc.reduced_section(u, v, level);
    return sc.triple->omega(x, su, sv);
  };
  report.area = chart_integral(density);
  report.area_expected = M_PI;  // base form normalized to total area pi
  report.pass = report.max_form_dev <= tol && report.max_J_dev <= tol &&
                std::abs(report.area - report.area_expected) <= 1e-4 &&
                report.reduced_dim == 2;
  return report;
}

}  // namespace gmm
