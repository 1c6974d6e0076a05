#include "gmmtk/moment.hpp"

#include <cmath>

#include "gmmtk/quadrature.hpp"

namespace gmm {

namespace {

// i_{xi_M} omega as a one-form evaluator.
OneFormFn contraction_form(const Scenario& sc, const Vec& xi) {
  const auto& omega = sc.triple->omega;
  const EmbeddedManifold& M = sc.manifold;
  const GroupActionSpec& action = sc.action;
  return [&M, &action, omega, xi](const Vec& x, const Vec& v) {
    ManifoldPoint m{x, 0.0};
    Vec f = fundamental_field(M, action, xi, m).vec;
    return omega(x, f, v);
  };
}

Vec basis_vector(int k, int i) {
  Vec e = Vec::Zero(k);
  e[i] = 1.0;
  return e;
}

}  // namespace

CheckReport check_momentumly_closed(const Scenario& sc, int n_samples,
                                    Rng& rng, double tol) {
  CheckReport report{"momentumly_closed", sc.name, 0, 0.0, tol, false};
  const int k = sc.rank();
  for (int s = 0; s < n_samples; ++s) {
    Vec x = sc.sample(rng);
    Vec u = random_tangent(sc.manifold, x, rng);
    Vec v = random_tangent(sc.manifold, x, rng);
    for (int i = 0; i < k; ++i) {
      OneFormFn alpha = contraction_form(sc, basis_vector(k, i));
      double d = exterior_derivative_fd(sc.manifold, alpha, x, u, v);
      report.max_deviation = std::max(report.max_deviation, std::abs(d));
    }
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

CheckReport check_equivariant_closedness_nu(const Scenario& sc, int n_samples,
                                            Rng& rng, double tol) {
  // (D nu_omega)(xi) = d(i_{xi_M} omega) - i_{xi_M} i_{xi_M} omega; the
  // double contraction must vanish by antisymmetry, the rest reproduces the
  // momentumly-closed data.
  CheckReport report = check_momentumly_closed(sc, n_samples, rng, tol);
  report.check = "equivariantly_closed_nu";
  const int k = sc.rank();
  for (int s = 0; s < std::min(n_samples, 64); ++s) {
    Vec x = sc.sample(rng);
    for (int i = 0; i < k; ++i) {
      Vec xi = basis_vector(k, i);
      Vec f = fundamental_field(sc.manifold, sc.action, xi,
                                ManifoldPoint{x, 0.0})
                  .vec;
      double self = std::abs(sc.triple->omega(x, f, f));
      report.max_deviation = std::max(report.max_deviation, self);
    }
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

MomentMapEvaluator moment_from_form(const Scenario& sc, const Vec& base_point,
                                    const Vec& base_value, int n_loops,
                                    Rng& rng) {
  const int k = sc.rank();
  const EmbeddedManifold& M = sc.manifold;
  // The chord derivatives are finite-differenced, so refining the path
  // quadrature below their noise floor only burns evaluations.
  const double quad_tol = std::max(M.tol().quad_tol, 1e-9);

  // Loop audit first: exactness of every contraction over random triangles.
  for (int loop = 0; loop < n_loops; ++loop) {
    std::vector<Vec> pts = {sc.sample(rng), sc.sample(rng), sc.sample(rng)};
    for (int i = 0; i < k; ++i) {
      OneFormFn alpha = contraction_form(sc, basis_vector(k, i));
      double circ = loop_integral(M, alpha, pts, quad_tol);
      if (std::abs(circ) > M.tol().tol_loop)
        throw Error(ErrorKind::LoopHolonomy,
                    sc.name + ": loop integral " + std::to_string(circ));
    }
  }

  ManifoldPoint base = project_to_manifold(base_point, M);
  // Capture what the evaluator needs by value.
  auto scenario = std::make_shared<Scenario>(sc);
  Vec base_coords = base.coords;
  Vec bval = base_value;

  MomentMapEvaluator ev;
  ev.provenance = MomentMapEvaluator::Provenance::PathIntegral;
  ev.base_point = base_coords;
  ev.base_value = bval;
  ev.psi = [scenario, base_coords, bval, k, quad_tol](const Vec& x) -> Vec {
    Vec out(k);
    for (int i = 0; i < k; ++i) {
      OneFormFn alpha = contraction_form(*scenario, basis_vector(k, i));
      out[i] = bval[i] + line_integral(scenario->manifold, alpha, base_coords,
                                       x, quad_tol);
    }
    return out;
  };
  return ev;
}

CheckReport check_gradient_identity(const Scenario& sc,
                                    const MomentMapEvaluator& psi,
                                    int n_samples, Rng& rng, double tol) {
  CheckReport report{"gradient_identity", sc.name, 0, 0.0, tol, false};
  const int k = sc.rank();
  const EmbeddedManifold& M = sc.manifold;
  for (int s = 0; s < n_samples; ++s) {
    Vec x = sc.sample(rng);
    Mat Q = tangent_basis(M, x);
    const int d = static_cast<int>(Q.cols());
    // Gram matrix and dPsi^xi in the tangent basis.
    Mat G(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        G(i, j) = sc.triple->g(x, Q.col(i), Q.col(j));
        G(j, i) = G(i, j);
      }
    for (int c = 0; c < k; ++c) {
      Vec xi = basis_vector(k, c);
      Vec dpsi(d);
      for (int i = 0; i < d; ++i) {
        auto f = [&](const Vec& y) { return psi.psi(y)[c] * 1.0; };
        dpsi[i] = exterior_derivative_fd(M, f, x, Q.col(i));
      }
      Vec grad = Q * G.ldlt().solve(dpsi);
      Vec rhs = sc.triple->J(
          x, fundamental_field(M, sc.action, xi, ManifoldPoint{x, 0.0}).vec);
      report.max_deviation =
          std::max(report.max_deviation, (grad - rhs).norm());
    }
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

std::pair<Mat, Mat> moment_jacobian(const Scenario& sc,
                                    const std::function<Vec(const Vec&)>& psi,
                                    const Vec& x) {
  const EmbeddedManifold& M = sc.manifold;
  Mat Q = tangent_basis(M, x);
  const int d = static_cast<int>(Q.cols());
  const int k = sc.rank();
  const double h = M.tol().h_fd;
  Mat D(k, d);
  for (int j = 0; j < d; ++j) {
    Vec xp = project_to_manifold(x + h * Q.col(j), M).coords;
    Vec xm = project_to_manifold(x - h * Q.col(j), M).coords;
    D.col(j) = (psi(xp) - psi(xm)) / (2 * h);
  }
  return {D, Q};
}

DifferentialImageReport moment_differential_image(const Scenario& sc,
                                                  const MomentMapEvaluator& psi,
                                                  const ManifoldPoint& m,
                                                  double tol_angle) {
  auto [D, Q] = moment_jacobian(sc, psi.psi, m.coords);
  const int k = sc.rank();

  IsotropyData iso =
      isotropy_algebra(sc.manifold, sc.action, m, sc.manifold.tol().iso_rel);
  const int dim_km = static_cast<int>(iso.algebra_basis.cols());

  Eigen::JacobiSVD<Mat> svd(D, Eigen::ComputeFullU);
  Vec s = Vec::Zero(k);
  s.head(svd.singularValues().size()) = svd.singularValues();
  const double smax = std::max(s.size() ? s[0] : 0.0, 1e-30);

  // Rank at a threshold well above fd noise; flag borderline spectra.
  const double thresh = 1e-6 * std::max(smax, 1.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > thresh) ++rank;

  DifferentialImageReport report;
  report.rank = rank;
  report.expected_rank = k - dim_km;
  if (rank > 0 && rank < s.size())
    report.singular_gap = s[rank - 1] / std::max(s[rank], 1e-300);
  else
    report.singular_gap = 1e300;
  if (report.singular_gap < 10.0)
    throw Error(ErrorKind::BorderlineRank,
                "singular value gap " + std::to_string(report.singular_gap));

  Mat image = svd.matrixU().leftCols(rank);
  auto angles = principal_angles(image, iso.annihilator_basis);
  report.max_principal_angle = angles.empty() ? 0.0 : angles.back();
  report.pass = (report.rank == report.expected_rank) &&
                report.max_principal_angle <= tol_angle;
  return report;
}

CheckReport check_affine_image_on_stratum(const Scenario& sc,
                                          const MomentMapEvaluator& psi,
                                          const std::vector<Vec>& points,
                                          double tol) {
  CheckReport report{"affine_image_on_stratum", sc.name, 0, 0.0, tol, false};
  if (points.empty()) return report;
  IsotropyData iso =
      isotropy_algebra(sc.manifold, sc.action,
                       ManifoldPoint{points.front(), 0.0},
                       sc.manifold.tol().iso_rel);
  Mat H = iso.algebra_basis;  // k x dim(h)
  Vec mean = Vec::Zero(sc.rank());
  std::vector<Vec> values;
  for (const Vec& x : points) values.push_back(psi.psi(x));
  for (const Vec& v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (const Vec& v : values) {
    // Residual off the affine subspace mean + annihilator(h): the component
    // along h itself must be constant.
    Vec dev = H.transpose() * (v - mean);
    report.max_deviation = std::max(report.max_deviation, dev.norm());
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

CheckReport check_domega_on_orbits(const Scenario& sc, int n_samples, Rng& rng,
                                   double tol) {
  CheckReport report{"domega_on_orbits", sc.name, 0, 0.0, tol, false};
  const int k = sc.rank();
  const EmbeddedManifold& M = sc.manifold;
  TwoFormFn om = sc.triple->omega.eval;
  for (int s = 0; s < n_samples; ++s) {
    Vec x = sc.sample(rng);
    ManifoldPoint m{x, 0.0};
    std::vector<Vec> dirs;
    for (int i = 0; i < k; ++i) {
      Vec f = fundamental_field(M, sc.action, basis_vector(k, i), m).vec;
      dirs.push_back(f);
      if (sc.is_complex) dirs.push_back(sc.triple->J(x, f));
    }
    const int nd = static_cast<int>(dirs.size());
    for (int a = 0; a < nd; ++a)
      for (int b = a + 1; b < nd; ++b)
        for (int c = b + 1; c < nd; ++c) {
          double val =
              exterior_derivative_fd(M, om, x, dirs[a], dirs[b], dirs[c]);
          report.max_deviation = std::max(report.max_deviation, std::abs(val));
        }
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

}  // namespace gmm
