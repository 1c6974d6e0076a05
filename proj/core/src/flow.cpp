#include "gmmtk/flow.hpp"

#include <cmath>

#include "gmmtk/ode.hpp"

namespace gmm {

namespace {

// The descent direction -grad of the chosen functional, via
// grad Psi^xi = J xi_M. The norm-square flow is integrated in reparametrized
// time: the field is divided by max(|psi|, floor), which leaves every
// integral curve and limit unchanged but restores exponential convergence
// at minima where psi vanishes quadratically (otherwise the flow stalls
// polynomially and never meets the gradient threshold).
constexpr double kPsiRescaleFloor = 1e-4;

std::function<Vec(const Vec&)> descent_field(const Scenario& sc,
                                             const FlowFunctional& fn,
                                             bool rescaled) {
  const EmbeddedManifold* M = &sc.manifold;
  const GroupActionSpec* action = &sc.action;
  auto J = sc.triple->J;
  auto psi = sc.psi;
  if (fn.kind == FlowFunctional::Kind::PsiXi) {
    Vec xi = fn.xi;
    return [M, action, J, xi](const Vec& x) -> Vec {
      Vec f = fundamental_field(*M, *action, xi, ManifoldPoint{x, 0.0}).vec;
      return Vec(-J(x, f));
    };
  }
  return [M, action, J, psi, rescaled](const Vec& x) -> Vec {
    Vec lam = psi(x);
    Vec f = fundamental_field(*M, *action, lam, ManifoldPoint{x, 0.0}).vec;
    Vec grad = J(x, f);
    if (rescaled) grad /= std::max(lam.norm(), kPsiRescaleFloor);
    return Vec(-grad);
  };
}

double functional_value(const Scenario& sc, const FlowFunctional& fn,
                        const Vec& x) {
  Vec p = sc.psi(x);
  if (fn.kind == FlowFunctional::Kind::PsiXi) return p.dot(fn.xi);
  return 0.5 * p.squaredNorm();
}

}  // namespace

Trajectory integrate_negative_gradient(const Scenario& sc,
                                       const FlowFunctional& fn, const Vec& x0,
                                       const FlowOptions& opts) {
  auto field = descent_field(sc, fn, /*rescaled=*/true);
  auto true_grad = descent_field(sc, fn, /*rescaled=*/false);
  auto gnorm = [&](const Vec& x) {
    Vec f = true_grad(x);
    return std::sqrt(std::max(0.0, sc.triple->g(x, f, f)));
  };

  Trajectory traj;
  Vec start = sc.manifold.has_constraints()
                  ? project_to_manifold(x0, sc.manifold).coords
                  : x0;
  int streak = 0;
  auto record = [&](double t, const Vec& x) {
    traj.times.push_back(t);
    traj.points.push_back(x);
    traj.f_values.push_back(functional_value(sc, fn, x));
    traj.grad_norms.push_back(gnorm(x));
  };
  record(0.0, start);
  if (traj.grad_norms.back() <= opts.eps_crit) {
    traj.converged = true;
    traj.terminal_grad_norm = traj.grad_norms.back();
    return traj;
  }

  OdeOptions ode;
  ode.rtol = opts.rtol;
  ode.atol = opts.atol;
  ode.h_max = 10.0;
  auto stop = [&](double t, const Vec& x) {
    record(t, x);
    if (traj.grad_norms.back() <= opts.eps_crit)
      ++streak;
    else
      streak = 0;
    return streak >= opts.window;
  };
  auto res = integrate_ode(sc.manifold, field, start, opts.t_max, ode, stop);
  traj.converged = res.stopped_by_callback;
  traj.terminal_grad_norm = traj.grad_norms.back();

  if (opts.max_samples > 0 &&
      static_cast<int>(traj.times.size()) > opts.max_samples) {
    // Thin uniformly but keep endpoints.
    Trajectory thin;
    const int n = static_cast<int>(traj.times.size());
    for (int i = 0; i < opts.max_samples; ++i) {
      int idx = static_cast<int>(
          std::llround(static_cast<double>(i) * (n - 1) / (opts.max_samples - 1)));
      thin.times.push_back(traj.times[idx]);
      thin.points.push_back(traj.points[idx]);
      thin.f_values.push_back(traj.f_values[idx]);
      thin.grad_norms.push_back(traj.grad_norms[idx]);
    }
    thin.converged = traj.converged;
    thin.terminal_grad_norm = traj.terminal_grad_norm;
    return thin;
  }
  return traj;
}

StratumLabel stratum_label(const Scenario& sc, const Vec& x0,
                           const FlowOptions& opts) {
  Trajectory traj =
      integrate_negative_gradient(sc, FlowFunctional::norm_square(), x0, opts);
  if (!traj.converged)
    throw Error(ErrorKind::Unconverged,
                sc.name + ": flow did not settle before t_max");
  StratumLabel label;
  label.limit_point = ManifoldPoint{traj.limit(), 0.0};
  label.lambda = sc.psi(traj.limit());
  label.norm = label.lambda.norm();
  return label;
}

int label_index(const Scenario& sc, const Vec& lambda, double r_cluster) {
  int best = -1;
  double best_dist = 3.0 * r_cluster;
  for (int i = 0; i < static_cast<int>(sc.critical_values.size()); ++i) {
    double d = (sc.critical_values[i] - lambda).norm();
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  return best;
}

CriticalValueSet enumerate_critical_values(const Scenario& sc,
                                           int seeds_per_stratum, Rng& rng,
                                           const FlowOptions& opts) {
  const double r = sc.manifold.tol().r_cluster;
  CriticalValueSet out;
  std::vector<Vec> sums;
  for (const auto& sampler : sc.stratum_samplers) {
    for (int s = 0; s < seeds_per_stratum; ++s) {
      Vec x = sampler(rng);
      Trajectory traj = integrate_negative_gradient(
          sc, FlowFunctional::norm_square(), x, opts);
      if (!traj.converged) {
        ++out.unconverged;
        continue;
      }
      Vec lam = sc.psi(traj.limit());
      int hit = -1;
      for (int i = 0; i < static_cast<int>(out.values.size()); ++i)
        if ((out.values[i] - lam).norm() <= r) {
          hit = i;
          break;
        }
      if (hit < 0) {
        out.values.push_back(lam);
        sums.push_back(lam);
        out.counts.push_back(1);
      } else {
        sums[hit] += lam;
        ++out.counts[hit];
        out.values[hit] = sums[hit] / out.counts[hit];
      }
    }
  }
  out.min_center_gap = 1e300;
  for (size_t i = 0; i < out.values.size(); ++i)
    for (size_t j = i + 1; j < out.values.size(); ++j)
      out.min_center_gap =
          std::min(out.min_center_gap, (out.values[i] - out.values[j]).norm());
  if (out.values.size() > 1 && out.min_center_gap < 3.0 * r)
    throw Error(ErrorKind::ClusterAmbiguity,
                "cluster gap " + std::to_string(out.min_center_gap));
  return out;
}

CriticalReport hessian_index(const Scenario& sc, const FlowFunctional& fn,
                             const ManifoldPoint& m) {
  const EmbeddedManifold& M = sc.manifold;
  const double h = M.tol().h_hess;
  const double eps_eig = M.tol().eps_eig;
  Mat Q = tangent_basis(M, m.coords);
  const int d = static_cast<int>(Q.cols());
  auto value = [&](const Vec& x) { return functional_value(sc, fn, x); };
  auto at = [&](const Vec& dir) {
    return value(project_to_manifold(m.coords + dir, M).coords);
  };
  Mat H(d, d);
  const double f0 = value(m.coords);
  for (int i = 0; i < d; ++i) {
    H(i, i) = (at(h * Q.col(i)) - 2.0 * f0 + at(-h * Q.col(i))) / (h * h);
    for (int j = i + 1; j < d; ++j) {
      double v = (at(h * (Q.col(i) + Q.col(j))) - at(h * (Q.col(i) - Q.col(j))) -
                  at(h * (Q.col(j) - Q.col(i))) + at(-h * (Q.col(i) + Q.col(j)))) /
                 (4.0 * h * h);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  // Hessian with respect to g: solve G^{-1} H for inertia. Index is a
  // g-independent count, so use the pencil (H, G).
  Mat G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      G(i, j) = sc.triple->g(m.coords, Q.col(i), Q.col(j));
      G(j, i) = G(i, j);
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(H, G);

  CriticalReport report;
  report.point = m;
  for (int i = 0; i < d; ++i) {
    double ev = es.eigenvalues()[i];
    report.eigenvalues.push_back(ev);
    if (ev < -eps_eig) ++report.hessian_index;
    if (ev > -eps_eig && ev < -0.1 * eps_eig)
      throw Error(ErrorKind::SpectralGapTooSmall,
                  "eigenvalue " + std::to_string(ev) +
                      " inside the index cutoff band");
  }
  return report;
}

OpenStratumReport verify_open_stratum_properties(const Scenario& sc,
                                                 int n_samples, Rng& rng,
                                                 const FlowOptions& opts,
                                                 double witness_tol) {
  OpenStratumReport report;
  // lambda_0 = critical value of least norm.
  int i0 = 0;
  for (int i = 1; i < static_cast<int>(sc.critical_values.size()); ++i)
    if (sc.critical_values[i].norm() < sc.critical_values[i0].norm()) i0 = i;
  const Vec lambda0 = sc.critical_values[i0];
  const double r = sc.manifold.tol().r_cluster;

  int open_hits = 0, total = 0;
  std::vector<int> seen_labels;
  std::vector<Vec> label0_points;
  for (int s = 0; s < n_samples; ++s) {
    Vec x = sc.sample(rng);
    Trajectory traj = integrate_negative_gradient(
        sc, FlowFunctional::norm_square(), x, opts);
    if (!traj.converged) continue;
    Vec lam = sc.psi(traj.limit());
    ++total;
    int idx = label_index(sc, lam, r);
    if (idx >= 0 &&
        std::find(seen_labels.begin(), seen_labels.end(), idx) ==
            seen_labels.end())
      seen_labels.push_back(idx);
    if ((lam - lambda0).norm() <= 3.0 * r) {
      ++open_hits;
      if (label0_points.size() < 8) label0_points.push_back(x);
    }
  }
  report.open_fraction = total > 0 ? static_cast<double>(open_hits) / total : 0.0;
  report.distinct_open = static_cast<int>(seen_labels.size());

  // Orbit-closure witness: minimize |Psi(exp(i xi) m)| over xi.
  auto search = [&](const Vec& m0) -> double {
    const int k = sc.rank();
    Vec xi = Vec::Zero(k);
    // Gradient descent with finite differences on xi.
    auto value = [&](const Vec& c) {
      Vec y = sc.action.act_cplx(c, std::complex<double>(0, 1.0), m0);
      return sc.psi(y).norm();
    };
    double fx = value(xi);
    double step = 0.5;
    const double fd = 1e-5;
    for (int it = 0; it < 300 && fx > witness_tol; ++it) {
      Vec grad(k);
      for (int i = 0; i < k; ++i) {
        Vec e = Vec::Zero(k);
        e[i] = fd;
        grad[i] = (value(xi + e) - value(xi - e)) / (2 * fd);
      }
      if (grad.norm() < 1e-14) break;
      Vec cand = xi - step * grad / grad.norm();
      if (cand.cwiseAbs().maxCoeff() > 40.0) break;  // heading to infinity
      double fc = value(cand);
      if (fc < fx) {
        xi = cand;
        fx = fc;
        step = std::min(step * 1.3, 4.0);
      } else {
        step *= 0.5;
        if (step < 1e-12) break;
      }
    }
    return fx;
  };

  for (const Vec& x : label0_points) {
    ++report.witnesses_total;
    if (search(x) <= witness_tol) ++report.witnesses_found;
  }
  // Negative control: unstable fixed components must fail the search.
  for (const auto& fc : sc.fixed_components) {
    if (fc.psi_value.norm() <= 3.0 * r) continue;
    if (search(fc.representative) <= witness_tol)
      report.unstable_witness_fails = false;
  }
  report.pass = report.open_fraction >= sc.open_stratum_fraction &&
                report.witnesses_found == report.witnesses_total &&
                report.unstable_witness_fails;
  return report;
}

}  // namespace gmm
