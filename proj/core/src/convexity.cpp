#include "gmmtk/convexity.hpp"

#include <algorithm>
#include <cmath>

#include "gmmtk/cplx.hpp"

namespace gmm {

namespace {

// Distance to the convex hull of points (small cardinality): projected
// gradient on barycentric weights. Adequate for audit geometry at k <= 3.
double dist_to_hull(const std::vector<Vec>& verts, const Vec& x) {
  const int n = static_cast<int>(verts.size());
  if (n == 0) return x.norm();
  if (n == 1) return (x - verts[0]).norm();
  Vec w = Vec::Constant(n, 1.0 / n);
  auto point = [&](const Vec& wts) {
    Vec p = Vec::Zero(x.size());
    for (int i = 0; i < n; ++i) p += wts[i] * verts[i];
    return p;
  };
  double step = 1.0;
  double fx = (point(w) - x).squaredNorm();
  for (int it = 0; it < 400; ++it) {
    Vec p = point(w);
    Vec grad(n);
    for (int i = 0; i < n; ++i) grad[i] = 2.0 * (p - x).dot(verts[i]);
    Vec cand = w - step * grad;
    // Euclidean projection onto the probability simplex.
    Vec sorted = cand;
    std::sort(sorted.data(), sorted.data() + n, std::greater<double>());
    double acc = 0.0, theta = (cand.sum() - 1.0) / n;
    for (int i = 0; i < n; ++i) {
      acc += sorted[i];
      double t = (acc - 1.0) / (i + 1);
      if (sorted[i] - t > 0) theta = t;
    }
    for (int i = 0; i < n; ++i) cand[i] = std::max(0.0, cand[i] - theta);
    double s = cand.sum();
    if (s <= 0) {
      step *= 0.5;
      continue;
    }
    cand /= s;
    double fc = (point(cand) - x).squaredNorm();
    if (fc < fx) {
      w = cand;
      fx = fc;
      step = std::min(step * 1.2, 4.0);
    } else {
      step *= 0.5;
      if (step < 1e-14) break;
    }
  }
  return std::sqrt(std::max(0.0, fx));
}

std::vector<Vec> dedupe(const std::vector<Vec>& pts, double tol) {
  std::vector<Vec> out;
  for (const Vec& p : pts) {
    bool seen = false;
    for (const Vec& q : out)
      if ((p - q).norm() <= tol) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(p);
  }
  return out;
}

// 2-D hull by gift wrapping; returns vertices in order.
std::vector<Vec> jarvis_2d(const std::vector<Vec>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  int start = 0;
  for (int i = 1; i < n; ++i)
    if (pts[i][0] < pts[start][0] ||
        (pts[i][0] == pts[start][0] && pts[i][1] < pts[start][1]))
      start = i;
  std::vector<Vec> hull;
  int cur = start;
  do {
    hull.push_back(pts[cur]);
    int next = (cur + 1) % n;
    for (int i = 0; i < n; ++i) {
      if (i == cur) continue;
      double cross = (pts[next][0] - pts[cur][0]) * (pts[i][1] - pts[cur][1]) -
                     (pts[next][1] - pts[cur][1]) * (pts[i][0] - pts[cur][0]);
      double d_next = (pts[next] - pts[cur]).norm();
      double d_i = (pts[i] - pts[cur]).norm();
      if (cross < -1e-12 || (std::abs(cross) <= 1e-12 && d_i > d_next))
        next = i;
    }
    cur = next;
    if (hull.size() > pts.size() + 1) break;  // safety
  } while (cur != start);
  return hull;
}

}  // namespace

double Polytope::violation(const Vec& x) const {
  // Off-hull component.
  Vec rel = x - affine_base;
  Vec inplane = affine_dirs.transpose() * rel;
  double off = (rel - affine_dirs * inplane).norm();
  double margin = 0.0;
  for (const auto& f : facets)
    margin = std::max(margin, f.normal.dot(inplane) - f.offset);
  return std::max(off, margin);
}

Polytope convex_hull(const std::vector<Vec>& points, int ambient_rank) {
  if (ambient_rank > 3)
    throw Error(ErrorKind::DimensionMismatch, "hulls support rank <= 3");
  Polytope P;
  P.ambient_rank = ambient_rank;
  std::vector<Vec> pts = dedupe(points, 1e-12);
  if (pts.empty()) return P;

  // Affine hull via SVD of centered points.
  Vec mean = Vec::Zero(ambient_rank);
  for (const Vec& p : pts) mean += p;
  mean /= static_cast<double>(pts.size());
  Mat C(ambient_rank, pts.size());
  for (size_t i = 0; i < pts.size(); ++i) C.col(i) = pts[i] - mean;
  Mat dirs = column_span_basis(C, 1e-10);
  P.affine_base = mean;
  P.affine_dirs = dirs;
  const int d = static_cast<int>(dirs.cols());

  // Coordinates inside the hull plane.
  std::vector<Vec> flat;
  for (const Vec& p : pts) flat.push_back(dirs.transpose() * (p - mean));

  if (d == 0) {
    P.vertices = {pts[0]};
    return P;
  }
  if (d == 1) {
    double lo = flat[0][0], hi = flat[0][0];
    for (const Vec& f : flat) {
      lo = std::min(lo, f[0]);
      hi = std::max(hi, f[0]);
    }
    P.vertices = {mean + lo * Vec(dirs.col(0)), mean + hi * Vec(dirs.col(0))};
    Vec np(1), nm(1);
    np << 1.0;
    nm << -1.0;
    P.facets = {{np, hi}, {nm, -lo}};
    return P;
  }
  if (d == 2) {
    std::vector<Vec> hull2 = jarvis_2d(flat);
    for (const Vec& h : hull2) P.vertices.push_back(mean + dirs * h);
    const int n = static_cast<int>(hull2.size());
    for (int i = 0; i < n; ++i) {
      Vec a = hull2[i], b = hull2[(i + 1) % n];
      Vec edge = b - a;
      Vec normal(2);
      normal << edge[1], -edge[0];  // outward for counterclockwise order
      double nn = normal.norm();
      if (nn < 1e-14) continue;
      normal /= nn;
      // Orient outward: interior mean must be inside.
      Vec interior = Vec::Zero(2);
      for (const Vec& h : hull2) interior += h;
      interior /= n;
      if (normal.dot(interior - a) > 0) normal = -normal;
      P.facets.push_back({normal, normal.dot(a)});
    }
    return P;
  }
  // d == 3: brute-force supporting planes; the vertex sets here are small
  // (fixed-point images), so the O(n^4) scan is fine.
  {
    const auto& q = flat;
    const int n = static_cast<int>(q.size());
    auto cross3 = [](const Vec& a, const Vec& b) {
      Vec c(3);
      c << a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0];
      return c;
    };
    std::vector<bool> on_hull(n, false);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int l = j + 1; l < n; ++l) {
          Vec nrm = cross3(q[j] - q[i], q[l] - q[i]);
          double nn = nrm.norm();
          if (nn < 1e-12) continue;
          nrm /= nn;
          double off = nrm.dot(q[i]);
          int above = 0, below = 0;
          for (int s = 0; s < n; ++s) {
            double v = nrm.dot(q[s]) - off;
            if (v > 1e-10) ++above;
            if (v < -1e-10) ++below;
          }
          if (above == 0 || below == 0) {
            // outward . x <= offset holds for every hull point
            Vec outward = (above == 0) ? nrm : Vec(-nrm);
            double offset = outward.dot(q[i]);
            bool dup = false;
            for (const auto& f : P.facets)
              if ((f.normal - outward).norm() < 1e-9 &&
                  std::abs(f.offset - offset) < 1e-9)
                dup = true;
            if (!dup) P.facets.push_back({outward, offset});
            on_hull[i] = on_hull[j] = on_hull[l] = true;
          }
        }
    for (int i = 0; i < n; ++i) {
      if (!on_hull[i]) continue;
      // Extreme-point filter: drop points expressible by the others.
      std::vector<Vec> others;
      for (int j = 0; j < n; ++j)
        if (j != i && on_hull[j]) others.push_back(q[j]);
      if (dist_to_hull(others, q[i]) > 1e-9)
        P.vertices.push_back(mean + dirs * q[i]);
    }
    return P;
  }
}

double hausdorff_distance(const Polytope& A, const Polytope& B) {
  double d = 0.0;
  for (const Vec& v : A.vertices) d = std::max(d, dist_to_hull(B.vertices, v));
  for (const Vec& v : B.vertices) d = std::max(d, dist_to_hull(A.vertices, v));
  return d;
}

double ConeAtPoint::violation(const Vec& x) const {
  if (full_space) return 0.0;
  Vec rel = x - apex;
  if (rel.norm() < 1e-300) return 0.0;
  // Distance from rel to the cone spanned by the generators: nonnegative
  // least squares by projected gradient.
  const int n = static_cast<int>(generators.size());
  if (n == 0) return rel.norm();
  Vec c = Vec::Zero(n);
  auto point = [&](const Vec& coef) {
    Vec p = Vec::Zero(rel.size());
    for (int i = 0; i < n; ++i) p += coef[i] * generators[i];
    return p;
  };
  double step = 1.0;
  double fx = (point(c) - rel).squaredNorm();
  for (int it = 0; it < 500; ++it) {
    Vec p = point(c);
    Vec grad(n);
    for (int i = 0; i < n; ++i) grad[i] = 2.0 * (p - rel).dot(generators[i]);
    Vec cand = (c - step * grad).cwiseMax(0.0);
    double fc = (point(cand) - rel).squaredNorm();
    if (fc < fx) {
      c = cand;
      fx = fc;
      step = std::min(step * 1.2, 8.0);
    } else {
      step *= 0.5;
      if (step < 1e-14) break;
    }
  }
  return std::sqrt(std::max(0.0, fx));
}

FixedComponentsReport fixed_components(const Scenario& sc, Rng& rng,
                                       const FlowOptions& opts,
                                       int cross_check_seeds) {
  FixedComponentsReport report;
  report.components = sc.fixed_components;
  const int k = sc.rank();
  for (const auto& fc : sc.fixed_components) {
    for (int i = 0; i < k; ++i) {
      Vec e = Vec::Zero(k);
      e[i] = 1.0;
      double n = fundamental_field(sc.manifold, sc.action, e,
                                   ManifoldPoint{fc.representative, 0.0})
                     .vec.norm();
      report.max_field_norm = std::max(report.max_field_norm, n);
    }
  }
  // Flow-based cross check: limits of the norm-square flow from a seed grid
  // must land on listed values (the analytic set must not be missing one).
  const double r = sc.manifold.tol().r_cluster;
  bool complete = true;
  for (const auto& sampler : sc.stratum_samplers) {
    for (int s = 0; s < cross_check_seeds; ++s) {
      Vec x = sampler(rng);
      Trajectory traj = integrate_negative_gradient(
          sc, FlowFunctional::norm_square(), x, opts);
      if (!traj.converged) continue;
      Vec lam = sc.psi(traj.limit());
      bool matched = false;
      for (const auto& cv : sc.critical_values)
        if ((cv - lam).norm() <= 3.0 * r) matched = true;
      if (!matched) complete = false;
    }
  }
  report.flow_cross_check = complete;
  if (!complete)
    throw Error(ErrorKind::IncompleteEnumeration,
                sc.name + ": flow limit outside the analytic value set");
  return report;
}

MomentPolytopeReport moment_polytope(const Scenario& sc, int n_samples,
                                     Rng& rng, double tol_hull,
                                     double tol_hausdorff) {
  if (!sc.compact)
    throw Error(ErrorKind::ConfigError, sc.name + ": polytope needs a compact scenario");
  MomentPolytopeReport report;
  std::vector<Vec> vertex_data;
  for (const auto& fc : sc.fixed_components) vertex_data.push_back(fc.psi_value);
  report.polytope = convex_hull(vertex_data, sc.rank());

  // Containment audit over uniform samples; coverage audit includes the
  // fixed representatives so the sampled hull reaches every vertex.
  std::vector<Vec> sampled;
  for (int s = 0; s < n_samples; ++s) {
    Vec x = sc.sample(rng);
    Vec v = sc.psi(x);
    sampled.push_back(v);
    report.max_violation =
        std::max(report.max_violation, report.polytope.violation(v));
    ++report.n_samples;
  }
  if (report.max_violation > tol_hull)
    throw Error(ErrorKind::ContainmentViolation,
                sc.name + ": sampled moment value escapes the hull by " +
                    std::to_string(report.max_violation));
  for (const auto& fc : sc.fixed_components)
    sampled.push_back(sc.psi(fc.representative));
  Polytope sampled_hull = convex_hull(sampled, sc.rank());
  report.hausdorff = hausdorff_distance(sampled_hull, report.polytope);
  report.pass =
      report.max_violation <= tol_hull && report.hausdorff <= tol_hausdorff;
  return report;
}

namespace {

// Limit of psi(exp(-i t xi) m) with the monotone stopping rule.
Vec bb_limit_value(const Scenario& sc, const Vec& m0, const Vec& xi) {
  Vec prev = sc.psi(m0);
  double t = 1.0;
  const double t_cap = 60.0 / std::max(1e-3, xi.norm());  // exp range guard
  while (t <= t_cap) {
    Vec cur =
        sc.action.act_cplx(xi, std::complex<double>(0, -t), m0);
    Vec val = sc.psi(cur);
    if ((val - prev).norm() < 1e-9) return val;
    prev = val;
    t += 1.0;
  }
  return prev;
}

}  // namespace

OrbitPolytopeReport orbit_closure_polytope(const Scenario& sc, const Vec& m0,
                                           int n_audit, Rng& rng,
                                           double tol_hull) {
  if (!sc.is_complex || !sc.action.has_complexification())
    throw Error(ErrorKind::ConfigError, sc.name + ": complexified scenario required");
  const int k = sc.rank();
  OrbitPolytopeReport report;

  // Fan of directions: +-generators, all sign combinations, plus a refining
  // circle/grid for rank 2.
  std::vector<Vec> dirs;
  for (int i = 0; i < k; ++i) {
    Vec e = Vec::Zero(k);
    e[i] = 1.0;
    dirs.push_back(e);
    dirs.push_back(-e);
  }
  if (k == 2) {
    for (int j = 0; j < 16; ++j) {
      double th = 2.0 * M_PI * j / 16.0;
      Vec d(2);
      d << std::cos(th), std::sin(th);
      dirs.push_back(d);
    }
  }
  std::vector<Vec> limits;
  for (const Vec& d : dirs) limits.push_back(bb_limit_value(sc, m0, d));
  limits.push_back(sc.psi(m0));
  limits = dedupe(limits, sc.manifold.tol().r_cluster);
  report.limits = limits;
  report.polytope = convex_hull(limits, k);

  for (int s = 0; s < n_audit; ++s) {
    Vec xi = rng.normal_vector(k);
    Vec y = sc.action.act_cplx(xi, std::complex<double>(0, 1.0), m0);
    double v = report.polytope.violation(sc.psi(y));
    report.max_violation = std::max(report.max_violation, v);
  }
  report.pass = report.max_violation <= tol_hull;
  return report;
}

LocalConeReport local_cone(const Scenario& sc, const FixedComponent& fc,
                           double radius, int n_samples, Rng& rng, double tol) {
  LocalConeReport report;
  report.cone.apex = fc.psi_value;
  IsotropyData iso = isotropy_algebra(sc.manifold, sc.action,
                                      ManifoldPoint{fc.representative, 0.0},
                                      sc.manifold.tol().iso_rel);
  if (iso.algebra_basis.cols() == 0) {
    report.cone.full_space = true;  // free point: submersion onto k^*
  } else {
    report.cone.generators = fc.weights;
  }

  // psi over a neighborhood of the representative.
  std::vector<Vec> images;
  for (int s = 0; s < n_samples; ++s) {
    Vec dir = random_tangent(sc.manifold, fc.representative, rng);
    double r = radius * std::sqrt(rng.uniform());
    Vec x = project_to_manifold(fc.representative + r * dir, sc.manifold).coords;
    Vec v = sc.psi(x);
    images.push_back(v);
    report.max_violation = std::max(report.max_violation, report.cone.violation(v));
    ++report.n_samples;
  }
  // Openness spot check: cone grid points near the apex must be approached
  // by the sampled image.
  if (!report.cone.full_space && !report.cone.generators.empty()) {
    double scale = 0.0;
    for (const Vec& v : images) scale = std::max(scale, (v - fc.psi_value).norm());
    scale *= 0.25;
    for (const Vec& g : report.cone.generators) {
      Vec target = fc.psi_value + scale * g / g.norm();
      double best = 1e300;
      for (const Vec& v : images) best = std::min(best, (v - target).norm());
      report.coverage_gap = std::max(report.coverage_gap, best);
    }
  }
  report.pass = report.max_violation <= tol && report.coverage_gap <= 0.5 * radius;
  return report;
}

Vec mgs_model_moment(const Vec& alpha, const Vec& p, const Mat& p_dirs,
                     const Vec& v, const std::vector<Vec>& weights) {
  const int k = static_cast<int>(alpha.size());
  if (p.size() != p_dirs.cols())
    throw Error(ErrorKind::DimensionMismatch, "p must match the declared subspace");
  if (p_dirs.rows() != k && p_dirs.cols() > 0)
    throw Error(ErrorKind::DimensionMismatch, "p subspace lives in k^*");
  if (v.size() != 2 * static_cast<int>(weights.size()))
    throw Error(ErrorKind::DimensionMismatch,
                "v must have one complex coordinate per weight");
  Vec out = alpha;
  if (p_dirs.cols() > 0) out += p_dirs * p;
  for (size_t j = 0; j < weights.size(); ++j) {
    if (weights[j].size() != k)
      throw Error(ErrorKind::DimensionMismatch, "weight rank mismatch");
    double n2 = std::norm(cplx::coord(v, static_cast<int>(j)));
    out += 0.5 * n2 * weights[j];
  }
  return out;
}

}  // namespace gmm
