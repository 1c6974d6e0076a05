#include "gmmtk/manifold.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace gmm {

EmbeddedManifold EmbeddedManifold::flat(int ambient_dim, Tolerances tol) {
  EmbeddedManifold M;
  M.name_ = "flat";
  M.ambient_ = AmbientSpace{ambient_dim};
  M.codim_ = 0;
  M.tol_ = tol;
  return M;
}

ManifoldPoint EmbeddedManifold::make_point(const Vec& x) const {
  const double r = residual(x);
  if (r > tol_.eps_mem)
    throw Error(ErrorKind::NonConvergence,
                name_ + ": point residual " + std::to_string(r));
  return ManifoldPoint{x, r};
}

ManifoldPoint project_to_manifold(const Vec& x0, const EmbeddedManifold& M,
                                  int max_iter) {
  if (!M.has_constraints()) return ManifoldPoint{x0, 0.0};
  Vec x = x0;
  double res = M.residual(x);
  // Polish to machine precision: derivative estimates difference points at
  // scale h_fd, so residues near eps_mem would leak into them.
  const double tight = 1e-14 * (1.0 + x.norm());
  for (int it = 0; it < max_iter && res > tight; ++it) {
    Mat J = M.constraint_jacobian(x);
    Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.singularValues().minCoeff() < M.tol().sigma_min)
      throw Error(ErrorKind::RankDeficient,
                  M.name() + ": constraint Jacobian singular value " +
                      std::to_string(svd.singularValues().minCoeff()));
    // Gauss-Newton step: minimal-norm solution of J dx = -c.
    x -= svd.solve(M.constraints(x));
    double next = M.residual(x);
    if (next >= res && next <= M.tol().eps_mem) return ManifoldPoint{x, next};
    res = next;
  }
  if (res <= M.tol().eps_mem) return ManifoldPoint{x, res};
  throw Error(ErrorKind::NonConvergence,
              M.name() + ": projection stalled at residual " +
                  std::to_string(res));
}

Mat tangent_projector(const EmbeddedManifold& M, const Vec& x) {
  const int n = M.ambient_dim();
  if (!M.has_constraints()) return Mat::Identity(n, n);
  Mat J = M.constraint_jacobian(x);
  Eigen::JacobiSVD<Mat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().minCoeff() < M.tol().sigma_min)
    throw Error(ErrorKind::RankDeficient, M.name() + ": tangent projector");
  Mat V = svd.matrixV();  // n x m, orthonormal rows span of J^T
  return Mat::Identity(n, n) - V * V.transpose();
}

Mat physical_projector(const EmbeddedManifold& M, const Vec& x) {
  Mat P = tangent_projector(M, x);
  const auto& gauge = M.gauge_fields();
  if (gauge.empty()) return P;
  Mat G(M.ambient_dim(), static_cast<int>(gauge.size()));
  for (int j = 0; j < G.cols(); ++j) G.col(j) = P * gauge[j](x);
  Mat Q = column_span_basis(G, 1e-10);
  return P - Q * Q.transpose();
}

Mat tangent_basis(const EmbeddedManifold& M, const Vec& x) {
  return projector_range_basis(physical_projector(M, x));
}

TangentVector make_tangent(const EmbeddedManifold& M, const ManifoldPoint& m,
                           const Vec& ambient_dir) {
  Mat P = physical_projector(M, m.coords);
  Vec v = P * ambient_dir;
  return TangentVector{m.coords, v};
}

Vec random_tangent(const EmbeddedManifold& M, const Vec& x, Rng& rng) {
  Mat P = physical_projector(M, x);
  Vec v = P * rng.normal_vector(M.ambient_dim());
  double n = v.norm();
  while (n < 1e-10) {
    v = P * rng.normal_vector(M.ambient_dim());
    n = v.norm();
  }
  return v / n;
}

namespace {

// Moves along the projected-constant extension of direction w.
Vec shift(const EmbeddedManifold& M, const Vec& x, const Vec& w, double h) {
  return project_to_manifold(x + h * w, M).coords;
}

// Field value of the projected-constant extension of w at point y.
Vec ext_field(const EmbeddedManifold& M, const Vec& y, const Vec& w) {
  return tangent_projector(M, y) * w;
}

// Lie bracket [U, V] at x of the projected-constant extensions of u and v.
Vec bracket_fd(const EmbeddedManifold& M, const Vec& x, const Vec& u,
               const Vec& v, double h) {
  if (!M.has_constraints()) return Vec::Zero(x.size());  // constant fields
  Vec xp = shift(M, x, u, h), xm = shift(M, x, u, -h);
  Vec dV = (ext_field(M, xp, v) - ext_field(M, xm, v)) / (2 * h);
  Vec yp = shift(M, x, v, h), ym = shift(M, x, v, -h);
  Vec dU = (ext_field(M, yp, u) - ext_field(M, ym, u)) / (2 * h);
  return tangent_projector(M, x) * (dV - dU);
}

double dir_deriv(const EmbeddedManifold& M, const ZeroFormFn& f, const Vec& x,
                 const Vec& w, double h) {
  if (h < 1e-300) throw Error(ErrorKind::StepUnderflow, "fd step underflow");
  return (f(shift(M, x, w, h)) - f(shift(M, x, w, -h))) / (2 * h);
}

// A k-form on linearly dependent arguments vanishes identically; detecting
// this keeps top-degree queries exact instead of fd-noisy.
bool dependent(const std::vector<Vec>& vs) {
  Mat A(vs[0].size(), static_cast<int>(vs.size()));
  for (int j = 0; j < A.cols(); ++j) A.col(j) = vs[j];
  Eigen::JacobiSVD<Mat> svd(A);
  const auto& s = svd.singularValues();
  if (s.size() < A.cols()) return true;
  return s.minCoeff() <= 1e-9 * std::max(s.maxCoeff(), 1e-30);
}

}  // namespace

double exterior_derivative_fd(const EmbeddedManifold& M, const ZeroFormFn& f,
                              const Vec& x, const Vec& u) {
  const double h = M.tol().h_fd;
  Vec pu = tangent_projector(M, x) * u;
  return dir_deriv(M, f, x, pu, h);
}

double exterior_derivative_fd(const EmbeddedManifold& M, const OneFormFn& alpha,
                              const Vec& x, const Vec& u, const Vec& v) {
  const double h = M.tol().h_fd;
  if (h < 1e-300) throw Error(ErrorKind::StepUnderflow, "fd step underflow");
  Mat P = tangent_projector(M, x);
  Vec pu = P * u, pv = P * v;
  if (dependent({pu, pv})) return 0.0;
  // d a(U,V) = U(a(V)) - V(a(U)) - a([U,V]) on the extended fields.
  auto aV = [&](const Vec& y) { return alpha(y, ext_field(M, y, pv)); };
  auto aU = [&](const Vec& y) { return alpha(y, ext_field(M, y, pu)); };
  double term1 = dir_deriv(M, aV, x, pu, h);
  double term2 = dir_deriv(M, aU, x, pv, h);
  Vec br = bracket_fd(M, x, pu, pv, h);
  return term1 - term2 - alpha(x, br);
}

double exterior_derivative_fd(const EmbeddedManifold& M, const TwoFormFn& omega,
                              const Vec& x, const Vec& u, const Vec& v,
                              const Vec& w) {
  const double h = M.tol().h_fd;
  if (h < 1e-300) throw Error(ErrorKind::StepUnderflow, "fd step underflow");
  Mat P = tangent_projector(M, x);
  Vec a = P * u, b = P * v, c = P * w;
  if (dependent({a, b, c})) return 0.0;
  auto field = [&](const Vec& y, const Vec& dir) { return ext_field(M, y, dir); };
  auto om = [&](const Vec& y, const Vec& p, const Vec& q) {
    return omega(y, field(y, p), field(y, q));
  };
  auto d1 = [&](const Vec& p, const Vec& q, const Vec& along) {
    auto g = [&](const Vec& y) { return om(y, p, q); };
    return dir_deriv(M, g, x, along, h);
  };
  double deriv_terms = d1(b, c, a) - d1(a, c, b) + d1(a, b, c);
  Vec ab = bracket_fd(M, x, a, b, h);
  Vec ac = bracket_fd(M, x, a, c, h);
  Vec bc = bracket_fd(M, x, b, c, h);
  double bracket_terms =
      -omega(x, ab, c) + omega(x, ac, b) - omega(x, bc, a);
  return deriv_terms + bracket_terms;
}

HermitianTriple compatible_triple_from_form(const EmbeddedManifold& Min,
                                            TwoForm omega, MetricFn g_ref) {
  // Captured by value so the triple owns everything it needs.
  auto M = std::make_shared<EmbeddedManifold>(Min);
  auto om = std::make_shared<TwoForm>(std::move(omega));
  auto gref = std::make_shared<MetricFn>(
      g_ref ? std::move(g_ref)
            : MetricFn([](const Vec&, const Vec& u, const Vec& v) {
                return u.dot(v);
              }));

  // Per-point construction: g_ref-orthonormal physical basis Q, skew matrix
  // W_ij = omega(q_i, q_j), J = polar unitary of W^T acting in that basis.
  struct Frame {
    Mat Q;    // n x d, g_ref-orthonormal columns
    Mat Jb;   // d x d, orthogonal with Jb^2 = -I
    Mat Gram; // d x d omega Gram for degeneracy checks
  };
  auto frame_at = [M, om, gref](const Vec& x) -> Frame {
    Mat Q0 = tangent_basis(*M, x);
    const int d = static_cast<int>(Q0.cols());
    // Gram-Schmidt in the g_ref inner product.
    Mat Q(Q0.rows(), d);
    for (int j = 0; j < d; ++j) {
      Vec q = Q0.col(j);
      for (int i = 0; i < j; ++i)
        q -= (*gref)(x, Q.col(i), q) * Q.col(i);
      double n = std::sqrt((*gref)(x, q, q));
      if (n < 1e-12)
        throw Error(ErrorKind::RankDeficient, "reference metric degenerate");
      Q.col(j) = q / n;
    }
    Mat W(d, d);
    for (int i = 0; i < d; ++i) {
      W(i, i) = 0.0;
      for (int j = i + 1; j < d; ++j) {
        double val = (*om)(x, Q.col(i), Q.col(j));
        W(i, j) = val;
        W(j, i) = -val;
      }
    }
    Eigen::JacobiSVD<Mat> svd(W);
    if (svd.singularValues().minCoeff() < M->tol().sigma_min)
      throw Error(ErrorKind::DegenerateForm,
                  "two-form degenerate at a queried point");
    // omega(u,v) = g_ref(Au, v) with A = W^T in basis coordinates.
    Frame f;
    f.Q = Q;
    f.Jb = polar_unitary(W.transpose());
    f.Gram = W;
    return f;
  };

  HermitianTriple triple;
  triple.J = [frame_at, gref](const Vec& x, const Vec& v) -> Vec {
    Frame f = frame_at(x);
    const int d = static_cast<int>(f.Q.cols());
    Vec vb(d);
    for (int i = 0; i < d; ++i) vb[i] = (*gref)(x, f.Q.col(i), v);
    return f.Q * (f.Jb * vb);
  };
  TwoFormFn omfn = om->eval;
  triple.omega = TwoForm{omfn};
  EndoField Jcopy = triple.J;
  triple.g = [omfn, Jcopy](const Vec& x, const Vec& u, const Vec& v) {
    return omfn(x, u, Jcopy(x, v));
  };
  return triple;
}

}  // namespace gmm
