#include "gmmtk/action.hpp"

#include <cmath>

namespace gmm {

TangentVector fundamental_field(const EmbeddedManifold& M,
                                const GroupActionSpec& action, const Vec& xi,
                                const ManifoldPoint& m) {
  if (xi.size() != action.rank)
    throw Error(ErrorKind::DimensionMismatch, "lie algebra element rank");
  Vec v = Vec::Zero(M.ambient_dim());
  for (int i = 0; i < action.rank; ++i)
    if (xi[i] != 0.0) v += xi[i] * action.generators[i](m.coords);
  return TangentVector{m.coords, physical_projector(M, m.coords) * v};
}

ManifoldPoint act_complexified(const EmbeddedManifold& M,
                               const GroupActionSpec& action, const Vec& xi,
                               std::complex<double> z, const ManifoldPoint& m) {
  if (!action.has_complexification())
    throw Error(ErrorKind::ConfigError,
                "action has no complexified flow");
  const double mag = std::abs(z.imag()) * xi.cwiseAbs().maxCoeff();
  if (mag > 690.0)
    throw Error(ErrorKind::Overflow,
                "complexified action parameter exceeds exp range");
  Vec out = action.act_cplx(xi, z, m.coords);
  return M.make_point(out);
}

IsotropyData isotropy_algebra(const EmbeddedManifold& M,
                              const GroupActionSpec& action,
                              const ManifoldPoint& m, double rel_tol) {
  const int k = action.rank;
  Mat F(M.ambient_dim(), k);
  for (int i = 0; i < k; ++i) {
    Vec e = Vec::Zero(k);
    e[i] = 1.0;
    F.col(i) = fundamental_field(M, action, e, m).vec;
  }
  Eigen::JacobiSVD<Mat> svd(F, Eigen::ComputeFullV);
  Vec s = Vec::Zero(k);
  s.head(svd.singularValues().size()) = svd.singularValues();
  const double smax = std::max(s.size() ? s[0] : 0.0, 1.0);
  int rank = 0;
  for (int i = 0; i < k; ++i)
    if (s[i] > rel_tol * smax) ++rank;

  IsotropyData data;
  data.base = m;
  data.algebra_basis = svd.matrixV().rightCols(k - rank);
  data.annihilator_basis = svd.matrixV().leftCols(rank);
  if (rank > 0 && rank < k)
    data.kernel_gap = s[rank - 1] - s[rank];
  else if (rank == k)
    data.kernel_gap = s[k - 1];
  else
    data.kernel_gap = 0.0;
  return data;
}

InvarianceReport check_invariance(
    const EmbeddedManifold& M, const GroupActionSpec& action,
    const std::function<double(const Vec&, const Vec&, const Vec&)>& tensor,
    const std::vector<Vec>& sample_points, Rng& rng, double tol,
    double t_range) {
  InvarianceReport report;
  report.tolerance = tol;
  const double h = M.tol().h_fd;
  for (const Vec& x : sample_points) {
    Vec xi = rng.sphere(action.rank);
    double t = rng.uniform(-t_range, t_range);
    Vec u = random_tangent(M, x, rng);
    Vec v = random_tangent(M, x, rng);
    Vec y = action.act_real(xi, t, x);
    // Differential of the action map by central differences.
    auto push = [&](const Vec& w) -> Vec {
      Vec xp = project_to_manifold(x + h * w, M).coords;
      Vec xm = project_to_manifold(x - h * w, M).coords;
      return (action.act_real(xi, t, xp) - action.act_real(xi, t, xm)) /
             (2 * h);
    };
    double pulled = tensor(y, push(u), push(v));
    double orig = tensor(x, u, v);
    report.max_deviation =
        std::max(report.max_deviation, std::abs(pulled - orig));
    ++report.n_samples;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

}  // namespace gmm
