#include "gmmtk/quadrature.hpp"

#include <cmath>

namespace gmm {

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double m, double fm, double whole,
                double tol, int depth, int max_depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14)
    return left + right + delta / 15.0;
  if (depth >= max_depth)
    throw Error(ErrorKind::QuadratureFailure,
                "adaptive quadrature exceeded max depth");
  return adaptive(f, a, fa, m, fm, lm, flm, left, tol / 2, depth + 1, max_depth) +
         adaptive(f, m, fm, b, fb, rm, frm, right, tol / 2, depth + 1, max_depth);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive(f, a, fa, b, fb, m, fm, whole, abs_tol, 0, max_depth);
}

namespace {

// Integral over one projected chord, Simpson on a fixed subdivision.
double chord_integral(const EmbeddedManifold& M, const OneFormFn& alpha,
                      const Vec& x0, const Vec& x1, int pieces) {
  auto gamma = [&](double u) -> Vec {
    return project_to_manifold(x0 + u * (x1 - x0), M).coords;
  };
  const double du = 1e-6;
  auto integrand = [&](double u) {
    Vec g = gamma(u);
    Vec gp = (gamma(std::min(1.0, u + du)) - gamma(std::max(0.0, u - du))) /
             (std::min(1.0, u + du) - std::max(0.0, u - du));
    return alpha(g, gp);
  };
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    double a = static_cast<double>(i) / pieces;
    double b = static_cast<double>(i + 1) / pieces;
    double m = 0.5 * (a + b);
    total += (b - a) / 6.0 *
             (integrand(a) + 4.0 * integrand(m) + integrand(b));
  }
  return total;
}

}  // namespace

double line_integral(const EmbeddedManifold& M, const OneFormFn& alpha,
                     const Vec& x0, const Vec& x1, double abs_tol,
                     int initial_segments) {
  int pieces = initial_segments;
  double prev = chord_integral(M, alpha, x0, x1, pieces);
  for (int iter = 0; iter < 12; ++iter) {
    pieces *= 2;
    double cur = chord_integral(M, alpha, x0, x1, pieces);
    if (std::abs(cur - prev) <= abs_tol) return cur;
    prev = cur;
  }
  throw Error(ErrorKind::QuadratureFailure, "line integral did not stabilize");
}

double loop_integral(const EmbeddedManifold& M, const OneFormFn& alpha,
                     const std::vector<Vec>& waypoints, double abs_tol) {
  double total = 0.0;
  const int n = static_cast<int>(waypoints.size());
  for (int i = 0; i < n; ++i)
    total += line_integral(M, alpha, waypoints[i], waypoints[(i + 1) % n],
                           abs_tol / std::max(1, n));
  return total;
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

}  // namespace gmm
