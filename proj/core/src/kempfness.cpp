#include "gmmtk/kempfness.hpp"

#include <cmath>

#include "gmmtk/quadrature.hpp"

namespace gmm {

namespace {

// phi'(t) along exp(i t xi): -<psi(exp(-i t xi) m), xi>.
double kn_derivative(const Scenario& sc, const Vec& m, const Vec& xi,
                     double t) {
  Vec y = sc.action.act_cplx(xi, std::complex<double>(0.0, -t), m);
  return -sc.psi(y).dot(xi);
}

void require_complexified(const Scenario& sc) {
  if (!sc.action.has_complexification() || !sc.has_psi())
    throw Error(ErrorKind::ConfigError,
                sc.name + ": complexified action with a moment map required");
}

}  // namespace

double kn_value(const Scenario& sc, const Vec& m, const Vec& xi) {
  require_complexified(sc);
  if (xi.norm() == 0.0) return 0.0;
  auto integrand = [&](double t) { return kn_derivative(sc, m, xi, t); };
  return integrate_adaptive(integrand, 0.0, 1.0, sc.manifold.tol().quad_tol);
}

CocycleReport kn_cocycle_check(const Scenario& sc, const Vec& m, const Vec& xi1,
                               const Vec& xi2, double tol) {
  require_complexified(sc);
  double lhs1 = kn_value(sc, m, xi1);
  Vec shifted = sc.action.act_cplx(xi1, std::complex<double>(0.0, -1.0), m);
  double lhs2 = kn_value(sc, shifted, xi2);
  double rhs = kn_value(sc, m, Vec(xi1 + xi2));
  CocycleReport report;
  report.residual = std::abs(lhs1 + lhs2 - rhs);
  report.tolerance = tol;
  report.pass = report.residual <= tol;
  return report;
}

ConvexityReport kn_convexity_check(const Scenario& sc, const Vec& m,
                                   const Vec& xi,
                                   const std::vector<double>& t_grid,
                                   double tol) {
  require_complexified(sc);
  ConvexityReport report;
  report.tolerance = tol;
  report.profile.base = m;
  report.profile.direction = xi.norm() > 0 ? Vec(xi / xi.norm()) : xi;

  const double quad_tol = sc.manifold.tol().quad_tol;
  for (double t : t_grid) {
    auto integrand = [&](double s) { return kn_derivative(sc, m, xi, s); };
    double val = integrate_adaptive(integrand, 0.0, t, quad_tol);
    report.profile.t.push_back(t);
    report.profile.value.push_back(val);
    report.profile.derivative.push_back(kn_derivative(sc, m, xi, t));
  }
  if (!report.profile.derivative.empty())
    report.profile.estimated_slope = report.profile.derivative.back();

  report.min_second_difference = 1e300;
  for (size_t i = 1; i + 1 < report.profile.t.size(); ++i) {
    double h1 = report.profile.t[i] - report.profile.t[i - 1];
    double h2 = report.profile.t[i + 1] - report.profile.t[i];
    double d2 = (report.profile.value[i + 1] - report.profile.value[i]) / h2 -
                (report.profile.value[i] - report.profile.value[i - 1]) / h1;
    report.min_second_difference = std::min(report.min_second_difference, d2);
  }
  if (report.profile.t.size() < 3) report.min_second_difference = 0.0;

  const double h = 1e-5;
  report.second_derivative_at_zero =
      (kn_derivative(sc, m, xi, h) - kn_derivative(sc, m, xi, -h)) / (2 * h);
  Vec f = fundamental_field(sc.manifold, sc.action, xi,
                            ManifoldPoint{m, 0.0})
              .vec;
  report.field_norm_squared = sc.triple->g(m, f, f);
  report.pass =
      report.min_second_difference >= -tol &&
      std::abs(report.second_derivative_at_zero - report.field_norm_squared) <=
          std::max(tol, 1e-4 * std::abs(report.field_norm_squared) + 1e-7);
  return report;
}

namespace {

SlopeResult slope_with_tolerance(const Scenario& sc, const Vec& m,
                                 const Vec& xi, double tol_slope);

}  // namespace

SlopeResult slope_at_infinity(const Scenario& sc, const Vec& m, const Vec& xi) {
  require_complexified(sc);
  return slope_with_tolerance(sc, m, xi, sc.manifold.tol().tol_slope);
}

namespace {

SlopeResult slope_with_tolerance(const Scenario& sc, const Vec& m,
                                 const Vec& xi, double tol_slope) {
  const double t_cap = sc.manifold.tol().t_slope_max;
  SlopeResult res;
  double prev = kn_derivative(sc, m, xi, 0.0);
  int stable = 0;
  for (double t = 1.0; t <= t_cap; t *= 2.0) {
    double cur = kn_derivative(sc, m, xi, t);
    if (cur < prev - 1e-9) res.monotone = false;
    if (std::abs(cur - prev) < tol_slope)
      ++stable;
    else
      stable = 0;
    res.slope = cur;
    res.t_reached = t;
    prev = cur;
    if (stable >= 2) {  // three successive values in agreement
      res.plateau = true;
      return res;
    }
  }
  res.plateau = false;  // NoPlateau: reported, non-fatal
  return res;
}

}  // namespace

WeightReport hesselink_weight(const Scenario& sc, const Vec& m) {
  require_complexified(sc);
  const int k = sc.rank();
  if (k > 2)
    throw Error(ErrorKind::DimensionMismatch, "weight search supports k <= 2");
  const double tol_ss = sc.manifold.tol().tol_ss;
  const double tol_slope = sc.manifold.tol().tol_slope;

  WeightReport report;
  auto slope_of = [&](const Vec& dir) {
    return slope_at_infinity(sc, m, dir).slope;
  };

  if (k == 1) {
    Vec plus = Vec::Constant(1, 1.0), minus = Vec::Constant(1, -1.0);
    double sp = slope_of(plus), sm = slope_of(minus);
    report.certificate = {{plus, sp}, {minus, sm}};
    if (sp <= sm) {
      report.w_min = plus;
      report.inf_slope = sp;
    } else {
      report.w_min = minus;
      report.inf_slope = sm;
    }
  } else {
    const int n_grid = 64;
    std::vector<double> slopes(n_grid);
    auto dir_at = [](double th) {
      Vec d(2);
      d << std::cos(th), std::sin(th);
      return d;
    };
    int best = 0;
    for (int i = 0; i < n_grid; ++i) {
      double th = 2.0 * M_PI * i / n_grid;
      slopes[i] = slope_of(dir_at(th));
      report.certificate.push_back({dir_at(th), slopes[i]});
      if (slopes[i] < slopes[best]) best = i;
    }
    // Uniqueness guard: a second minimum at a distant angle contradicts the
    // strict convexity of the slope on its negative set.
    for (int i = 0; i < n_grid; ++i) {
      if (slopes[best] >= -tol_ss) break;
      double dth = std::abs(2.0 * M_PI * (i - best) / n_grid);
      dth = std::min(dth, 2.0 * M_PI - dth);
      if (i != best && slopes[i] - slopes[best] < tol_slope && dth > 0.3)
        throw Error(ErrorKind::AmbiguousMinimum,
                    "two separated weight-search minima");
    }
    // Golden-section refinement around the best grid angle, with a tighter
    // search-internal plateau so the flat side of the minimum resolves.
    auto slope_fine = [&](double th) {
      return slope_with_tolerance(sc, m, dir_at(th), 1e-10).slope;
    };
    double lo = 2.0 * M_PI * (best - 1) / n_grid;
    double hi = 2.0 * M_PI * (best + 1) / n_grid;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = slope_fine(c), fd = slope_fine(d);
    for (int it = 0; it < 48; ++it) {
      if (fc < fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - gr * (hi - lo);
        fc = slope_fine(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + gr * (hi - lo);
        fd = slope_fine(d);
      }
    }
    double th_min = 0.5 * (lo + hi);
    report.w_min = dir_at(th_min);
    report.inf_slope = slope_fine(th_min);
  }

  if (report.inf_slope >= -tol_ss) {
    report.semistable = true;
    report.w_H = Vec::Zero(k);
  } else {
    report.semistable = false;
    report.w_H = -report.inf_slope * report.w_min;
  }
  return report;
}

MomentWeightReport moment_weight_check(const Scenario& sc, const Vec& m,
                                       const FlowOptions& opts,
                                       double tol_mw) {
  WeightReport weight = hesselink_weight(sc, m);
  StratumLabel label = stratum_label(sc, m, opts);

  MomentWeightReport report;
  report.inf_slope = weight.inf_slope;
  report.flow_limit_norm = label.norm;
  // The slope/limit equality is a statement about the unstable set; on the
  // semistable side both the negative slope part and the limit norm vanish.
  report.equality_gap =
      std::abs(-std::min(weight.inf_slope, 0.0) - label.norm);
  report.w_H = weight.w_H;
  report.lambda = label.lambda;
  report.label_gap = (weight.w_H - label.lambda).norm();
  report.pass = report.equality_gap <= tol_mw &&
                report.label_gap <= std::max(tol_mw, 10.0 * sc.manifold.tol().r_cluster);
  return report;
}

Semistability semistable_test(const Scenario& sc, const Vec& m,
                              double tol_ss) {
  WeightReport weight = hesselink_weight(sc, m);
  if (std::abs(weight.inf_slope) < tol_ss) return Semistability::Borderline;
  return weight.inf_slope >= -tol_ss ? Semistability::Semistable
                                     : Semistability::Unstable;
}

}  // namespace gmm
