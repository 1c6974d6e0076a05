#pragma once

#include "gmmtk/flow.hpp"
#include "gmmtk/scenario.hpp"

namespace gmm {

// Geodesic profile of the Kempf-Ness function along exp(i t xi). The
// derivative is -<psi(exp(-i t xi) m), xi>; its monotonicity is the
// convexity certificate.
struct KempfNessProfile {
  Vec base;
  Vec direction;                 // unit
  std::vector<double> t;
  std::vector<double> value;     // phi_m(exp(i t xi))
  std::vector<double> derivative;
  double estimated_slope = 0.0;  // last derivative sample
};

// phi_m(exp(i xi)) by adaptive quadrature; phi_m(e) = 0.
double kn_value(const Scenario& sc, const Vec& m, const Vec& xi);

struct CocycleReport {
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// |phi_m(exp(i xi1)) + phi_{exp(-i xi1) m}(exp(i xi2)) - phi_m(exp(i(xi1+xi2)))|
CocycleReport kn_cocycle_check(const Scenario& sc, const Vec& m, const Vec& xi1,
                               const Vec& xi2, double tol);

struct ConvexityReport {
  KempfNessProfile profile;
  double min_second_difference = 0.0;
  double second_derivative_at_zero = 0.0;
  double field_norm_squared = 0.0;  // |xi_M(m)|^2_g, the analytic value
  double tolerance = 0.0;
  bool pass = false;
};

ConvexityReport kn_convexity_check(const Scenario& sc, const Vec& m,
                                   const Vec& xi,
                                   const std::vector<double>& t_grid,
                                   double tol);

struct SlopeResult {
  double slope = 0.0;  // last integrand value
  double t_reached = 0.0;
  bool plateau = false;   // three successive values within tol_slope
  bool monotone = true;   // integrand nondecreasing along the schedule
};

// mu_m(a_xi) = lim_t -<psi(exp(-i t xi) m), xi> on the geometric schedule
// t = 1, 2, 4, ..., t_slope_max. NoPlateau is reported, not thrown.
SlopeResult slope_at_infinity(const Scenario& sc, const Vec& m, const Vec& xi);

struct WeightReport {
  Vec w_min;          // unit direction of the minimal slope
  Vec w_H;            // -inf_slope * w_min, zero when semistable
  double inf_slope = 0.0;
  bool semistable = false;
  std::vector<std::pair<Vec, double>> certificate;  // direction -> slope
};

// Minimal slope over the unit sphere of the Lie algebra (k <= 2: signs, or
// an angular grid plus golden-section refinement).
WeightReport hesselink_weight(const Scenario& sc, const Vec& m);

struct MomentWeightReport {
  double inf_slope = 0.0;
  double flow_limit_norm = 0.0;  // |psi| at the norm-square flow limit
  double equality_gap = 0.0;     // | -inf_slope - limit norm |
  Vec w_H;
  Vec lambda;          // stratum label
  double label_gap = 0.0;  // |w_H - lambda|
  bool pass = false;
};

MomentWeightReport moment_weight_check(const Scenario& sc, const Vec& m,
                                       const FlowOptions& opts, double tol_mw);

enum class Semistability { Semistable, Unstable, Borderline };

Semistability semistable_test(const Scenario& sc, const Vec& m, double tol_ss);

}  // namespace gmm
