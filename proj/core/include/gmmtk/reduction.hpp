#pragma once

#include "gmmtk/moment.hpp"
#include "gmmtk/scenario.hpp"

namespace gmm {

struct LevelSetSample {
  Vec level;
  std::vector<Vec> points;        // on Psi^{-1}(level)
  std::vector<Mat> horizontal;    // per point: columns span H_m (g-orthonormal)
};

// Newton onto (c = 0, Psi = p) from random seeds; audits regularity of the
// level and builds horizontal bases orthogonal to the orbit directions.
// Reduction away from the zero level is carried out directly on Psi^{-1}(p);
// the equivalent product-space shift to a zero level is not a separate code
// path.
LevelSetSample sample_level_set(const Scenario& sc, const Vec& level, int n,
                                Rng& rng, int max_attempts_per_point = 64);

// omega on horizontal lifts; well-definedness audited separately.
double reduced_form_at(const Scenario& sc, const Vec& point, const Vec& u,
                       const Vec& v);

// Max change of reduced_form values under K_p-orbit transport of (m, u, v).
CheckReport check_reduction_descent(const Scenario& sc,
                                    const LevelSetSample& sample, Rng& rng,
                                    double tol);

struct ReducedComplexReport {
  double max_J_leakage = 0.0;   // |(I - P_H) J h|
  double min_positivity = 0.0;  // min omega(h, Jh) over unit h in H
  double min_sigma = 0.0;       // nondegeneracy of omega|_H
  int n_samples = 0;
  bool pass = false;
};

ReducedComplexReport check_reduced_complex_structure(
    const Scenario& sc, const LevelSetSample& sample, double tol);

// Minimal coupling on P x k*: the coupled manifold, the (inverted) action,
// omega = pr_1^* sigma - d<pr_2, theta>, and psi = -pr_2.
struct MinimalCoupling {
  EmbeddedManifold product;
  GroupActionSpec action;
  TwoForm omega;
  std::function<Vec(const Vec&)> psi;
};

MinimalCoupling minimal_coupling_form(const PrincipalBundleSpec& bundle,
                                      const Tolerances& tol = {});

// Smallest omega-Gram singular value over samples with |a| <= r_slab.
// Throws SlabTooLarge when degeneracy is met inside the slab.
CheckReport coupling_nondegenerate_on_slab(const MinimalCoupling& mc,
                                           double r_slab, int n_samples,
                                           Rng& rng, double sigma_floor);

// dPsi^xi = i_{xi_M} omega on random samples/tangents (works for any
// scenario-like triple of manifold/action/omega/psi).
CheckReport check_defining_identity(const EmbeddedManifold& M,
                                    const GroupActionSpec& action,
                                    const TwoForm& omega,
                                    const std::function<Vec(const Vec&)>& psi,
                                    const std::function<Vec(Rng&)>& sample,
                                    int n_samples, Rng& rng, double tol);

struct GoodTrivializationReport {
  // max |d omega(A-lift, vertical, -)| per level
  std::vector<Vec> levels;
  std::vector<double> max_values;
  double overall_max = 0.0;
  double tolerance = 0.0;
  bool pass = false;  // recorded, not presumed meaningful for non-closed forms
};

// H defaults to J k; the product-structure lift of a base direction A is the
// H-lift with dPsi(lift) = A.
GoodTrivializationReport good_trivialization_check(
    const Scenario& sc, const std::vector<Vec>& level_grid, int n_per_level,
    Rng& rng, double tol);

struct DHReport {
  std::vector<double> levels;
  std::vector<double> integrals;   // total integral of omega_p
  double slope = 0.0;
  double intercept = 0.0;
  double rel_residual = 0.0;       // of the linear fit
  double degree = 0.0;             // curvature integral / 2 pi
  double slope_vs_degree = 0.0;    // | |slope| - 2 pi |deg| | / (2 pi |deg|)
  bool pass = false;
};

// Total reduced integral over a level grid (k = 1 scenarios with a CP^1
// reduced chart); fits a line and compares the slope against the
// curvature-integral degree oracle.
DHReport dh_variation(const Scenario& sc, const std::vector<double>& p_grid,
                      double fit_tol, double slope_rel_tol);

struct MoserReport {
  double max_identity_dev = 0.0;  // |i_xi omega0 - i_xi phi^* omega1|
  double radius = 0.0;
  int n_samples = 0;
  bool pass = false;
};

// Moser/Darboux flow between momentumly closed forms agreeing at the
// origin of a linear chart; verifies the contraction identity.
MoserReport moser_flow(const EmbeddedManifold& M, const GroupActionSpec& action,
                       const TwoFormFn& omega0, const TwoFormFn& omega1,
                       double radius, int n_samples, Rng& rng, double tol);

struct QuotientReport {
  int reduced_dim = 0;
  double max_J_dev = 0.0;     // reduced J vs the CP^1 chart J
  double max_form_dev = 0.0;  // reduced form vs the chart Fubini-Study form
  double area = 0.0;          // total reduced area
  double area_expected = 0.0;
  int n_samples = 0;
  bool pass = false;
};

// Builds the toric coupling scenario, reduces at 0 and matches the quotient
// CP^1 chart data.
QuotientReport quotient_scenario_check(int n_points, Rng& rng, double tol,
                                       const Tolerances& tols = {});

}  // namespace gmm
