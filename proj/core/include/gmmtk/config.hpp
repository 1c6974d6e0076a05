#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace gmm {

// Numerical thresholds shared across the toolkit. Every value can be
// overridden per run through `apply`, keyed by the field name.
struct Tolerances {
  double eps_mem = 1e-10;    // max constraint residual for accepted points
  double eps_tan = 1e-8;     // relative normal leakage of tangent vectors
  double eps_num = 1e-8;     // generic algebraic-identity slack
  double h_fd = 1e-5;        // central-difference step for first derivatives
  double h_hess = 1e-4;      // step for finite-difference Hessians
  double sigma_min = 1e-8;   // rank / nondegeneracy floor for singular values
  double iso_rel = 1e-7;     // isotropy kernel threshold, relative to sigma_max
  double tol_inv = 1e-8;     // invariance-check bound
  double tol_def = 1e-6;     // defining identity dPsi^xi = i_xi omega at samples
  double tol_loop = 1e-7;    // loop-holonomy audit bound
  double quad_tol = 1e-10;   // adaptive quadrature absolute tolerance
  double ode_rtol = 1e-10;   // flow integrator relative tolerance
  double ode_atol = 1e-12;   // flow integrator absolute tolerance
  double eps_crit = 1e-8;    // gradient norm at an accepted flow limit
  int crit_window = 20;      // accepted steps the limit criterion must persist
  double t_max = 1e4;        // flow time horizon
  double r_cluster = 1e-4;   // clustering radius for stratum labels
  double eps_eig = 1e-5;     // Hessian eigenvalue cutoff for index counting
  double tol_angle = 1e-4;   // principal-angle bound, radians
  double tol_hull = 1e-6;    // polytope containment margin
  double hull_hausdorff = 1e-3;  // sampled hull vs fixed-point hull
  double tol_slope = 1e-6;   // plateau detection for slopes at infinity
  double t_slope_max = 16384.0;  // geometric schedule cap (2^14)
  double tol_ss = 1e-5;      // semistability threshold on the minimal slope
  double tol_mw = 1e-4;      // moment-weight equality bound
  double r_slab = 0.2;       // nondegeneracy slab |a| <= r_slab for couplings
  double moser_radius = 0.1; // working radius of the Moser chart
  double tol_moser = 1e-5;   // contraction-identity report bound
  double fit_resid = 1e-3;   // relative residual for the DH linear fit

  // Applies overrides; throws std::invalid_argument for unknown keys or
  // non-positive values.
  void apply(const std::map<std::string, double>& overrides);
};

inline void Tolerances::apply(const std::map<std::string, double>& overrides) {
  std::map<std::string, double*> slots = {
      {"eps_mem", &eps_mem},       {"eps_tan", &eps_tan},
      {"eps_num", &eps_num},       {"h_fd", &h_fd},
      {"h_hess", &h_hess},         {"sigma_min", &sigma_min},
      {"iso_rel", &iso_rel},       {"tol_inv", &tol_inv},
      {"tol_def", &tol_def},       {"tol_loop", &tol_loop},
      {"quad_tol", &quad_tol},     {"ode_rtol", &ode_rtol},
      {"ode_atol", &ode_atol},     {"eps_crit", &eps_crit},
      {"t_max", &t_max},           {"r_cluster", &r_cluster},
      {"eps_eig", &eps_eig},       {"tol_angle", &tol_angle},
      {"tol_hull", &tol_hull},     {"hull_hausdorff", &hull_hausdorff},
      {"tol_slope", &tol_slope},   {"t_slope_max", &t_slope_max},
      {"tol_ss", &tol_ss},         {"tol_mw", &tol_mw},
      {"r_slab", &r_slab},         {"moser_radius", &moser_radius},
      {"tol_moser", &tol_moser},   {"fit_resid", &fit_resid},
  };
  for (const auto& [key, value] : overrides) {
    auto it = slots.find(key);
    if (it == slots.end())
      throw std::invalid_argument("unknown tolerance key: " + key);
    if (!(value > 0.0))
      throw std::invalid_argument("tolerance override must be positive: " + key);
    *it->second = value;
  }
}

}  // namespace gmm
