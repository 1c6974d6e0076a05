#pragma once

#include <optional>

#include "gmmtk/moment.hpp"
#include "gmmtk/scenario.hpp"

namespace gmm {

struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double eps_crit = 1e-8;
  int window = 20;
  double t_max = 1e4;
  int max_samples = 0;  // 0 = keep all accepted steps
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> points;
  std::vector<double> f_values;
  std::vector<double> grad_norms;
  double terminal_grad_norm = 0.0;
  bool converged = false;

  const Vec& limit() const { return points.back(); }
};

struct StratumLabel {
  Vec lambda;
  double norm = 0.0;
  ManifoldPoint limit_point;
};

struct CriticalReport {
  ManifoldPoint point;
  int hessian_index = 0;
  std::vector<double> eigenvalues;
};

// Which functional the negative-gradient flow descends.
struct FlowFunctional {
  enum class Kind { NormSquare, PsiXi } kind = Kind::NormSquare;
  Vec xi;  // only for PsiXi

  static FlowFunctional norm_square() { return {Kind::NormSquare, Vec()}; }
  static FlowFunctional psi_xi(const Vec& xi) {
    return {Kind::PsiXi, xi};
  }
};

// Adaptive Runge-Kutta with per-step projection; descends f = |Psi|^2/2 via
// the closed-form field -J (Psi(m))_M (or -J xi_M for Psi^xi). Returns with
// converged = false when t_max is hit.
Trajectory integrate_negative_gradient(const Scenario& sc,
                                       const FlowFunctional& fn, const Vec& x0,
                                       const FlowOptions& opts);

// Psi at the flow limit. Throws Unconverged when the flow did not settle.
StratumLabel stratum_label(const Scenario& sc, const Vec& x0,
                           const FlowOptions& opts);

struct CriticalValueSet {
  std::vector<Vec> values;          // cluster centers
  std::vector<int> counts;          // flows per cluster
  double min_center_gap = 0.0;
  int unconverged = 0;
};

// Flows a stratified seed grid and clusters the resulting labels.
CriticalValueSet enumerate_critical_values(const Scenario& sc,
                                           int seeds_per_stratum, Rng& rng,
                                           const FlowOptions& opts);

// Finite-difference Hessian on the physical tangent space at an
// approximately critical point; index = eigenvalues below -eps_eig.
CriticalReport hessian_index(const Scenario& sc, const FlowFunctional& fn,
                             const ManifoldPoint& m);

struct OpenStratumReport {
  double open_fraction = 0.0;      // of generic samples labeled lambda_0
  int distinct_open = 0;           // labels observed among generic samples
  int witnesses_found = 0;         // orbit-closure searches reaching psi ~ 0
  int witnesses_total = 0;
  bool unstable_witness_fails = true;
  bool pass = false;
};

// (a) measure of the minimal-label basin; (b) complexified-orbit search
// reaching |Psi| <= tol for label-0 samples, and failing for unstable reps.
OpenStratumReport verify_open_stratum_properties(const Scenario& sc,
                                                 int n_samples, Rng& rng,
                                                 const FlowOptions& opts,
                                                 double witness_tol = 1e-6);

// Nearest critical-value index within 3 r_cluster; -1 when unmatched.
int label_index(const Scenario& sc, const Vec& lambda, double r_cluster);

}  // namespace gmm
