#pragma once

#include <optional>

#include "gmmtk/action.hpp"
#include "gmmtk/manifold.hpp"
#include "gmmtk/report.hpp"
#include "gmmtk/scenario.hpp"

namespace gmm {

// Moment map Psi: M -> k* (coordinates in the fixed basis). Closed-form or
// reconstructed by path integration of the defining identity.
struct MomentMapEvaluator {
  enum class Provenance { ClosedForm, PathIntegral };
  Provenance provenance = Provenance::ClosedForm;
  std::function<Vec(const Vec&)> psi;
  Vec base_point;  // only meaningful for PathIntegral
  Vec base_value;

  Vec operator()(const Vec& x) const { return psi(x); }
};

// max_j max_samples |d(i_{xi_j M} omega)(u, v)|, finite-differenced.
CheckReport check_momentumly_closed(const Scenario& sc, int n_samples,
                                    Rng& rng, double tol);

// The equivariant-closedness route: same d(i_xi omega) data plus the
// vanishing of the double contraction i_{xi_M} i_{xi_M} omega.
CheckReport check_equivariant_closedness_nu(const Scenario& sc, int n_samples,
                                            Rng& rng, double tol);

// Reconstructs Psi by integrating i_{xi_M} omega along projected segments
// from the base point; audits loop holonomy on n_loops random triangles.
MomentMapEvaluator moment_from_form(const Scenario& sc, const Vec& base_point,
                                    const Vec& base_value, int n_loops,
                                    Rng& rng);

// max over samples/generators of | grad_g Psi^xi - J xi_M |.
CheckReport check_gradient_identity(const Scenario& sc,
                                    const MomentMapEvaluator& psi,
                                    int n_samples, Rng& rng, double tol);

struct DifferentialImageReport {
  int rank = 0;
  int expected_rank = 0;
  double max_principal_angle = 0.0;  // image of dPsi vs annihilator of k_m
  double singular_gap = 0.0;
  bool pass = false;
};

// Numerical image of (dPsi)_m compared against the isotropy annihilator.
DifferentialImageReport moment_differential_image(const Scenario& sc,
                                                  const MomentMapEvaluator& psi,
                                                  const ManifoldPoint& m,
                                                  double tol_angle);

// Best-fit affine subspace p + h-annihilator through Psi of points sharing
// isotropy type; reports the max residual.
CheckReport check_affine_image_on_stratum(const Scenario& sc,
                                          const MomentMapEvaluator& psi,
                                          const std::vector<Vec>& points,
                                          double tol);

// |d omega| along orbit directions, including the J-rotated variants on
// complex scenarios.
CheckReport check_domega_on_orbits(const Scenario& sc, int n_samples, Rng& rng,
                                   double tol);

// Jacobian of Psi at m restricted to the physical tangent space, by
// central differences (k x d in the tangent basis, with the basis returned).
std::pair<Mat, Mat> moment_jacobian(const Scenario& sc,
                                    const std::function<Vec(const Vec&)>& psi,
                                    const Vec& x);

}  // namespace gmm
