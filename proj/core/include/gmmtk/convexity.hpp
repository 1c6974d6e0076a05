#pragma once

#include "gmmtk/flow.hpp"
#include "gmmtk/scenario.hpp"

namespace gmm {

// Convex polytope in R^k, k <= 3. Degenerate hulls (points, segments,
// planar polygons inside R^3) carry their affine hull explicitly.
struct Polytope {
  int ambient_rank = 0;  // k
  std::vector<Vec> vertices;
  struct Facet {
    Vec normal;    // outward
    double offset; // normal . x <= offset inside
  };
  std::vector<Facet> facets;   // within the affine hull coordinates
  Vec affine_base;             // point of the affine hull
  Mat affine_dirs;             // k x d orthonormal spanning directions

  int dim() const { return static_cast<int>(affine_dirs.cols()); }
  // Signed violation: <= 0 inside (up to numerical slack); accounts for the
  // off-hull distance when the polytope is lower-dimensional.
  double violation(const Vec& x) const;
};

// Hull of a point cloud (k <= 3; gift wrapping in 2-D/3-D).
Polytope convex_hull(const std::vector<Vec>& points, int ambient_rank);

// Max over vertices of the distance to the other polytope, symmetrized.
double hausdorff_distance(const Polytope& A, const Polytope& B);

struct ConeAtPoint {
  Vec apex;
  std::vector<Vec> generators;  // empty = the whole space (free point)
  bool full_space = false;
  // Distance of x - apex from the cone (0 inside).
  double violation(const Vec& x) const;
};

struct IsotropyWeights {
  std::string component_id;
  std::vector<Vec> weights;
  std::vector<int> multiplicities;
};

struct FixedComponentsReport {
  std::vector<FixedComponent> components;
  double max_field_norm = 0.0;  // |xi_M| over representatives
  bool flow_cross_check = false;
};

// Analytic enumeration plus a flow-based cross check (limits of the
// norm-square flow land on the listed psi values).
FixedComponentsReport fixed_components(const Scenario& sc, Rng& rng,
                                       const FlowOptions& opts,
                                       int cross_check_seeds = 32);

struct MomentPolytopeReport {
  Polytope polytope;           // hull of fixed-component moment values
  double max_violation = 0.0;  // containment margin of sampled images
  double hausdorff = 0.0;      // sampled-image hull vs fixed hull
  int n_samples = 0;
  bool pass = false;
};

MomentPolytopeReport moment_polytope(const Scenario& sc, int n_samples,
                                     Rng& rng, double tol_hull,
                                     double tol_hausdorff);

struct OrbitPolytopeReport {
  Polytope polytope;         // hull of limit moment values
  std::vector<Vec> limits;   // distinct limit values
  double max_violation = 0.0;
  bool pass = false;
};

// Limits of exp(-i t xi) . m over a fan of directions; audits random
// complexified translates against the hull.
OrbitPolytopeReport orbit_closure_polytope(const Scenario& sc, const Vec& m0,
                                           int n_audit, Rng& rng,
                                           double tol_hull);

struct LocalConeReport {
  ConeAtPoint cone;
  double max_violation = 0.0;  // psi(U) against the cone
  double coverage_gap = 0.0;   // cone grid points missed by psi(U)
  int n_samples = 0;
  bool pass = false;
};

// Cone from the stored isotropy weights at a fixed/critical built-in point,
// audited by sampling psi over a small neighborhood.
LocalConeReport local_cone(const Scenario& sc, const FixedComponent& fc,
                           double radius, int n_samples, Rng& rng, double tol);

// Model moment map alpha + p + sum_j |v_j|^2 / 2 * w_j. p lives in the
// declared subspace directions (columns of p_dirs), v is interleaved
// complex. Throws DimensionMismatch.
Vec mgs_model_moment(const Vec& alpha, const Vec& p, const Mat& p_dirs,
                     const Vec& v, const std::vector<Vec>& weights);

}  // namespace gmm
