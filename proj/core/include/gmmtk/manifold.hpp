#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gmmtk/config.hpp"
#include "gmmtk/error.hpp"
#include "gmmtk/linalg.hpp"
#include "gmmtk/rng.hpp"

namespace gmm {

struct AmbientSpace {
  int dim;  // real dimension N >= 2, fixed for the manifold's lifetime
};

struct ManifoldPoint {
  Vec coords;
  double residual = 0.0;
};

struct TangentVector {
  Vec base;  // coordinates of the base point
  Vec vec;   // ambient representative, tangent within eps_tan
};

using ConstraintFn = std::function<Vec(const Vec&)>;
using ConstraintJacFn = std::function<Mat(const Vec&)>;  // m x N
using AmbientField = std::function<Vec(const Vec&)>;

// Constraint level set {x in R^N : c(x) = 0} with full-rank Jacobian.
// An optional list of gauge fields marks tangent directions that belong to
// an internal symmetry being quotiented out (projective scenarios carried
// on odd spheres); physical tangent spaces are the g-orthogonal complement
// of the gauge span inside ker dc.
class EmbeddedManifold {
 public:
  EmbeddedManifold() = default;
  EmbeddedManifold(std::string name, int ambient_dim, int codim,
                   ConstraintFn constraints, ConstraintJacFn jacobian,
                   Tolerances tol = {})
      : name_(std::move(name)),
        ambient_(AmbientSpace{ambient_dim}),
        codim_(codim),
        constraints_(std::move(constraints)),
        jacobian_(std::move(jacobian)),
        tol_(tol) {}

  // Flat ambient space, no constraints.
  static EmbeddedManifold flat(int ambient_dim, Tolerances tol = {});

  const std::string& name() const { return name_; }
  const AmbientSpace& ambient() const { return ambient_; }
  int ambient_dim() const { return ambient_.dim; }
  int codim() const { return codim_; }
  int dim() const { return ambient_.dim - codim_; }
  int phys_dim() const { return dim() - static_cast<int>(gauge_fields_.size()); }
  const Tolerances& tol() const { return tol_; }
  bool has_constraints() const { return codim_ > 0; }
  const std::vector<AmbientField>& gauge_fields() const { return gauge_fields_; }
  void set_gauge_fields(std::vector<AmbientField> fields) {
    gauge_fields_ = std::move(fields);
  }

  Vec constraints(const Vec& x) const {
    return codim_ > 0 ? constraints_(x) : Vec::Zero(0);
  }
  Mat constraint_jacobian(const Vec& x) const {
    return codim_ > 0 ? jacobian_(x) : Mat::Zero(0, ambient_.dim);
  }
  double residual(const Vec& x) const { return constraints(x).norm(); }

  ManifoldPoint make_point(const Vec& x) const;   // validates membership
  bool contains(const Vec& x) const { return residual(x) <= tol_.eps_mem; }

 private:
  std::string name_;
  AmbientSpace ambient_{0};
  int codim_ = 0;
  ConstraintFn constraints_;
  ConstraintJacFn jacobian_;
  std::vector<AmbientField> gauge_fields_;
  Tolerances tol_;
};

// Gauss-Newton projection onto c = 0. Throws NonConvergence / RankDeficient.
ManifoldPoint project_to_manifold(const Vec& x, const EmbeddedManifold& M,
                                  int max_iter = 50);

// Orthogonal projector onto ker dc (the full tangent space of the level set).
Mat tangent_projector(const EmbeddedManifold& M, const Vec& x);

// Projector onto the physical tangent space: ker dc minus the gauge span.
Mat physical_projector(const EmbeddedManifold& M, const Vec& x);

// Orthonormal basis of the physical tangent space (columns).
Mat tangent_basis(const EmbeddedManifold& M, const Vec& x);

TangentVector make_tangent(const EmbeddedManifold& M, const ManifoldPoint& m,
                           const Vec& ambient_dir);

// Random unit vector in the physical tangent space.
Vec random_tangent(const EmbeddedManifold& M, const Vec& x, Rng& rng);

// k-form evaluators take the base point first, then the argument vectors.
using ZeroFormFn = std::function<double(const Vec&)>;
using OneFormFn = std::function<double(const Vec&, const Vec&)>;
using TwoFormFn = std::function<double(const Vec&, const Vec&, const Vec&)>;
using ThreeFormFn =
    std::function<double(const Vec&, const Vec&, const Vec&, const Vec&)>;

struct TwoForm {
  TwoFormFn eval;
  double operator()(const Vec& x, const Vec& u, const Vec& v) const {
    return eval(x, u, v);
  }
};

using MetricFn = std::function<double(const Vec&, const Vec&, const Vec&)>;
using EndoField = std::function<Vec(const Vec&, const Vec&)>;  // (x, v) -> Jv

// Pointwise compatible (J, g, omega): J^2 = -I on physical tangents,
// g(u,v) = omega(u, Jv) symmetric positive definite, omega(Ju, Jv) = omega(u,v).
struct HermitianTriple {
  EndoField J;
  MetricFn g;
  TwoForm omega;
};

// Exterior derivative by central differences of the global formula.
// Argument vectors are extended to fields constant in ambient coordinates
// and projected pointwise; bracket corrections are finite-differenced.
double exterior_derivative_fd(const EmbeddedManifold& M, const OneFormFn& alpha,
                              const Vec& x, const Vec& u, const Vec& v);
double exterior_derivative_fd(const EmbeddedManifold& M, const TwoFormFn& omega,
                              const Vec& x, const Vec& u, const Vec& v,
                              const Vec& w);
// d of a 0-form: directional derivative along the projected direction.
double exterior_derivative_fd(const EmbeddedManifold& M, const ZeroFormFn& f,
                              const Vec& x, const Vec& u);

// Compatible triple from a nondegenerate two-form by per-point polar
// decomposition against a reference metric (defaults to the restricted
// ambient Euclidean metric when g_ref is null).
HermitianTriple compatible_triple_from_form(const EmbeddedManifold& M,
                                            TwoForm omega,
                                            MetricFn g_ref = nullptr);

}  // namespace gmm
