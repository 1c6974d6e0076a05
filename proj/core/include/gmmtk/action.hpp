#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "gmmtk/manifold.hpp"

namespace gmm {

// Element of the abelian Lie algebra in the fixed basis; the same
// coordinates serve the dual through the fixed inner product.
using LieAlgebraElement = Vec;

// Torus or one-parameter group action given by ambient generator fields and
// flow maps. act_real(xi, t, x) implements exp(t xi) . x; act_cplx extends it
// to exp((t + i s) xi) . x when the scenario is complexified.
struct GroupActionSpec {
  int rank = 1;
  bool one_parameter_real = false;  // noncompact R-action instead of a torus
  std::vector<AmbientField> generators;
  std::function<Vec(const Vec&, double, const Vec&)> act_real;
  std::function<Vec(const Vec&, std::complex<double>, const Vec&)> act_cplx;
  bool has_complexification() const { return static_cast<bool>(act_cplx); }
};

struct IsotropyData {
  ManifoldPoint base;
  Mat algebra_basis;      // k x dim(k_m), orthonormal columns
  Mat annihilator_basis;  // k x (k - dim(k_m))
  double kernel_gap = 0.0;  // gap between kept and discarded singular values
};

// xi_M at m, projected to the physical tangent space; linear in xi.
TangentVector fundamental_field(const EmbeddedManifold& M,
                                const GroupActionSpec& action, const Vec& xi,
                                const ManifoldPoint& m);

// exp((t + i s) xi) . m. Throws Overflow when the imaginary part would
// leave the floating range, and requires act_cplx to be present.
ManifoldPoint act_complexified(const EmbeddedManifold& M,
                               const GroupActionSpec& action, const Vec& xi,
                               std::complex<double> z, const ManifoldPoint& m);

// Kernel of xi -> xi_M(m) at the given relative threshold.
IsotropyData isotropy_algebra(const EmbeddedManifold& M,
                              const GroupActionSpec& action,
                              const ManifoldPoint& m, double rel_tol);

struct InvarianceReport {
  double max_deviation = 0.0;
  double tolerance = 0.0;
  int n_samples = 0;
  bool pass = false;
};

// Max pullback deviation of a covariant 2-tensor under random group
// elements at random points/tangents. Report-only.
InvarianceReport check_invariance(
    const EmbeddedManifold& M, const GroupActionSpec& action,
    const std::function<double(const Vec&, const Vec&, const Vec&)>& tensor,
    const std::vector<Vec>& sample_points, Rng& rng, double tol,
    double t_range = 1.0);

}  // namespace gmm
