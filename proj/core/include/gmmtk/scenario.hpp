#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gmmtk/action.hpp"
#include "gmmtk/calabi_eckmann.hpp"
#include "gmmtk/manifold.hpp"
#include "gmmtk/report.hpp"

namespace gmm {

// Connected fixed-point component of the torus action, with its analytic
// moment value and the isotropy weights of the normal representation. The
// weight convention is pinned by the model moment map: near a fixed point,
// psi(v) = psi(rep) + sum_j |v_j|^2 / 2 * w_j in normal-form coordinates.
struct FixedComponent {
  std::string id;
  Vec representative;
  Vec psi_value;
  std::vector<Vec> weights;
};

// Principal K-bundle data for minimal coupling: total space, free action,
// connection one-form and a base two-form evaluated through the projection.
struct PrincipalBundleSpec {
  EmbeddedManifold total;
  GroupActionSpec action;
  std::function<Vec(const Vec&, const Vec&)> theta;  // (x, v) -> R^k
  TwoFormFn sigma;  // pullback of the base form, evaluated on P-tangents
  std::vector<TwoFormFn> dtheta;  // analytic d(theta^i); empty -> use FD
};

// A registered experiment: manifold + action + Hermitian data + analytic
// ground truth used by the oracles.
struct Scenario {
  std::string name;
  EmbeddedManifold manifold;
  GroupActionSpec action;
  std::optional<HermitianTriple> triple;
  std::function<Vec(const Vec&)> psi;  // closed form; null when undefined
  Vec base_point;                      // reconstruction base
  Vec base_value;
  bool is_complex = false;
  bool compact = false;
  std::vector<FixedComponent> fixed_components;
  std::vector<Vec> critical_values;  // lambda values of the norm-square flow
  std::function<Vec(Rng&)> sample;   // random point on M
  // Additional samplers covering the lower strata (unstable loci).
  std::vector<std::function<Vec(Rng&)>> stratum_samplers;
  // Analytic basin label: index into critical_values, -1 if not classified.
  std::function<int(const Vec&)> basin_oracle;
  double open_stratum_fraction = 0.0;  // expected lower bound
  std::optional<PrincipalBundleSpec> bundle;
  std::optional<CalabiEckmannParams> ce;
  // Two-dimensional reduced-space chart: (u, v, level) -> point on
  // Psi^{-1}(level). Present on scenarios with CP^1 reductions.
  std::function<Vec(double, double, const Vec&)> reduced_section;
  // Connection one-form on level sets (k-valued), for curvature integrals.
  std::function<Vec(const Vec&, const Vec&)> level_connection;
  std::string notes;  // orientation conventions and normalizations

  bool has_psi() const { return static_cast<bool>(psi); }
  bool has_triple() const { return triple.has_value(); }
  int rank() const { return action.rank; }
};

// Catalog of named scenario factories. Registration is idempotent per
// process; registering a fresh factory under an existing name throws
// DuplicateName.
class ScenarioCatalog {
 public:
  using Factory = std::function<Scenario(const Json&, const Tolerances&)>;

  static ScenarioCatalog& instance();

  void add(const std::string& name, Factory f);
  bool contains(const std::string& name) const;
  Scenario make(const std::string& name, const Json& params,
                const Tolerances& tol) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, Factory> factories_;
};

// Registers every built-in scenario; safe to call repeatedly.
ScenarioCatalog& register_scenarios();

// Convenience: registry lookup with default parameters.
Scenario make_scenario(const std::string& name, const Json& params = Json::object(),
                       const Tolerances& tol = {});

// Antisymmetry of omega, J^2 = -I, symmetry and positive-definiteness of
// g = omega(-, J-), and J-invariance of omega, over random points and
// physical tangents.
CheckReport check_triple_invariants(const Scenario& sc, int n_samples,
                                    Rng& rng, double tol);

}  // namespace gmm
